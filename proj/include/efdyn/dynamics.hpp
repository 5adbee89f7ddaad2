#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "efdyn/invariants.hpp"
#include "efdyn/model.hpp"

namespace efdyn {

enum class Method { Euler, RK4, RKF45 };

enum class Coords { System, Physical };

enum class StopReason {
  Completed,
  Blowup,       // |state| exceeded 1e12
  Singularity,  // q reached the 1e-10 guard with n < 0
  NonFinite,    // a non-finite value appeared
  DomainEdge,   // right-hand side left its real domain
};

const char* to_string(Method m);
const char* to_string(StopReason r);

struct StepInfo {
  double step_or_tol = 0.0;
  long accepted = 0;
  long rejected = 0;
};

/// One sample: (t, u, v) in System coordinates, (Y, q, qY) in Physical ones.
struct TrajectorySample {
  double t = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
};

struct Trajectory {
  Coords coords = Coords::System;
  Method method = Method::RKF45;
  StepInfo step_info;
  StopReason stop = StopReason::Completed;
  std::string stop_detail;
  std::vector<TrajectorySample> samples;  // time strictly increasing
};

/// Adaptive step size underflowed before reaching the requested endpoint.
/// Carries the trajectory integrated so far.
struct IntegrationError : std::runtime_error {
  IntegrationError(const std::string& what, Trajectory partial_)
      : std::runtime_error(what), partial(std::move(partial_)) {}
  Trajectory partial;
};

/// Integrates the autonomous system from (u0, v0) over [0, t_max].
/// step_or_tol is the fixed step for Euler/RK4 and the error tolerance
/// (within [1e-14, 1e-2]) for RKF45. Blow-up truncates the trajectory with
/// the reason recorded; adaptive step underflow throws IntegrationError.
Trajectory integrate_system(const EfParams& p, double u0, double v0,
                            double t_max, Method method, double step_or_tol);

/// Integrates the physical equation q_YY = alpha Y^(-lambda-2) q^n as the
/// first-order pair (q, qY) from Y0 to Y_max. For n < 0 a |q| < 1e-10 guard
/// stops at the singularity instead of stepping over it.
Trajectory integrate_physical(const EfParams& p, double Y0, double q0,
                              double qY0, double Y_max, Method method,
                              double step_or_tol);

/// Kamke substitution to self-adjoint variables: xi = 1/Y, eta = q,
/// eta' = d eta/d xi = -Y^2 qY.
struct KamkeState {
  double xi = 0.0;
  double eta = 0.0;
  double eta_prime = 0.0;
};
KamkeState kamke_map(double Y, double q, double qY);
PhysicalState kamke_inverse(const KamkeState& k);

/// The inversion q = w/s, Y = 1/s sending one Emden-Fowler equation onto its
/// partner w_ss = alpha s^(lambda-1-n) w^n. Returns (s, w) = (1/Y, q/Y).
std::pair<double, double> invariant_transform(double Y, double q);

/// Phase-plane coordinates from self-adjoint variables:
///   u = xi eta'/eta,  v = xi^(lambda-1) eta^n / eta',  t = ln xi.
SystemState js_coordinates(const EfParams& p, double xi, double eta,
                           double eta_prime);

/// kamke_map followed by js_coordinates (Y > 0 required).
SystemState physical_to_system(const EfParams& p, const PhysicalState& s);

struct PeriodReport {
  bool periodic = false;
  double period = 0.0;
  double closure_error = std::numeric_limits<double>::infinity();
  int crossings = 0;  // all refined section crossings, both directions
  std::string reason;  // "closed", "escape", "inconclusive", "step_underflow"
};

/// Poincare return test on the section {v = v0}. Integrates with RKF45
/// (tolerance 1e-10), locates each crossing by bisection to 1e-12 in time
/// and declares the orbit periodic when a same-direction crossing (on the
/// initial point's side of P3) lands within Euclidean distance tol of
/// (u0, v0); the period is the time of that return.
PeriodReport detect_period(const EfParams& p, double u0, double v0, double tol,
                           double t_max);

}  // namespace efdyn
