#pragma once

#include <vector>

#include "efdyn/model.hpp"

namespace efdyn {

/// A point on a physical solution: independent variable Y, value q and
/// derivative qY = dq/dY. Operations that divide by q or take ln(q^2)
/// require q != 0 and throw std::domain_error otherwise.
struct PhysicalState {
  double Y = 0.0;
  double q = 0.0;
  double qY = 0.0;
};

/// Pseudo-oscillator Hamiltonian H = qY^2 + ln(q^2), conserved along
/// solutions of q*q_YY + 1 = 0.
double pseudo_hamiltonian(const PhysicalState& s);

/// First-condition invariant (conserved when n = 2*lambda + 1):
///   C = Y qY^2 - q qY - alpha/(lambda+1) * (q^2/Y)^(lambda+1).
/// lambda = -1 is unsupported (throws); fractional powers of a negative
/// base are domain errors.
double invariant_first(const EfParams& p, const PhysicalState& s);

/// Second-condition invariant (conserved when n = lambda - 1):
///   C = (q - Y qY)^2 - (2 alpha / lambda) * (q/Y)^lambda.
/// lambda = 0 is unsupported (use pseudo_hamiltonian in partner variables).
double invariant_second(const EfParams& p, const PhysicalState& s);

/// Ermakov invariant I = (qY^2 - q^-2)/2 of q^3 q_YY + 1 = 0.
double ermakov_invariant(const PhysicalState& s);

/// The C invariant of the zero-frequency Ermakov equation,
///   C = Y (qY^2 - q^-2) - q qY = 2 I Y - q qY.
/// Coincides with invariant_first at (alpha=-1, lambda=-2).
double ermakov_c_invariant(const PhysicalState& s);

struct DriftReport {
  double max_abs_dev = 0.0;
  double rel_dev = 0.0;  // max_abs_dev / max(1, |first value|)
};

/// Deviation of a sampled conserved quantity from its initial value.
DriftReport invariant_drift(const std::vector<double>& values);

}  // namespace efdyn
