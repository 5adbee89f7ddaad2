#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "efdyn/numerics.hpp"

namespace efdyn {

enum class ParametricFamily { FirstCondition, SecondCondition, LambdaZero };

/// Free sign choice in the second-condition radicand 1 +- tau^lambda and in
/// the lambda = 0 exponential exp(+-tau^2).
enum class Sign { Plus, Minus };

struct CurveConstants {
  double C1 = 1.0;
  double C2 = 0.0;
  double a = 1.0;
  double b = 1.0;
  double lambda = 0.0;
};

struct TauRange {
  double lo = 0.0;
  double hi = 1.0;
  int count = 2;
};

/// Sampled (tau, Y(tau), q(tau)) triples from one parametric system.
/// segments are [begin, end) index ranges into the sample arrays; the second
/// family splits at poles of Theta (Y, q sign flips across them), so Y is
/// strictly monotone on each segment. alpha is the Emden-Fowler coefficient
/// the curve solves, derived from the constants.
struct ParametricCurve {
  ParametricFamily family = ParametricFamily::FirstCondition;
  CurveConstants constants;
  double alpha = 0.0;
  std::vector<double> tau, Y, q;
  std::vector<std::pair<std::size_t, std::size_t>> segments;
};

/// Theta(tau) = integral from tau0 to tau of ds / sqrt(C2 + psi(s) + s^2/4),
/// psi(s) = s^(2(lambda+1))/(lambda+1) for lambda != -1, psi = 2 ln|s| for
/// lambda = -1. Adaptive quadrature to 1e-10 absolute. A non-positive
/// radicand anywhere on the path is a domain error naming the first
/// offending point.
double theta_first(double tau, double tau0, double C2, double lambda);

/// First-condition curve (n = 2*lambda + 1):
///   Y = a C1^2 exp(Theta),  q = b C1 tau exp(Theta/2),
/// with the identity q^2 = tau^2 Y / alpha^(1/lambda) holding exactly.
/// alpha = a^lambda / b^(2 lambda) (signed power; equals (a/b^2)^lambda for
/// b > 0, and carries the sign of b when 2*lambda is an odd integer).
ParametricCurve curve_first(double lambda, double C1, double C2, double a,
                            double b, const TauRange& range, double tau0);
ParametricCurve curve_first(double lambda, double C1, double C2, double a,
                            double b, const TauRange& range);

/// Second-condition curve (n = lambda - 1), lambda != 0:
///   Y = a C1^(lambda-2)/Theta,  q = b C1^lambda tau/Theta,
///   Theta = C2 + integral of ds / sqrt(1 +- s^lambda).
/// alpha = s * a^lambda b^(2-lambda) lambda/2 where s is the radicand sign
/// (the minus branch flips the coefficient's sign). Theta zero-crossings
/// split the curve into segments.
ParametricCurve curve_second(double lambda, double C1, double C2, double a,
                             double b, Sign sign, const TauRange& range,
                             double tau0);
ParametricCurve curve_second(double lambda, double C1, double C2, double a,
                             double b, Sign sign, const TauRange& range);

/// lambda = 0 curve (n = -1):
///   Y = C1/Theta,  q = b exp(+-tau^2)/Theta,  Theta = C2 + integral of
///   exp(+-s^2) ds,  alpha = +-2b^2 (same sign as the exponential argument).
/// With Sign::Minus this generates pseudo-oscillator solutions through the
/// inversion q = w/s, Y = 1/s.
ParametricCurve curve_lambda0(double C1, double C2, double b, Sign sign,
                              const TauRange& range, double tau0);
ParametricCurve curve_lambda0(double C1, double C2, double b, Sign sign,
                              const TauRange& range);

/// Right-hand side of the elliptic equation (d tau / d Theta)^2 =
/// 2 tau^3/3 + tau^2/4 + C2 governing the lambda = 1/2 oscillation.
double elliptic_rhs(double tau, double C2);

/// One period of the bounded tau(Theta) oscillation, when the cubic admits
/// one: theta[0] = 0 at the lower turning point tau_min, theta.back() =
/// period back at tau_min after the mirror half.
struct EllipticOrbit {
  double period = 0.0;
  std::vector<double> theta, tau;
  double tau_min = 0.0;  // lower turning point (simple root)
  double tau_max = 0.0;  // upper turning point (simple root)
};

/// Solves the cubic in closed form; when two adjacent simple roots bound a
/// positivity interval, integrates d Theta = d tau / sqrt(rhs) across it with
/// the square-root substitution at both turning points and returns the
/// sampled orbit. Returns nullopt when no bounded interval exists (single
/// real root, or a repeated root: the homoclinic/solitonic case).
std::optional<EllipticOrbit> elliptic_orbit(double C2, int samples);

}  // namespace efdyn
