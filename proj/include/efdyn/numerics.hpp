#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace efdyn {

/// Default absolute tolerance for parameter equality tests (Rosenau
/// conditions, trace-zero detection). Caller-overridable everywhere.
inline constexpr double kDefaultTol = 1e-9;

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadratureResult {
  double value = 0.0;
  double est_error = 0.0;
  long evaluations = 0;
};

/// base^expo over the reals. Negative bases are accepted only for integer
/// exponents; anything else throws std::domain_error instead of returning NaN.
double real_pow(double base, double expo);

/// Error function, absolute accuracy ~1e-13 on all finite inputs.
/// Maclaurin series for |x| <= 2, continued fraction for the tail.
double erf(double x);

/// Complementary error function (relatively accurate in the tail).
double erfc(double x);

/// Inverse error function on (-1, 1): Newton iteration on erf from an
/// algebraic initial estimate. erf(erf_inv(y)) = y to ~1e-12.
double erf_inv(double y);

/// Adaptive Simpson quadrature with Richardson error estimate.
/// Deterministic node placement; est_error accumulates the accepted
/// per-interval estimates. Throws QuadratureError on non-finite integrand
/// values (with the offending abscissa) or when the subdivision limit is hit.
QuadratureResult adaptive_quad(const std::function<double(double)>& f, double a,
                               double b, double tol);

struct CubicRoot {
  double value = 0.0;
  int multiplicity = 1;
};

/// All real roots of c3 x^3 + c2 x^2 + c1 x + c0, ascending, each polished by
/// one Newton step. Roots closer than 1e-10 are merged into one entry with
/// raised multiplicity. Requires c3 != 0.
std::vector<CubicRoot> cubic_roots(double c3, double c2, double c1, double c0);

/// 5-point central estimate of f''(x), O(h^4) truncation.
double second_derivative(const std::function<double(double)>& f, double x,
                         double h);

/// 5-point central estimate of f'(x), O(h^4) truncation.
double first_derivative(const std::function<double(double)>& f, double x,
                        double h);

}  // namespace efdyn
