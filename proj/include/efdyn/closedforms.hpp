#pragma once

#include <functional>
#include <map>
#include <string>

#include "efdyn/model.hpp"

namespace efdyn {

/// Quadrature branch of the pseudo-oscillator solution. Plus covers Y < Y0
/// (q increasing toward the peak, the default); Minus covers Y > Y0.
enum class Branch { Plus, Minus };

/// Amplitude A = sqrt(pi/2) * exp(H/2) of the pseudo-oscillator solution.
double pseudo_amplitude(double H);

/// General pseudo-oscillator solution
///   q(Y) = exp(H/2) * exp(-erf_inv((Y - Y0)/A)^2),  A = sqrt(pi/2) e^(H/2),
/// valid for |Y - Y0| < A. The inverse-erf argument enters squared, so both
/// quadrature branches evaluate identically; the parameter is kept for
/// interface symmetry with pseudo_quadrature.
double pseudo_solution(double H, double Y0, Branch branch, double Y);

/// Quadrature form: Y - Y0 = -+ A erf(sqrt(H/2 - ln q)) for 0 < q <= e^(H/2).
/// Branch::Plus returns the negative sign (Y below Y0), Branch::Minus the
/// positive one; the two are inverses of pseudo_solution on their half-domains.
double pseudo_quadrature(double H, double q, Branch branch);

/// General zero-frequency Ermakov solution q = sqrt(1 - 2C Y + (C^2-1) Y^2),
/// solving q^3 q_YY + 1 = 0. C = 0 reduces to the Pinney solution.
double ermakov_general(double C, double Y);

/// Pinney solution q = sqrt(1 - Y^2) on (-1, 1).
double pinney(double Y);

/// Partner of the Pinney solution under the inversion q = w/s, Y = 1/s:
/// w(s) = sqrt(s^2 - 1), solving w^3 w_ss + 1 = 0. Requires |s| > 1.
double ermakov_partner(double s);

/// Zero-invariant solution q = (3/8) sqrt(Y) sech^2(ln(Y)/4) of
/// q_YY + Y^(-5/2) q^2 = 0, Y > 0. Not periodic.
double sech_soliton(double Y);

/// Particular solution w(s) = (3/2) * (3/2 * (1+s)^4)^(1/3) of the plane-diode
/// equation, s > -1. Note: it satisfies sqrt(w) w_ss = +1, i.e. the
/// sign-positive form sqrt(w) w_ss - 1 = 0 (alpha = +1), not the alpha = -1
/// variant; see the residual test.
double diode_partner(double s);

/// Particular solution y = (1 + x^(k(p+2))/(k^2(p+3)))^(-1/(p+2)) of the
/// generalized equation y'' + ((k+1)/x) y' + x^(2k+kp-2) y^(2p+5) = 0.
/// p in {-2, -3} and k = 0 are excluded.
double aslanov_general(double k, double p, double x);

/// The (k=-1, p=-3/2) specialization y = 9x/(2 + 3 sqrt(x))^2, x >= 0,
/// solving y'' + x^(-5/2) y^2 = 0.
double aslanov_particular(double x);

/// Residual |f''(Y) - alpha Y^(-lambda-2) f(Y)^n| with f'' from the 5-point
/// central stencil of step h. Certifies that a sampled function solves its
/// Emden-Fowler equation.
double ef_residual(const EfParams& p, const std::function<double(double)>& f,
                   double Y, double h);

/// Same with the default step h = 1e-4 * max(1, |Y|).
double ef_residual(const EfParams& p, const std::function<double(double)>& f,
                   double Y);

/// Residual of the generalized equation behind aslanov_general:
/// |f'' + ((k+1)/x) f' + x^(2k+kp-2) f^(2p+5)|, derivatives from 5-point
/// stencils of step h.
double aslanov_residual(double k, double p,
                        const std::function<double(double)>& f, double x,
                        double h);

enum class ClosedFormFamily {
  PseudoErf,
  ErmakovGeneral,
  Pinney,
  ErmakovPartner,
  SechSoliton,
  DiodePartner,
  AslanovGeneral,
  AslanovParticular,
};

const char* to_string(ClosedFormFamily f);

/// Open (or half-open, for AslanovParticular) interval of validity.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// A named analytic solution family with its parameters and the validity
/// interval implied by them. params keys by family:
///   PseudoErf: H, Y0 (branch is irrelevant to values); ErmakovGeneral: C;
///   AslanovGeneral: k, p; the rest take no parameters.
struct ClosedForm {
  ClosedFormFamily family = ClosedFormFamily::Pinney;
  std::map<std::string, double> params;
  Interval domain;
};

/// Builds a ClosedForm, filling defaults for missing parameters and computing
/// the principal validity interval (for ErmakovGeneral, the positivity
/// component containing Y = 0; for ErmakovPartner, the s > 1 branch).
ClosedForm make_closed_form(ClosedFormFamily family,
                            const std::map<std::string, double>& params = {});

double evaluate(const ClosedForm& cf, double x);

}  // namespace efdyn
