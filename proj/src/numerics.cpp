#include "efdyn/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace efdyn {

namespace {

constexpr double kTwoOverSqrtPi = 1.1283791670955126;  // 2/sqrt(pi)
constexpr double kSqrtPiOverTwo = 0.8862269254527580;  // sqrt(pi)/2

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Maclaurin series, adequate for |x| <= 2 (cancellation stays below ~1e-14).
double erf_series(double x) {
  const double x2 = x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= -x2 / k;
    const double add = term / (2 * k + 1);
    sum += add;
    if (std::abs(add) <= 1e-18 * std::abs(sum)) break;
  }
  return kTwoOverSqrtPi * x * sum;
}

// Continued fraction for erfc, x >= 2 (modified Lentz):
// erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
double erfc_cf(double x) {
  const double tiny = 1e-300;
  double f = x;
  double C = f;
  double D = 0.0;
  for (int k = 1; k < 300; ++k) {
    const double a = 0.5 * k;
    D = x + a * D;
    if (D == 0.0) D = tiny;
    C = x + a / C;
    if (C == 0.0) C = tiny;
    D = 1.0 / D;
    const double delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-17) break;
  }
  return std::exp(-x * x) / (kSqrtPiOverTwo * 2.0) / f;
}

}  // namespace

double real_pow(double base, double expo) {
  if (base > 0.0) return std::pow(base, expo);
  if (base == 0.0) {
    if (expo > 0.0) return 0.0;
    if (expo == 0.0) return 1.0;
    throw std::domain_error("real_pow: zero base with negative exponent");
  }
  const double r = std::nearbyint(expo);
  if (r == expo && std::abs(expo) < 9.007199254740992e15) {
    const double mag = std::pow(-base, expo);
    return std::fmod(r, 2.0) == 0.0 ? mag : -mag;
  }
  throw std::domain_error("real_pow: negative base " + fmt(base) +
                          " with non-integer exponent " + fmt(expo));
}

double erf(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::abs(x);
  double r;
  if (ax <= 2.0)
    r = erf_series(ax);
  else if (ax < 27.0)
    r = 1.0 - erfc_cf(ax);
  else
    r = 1.0;
  return x < 0.0 ? -r : r;
}

double erfc(double x) {
  if (std::isnan(x)) return x;
  if (x >= 2.0) return x < 27.0 ? erfc_cf(x) : 0.0;
  if (x <= -2.0) return 2.0 - erfc(-x);
  return 1.0 - erf_series(x);
}

double erf_inv(double y) {
  if (std::isnan(y)) return y;
  if (!(std::abs(y) < 1.0))
    throw std::domain_error("erf_inv: argument " + fmt(y) +
                            " outside (-1, 1)");
  if (y == 0.0) return 0.0;
  const double ay = std::abs(y);

  // Winitzki's algebraic approximation as the seed (~1e-3 relative).
  const double a = 0.147;
  const double l = std::log1p(-ay * ay);
  const double t = 2.0 / (M_PI * a) + 0.5 * l;
  double x = std::sqrt(std::sqrt(t * t - l / a) - t);

  // Newton on erf(x) - ay; near the endpoint the residual is formed through
  // erfc to avoid cancellation in 1 - erf.
  const double target_c = 1.0 - ay;
  for (int it = 0; it < 80; ++it) {
    const double r = (ay > 0.9) ? target_c - erfc(x) : erf(x) - ay;
    const double dx = r * kSqrtPiOverTwo * std::exp(x * x);
    x -= dx;
    if (x < 0.0) x = 0.0;  // seed overshoot; erf_inv(ay) >= 0 here
    if (std::abs(dx) <= 1e-16 * (1.0 + x)) break;
  }
  return y < 0.0 ? -x : x;
}

namespace {

struct SimpsonCtx {
  const std::function<double(double)>& f;
  long evals = 0;
  double err_acc = 0.0;
  static constexpr int kMaxDepth = 60;

  double eval(double x) {
    ++evals;
    const double v = f(x);
    if (!std::isfinite(v))
      throw QuadratureError("adaptive_quad: integrand not finite at x = " +
                            fmt(x));
    return v;
  }

  static double simpson(double a, double fa, double fm, double b, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  }

  double recurse(double a, double fa, double m, double fm, double b, double fb,
                 double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = simpson(a, fa, flm, m, fm);
    const double right = simpson(m, fm, frm, b, fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || (b - a) < 1e-15 * (1.0 + std::abs(a))) {
      err_acc += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    if (depth >= kMaxDepth)
      throw QuadratureError("adaptive_quad: subdivision limit near x = " +
                            fmt(m));
    return recurse(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

QuadratureResult adaptive_quad(const std::function<double(double)>& f, double a,
                               double b, double tol) {
  if (!(tol > 0.0))
    throw std::invalid_argument("adaptive_quad: tolerance must be positive");
  if (a == b) return {0.0, 0.0, 0};
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  SimpsonCtx ctx{f};
  const double fa = ctx.eval(a);
  const double fb = ctx.eval(b);
  const double m = 0.5 * (a + b);
  const double fm = ctx.eval(m);
  const double whole = SimpsonCtx::simpson(a, fa, fm, b, fb);
  const double v = ctx.recurse(a, fa, m, fm, b, fb, whole, tol, 0);
  return {sign * v, ctx.err_acc, ctx.evals};
}

std::vector<CubicRoot> cubic_roots(double c3, double c2, double c1, double c0) {
  if (c3 == 0.0)
    throw std::invalid_argument("cubic_roots: leading coefficient is zero");
  const double a = c2 / c3;
  const double b = c1 / c3;
  const double c = c0 / c3;
  // depressed cubic s^3 + p s + q, x = s - a/3
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double shift = -a / 3.0;

  const double disc = -4.0 * p * p * p - 27.0 * q * q;
  const double disc_scale =
      std::max({std::abs(4.0 * p * p * p), 27.0 * q * q, 1e-300});

  std::vector<double> roots;
  if (std::abs(disc) <= 1e-12 * disc_scale) {
    // repeated roots
    if (std::abs(p) <= 1e-10 * std::max(1.0, a * a)) {
      roots = {shift, shift, shift};
    } else {
      const double s_double = -3.0 * q / (2.0 * p);
      const double s_simple = 3.0 * q / p;
      roots = {s_double + shift, s_double + shift, s_simple + shift};
    }
  } else if (disc > 0.0) {
    // three distinct real roots (trigonometric form)
    const double m = 2.0 * std::sqrt(-p / 3.0);
    double cos3t = -4.0 * q / (m * m * m);
    cos3t = std::clamp(cos3t, -1.0, 1.0);
    const double theta = std::acos(cos3t) / 3.0;
    for (int k = 0; k < 3; ++k)
      roots.push_back(m * std::cos(theta - 2.0 * M_PI * k / 3.0) + shift);
  } else {
    // one real root (Cardano; companion term via u*v = -p/3 to avoid
    // cancellation)
    const double rad = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    const double u = std::cbrt(q > 0.0 ? -q / 2.0 - rad : -q / 2.0 + rad);
    const double v = (u != 0.0) ? -p / (3.0 * u) : 0.0;
    roots = {u + v + shift};
  }

  auto fval = [&](double t) { return ((c3 * t + c2) * t + c1) * t + c0; };
  auto fder = [&](double t) { return (3.0 * c3 * t + 2.0 * c2) * t + c1; };
  for (double& r : roots) {
    const double d = fder(r);
    if (std::abs(d) > 1e-8 * std::max(1.0, std::abs(3.0 * c3 * r * r)))
      r -= fval(r) / d;
  }
  std::sort(roots.begin(), roots.end());

  std::vector<CubicRoot> out;
  for (double r : roots) {
    if (!out.empty() && std::abs(r - out.back().value) < 1e-10)
      ++out.back().multiplicity;
    else
      out.push_back({r, 1});
  }
  return out;
}

double second_derivative(const std::function<double(double)>& f, double x,
                         double h) {
  if (!(h > 0.0))
    throw std::invalid_argument("second_derivative: h must be positive");
  return (-f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) -
          f(x + 2.0 * h)) /
         (12.0 * h * h);
}

double first_derivative(const std::function<double(double)>& f, double x,
                        double h) {
  if (!(h > 0.0))
    throw std::invalid_argument("first_derivative: h must be positive");
  return (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) /
         (12.0 * h);
}

}  // namespace efdyn
