#include "efdyn/parametric.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace efdyn {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double psi_first(double tau, double lambda) {
  if (lambda == -1.0) {
    if (tau == 0.0)
      throw std::domain_error("theta_first: psi singular at tau = 0 (lambda = -1)");
    return 2.0 * std::log(std::abs(tau));
  }
  return real_pow(tau, 2.0 * (lambda + 1.0)) / (lambda + 1.0);
}

double first_radicand(double tau, double C2, double lambda) {
  return C2 + psi_first(tau, lambda) + 0.25 * tau * tau;
}

// Integrand of Theta for the first family; throws on non-positive radicand,
// naming the offending point.
std::function<double(double)> first_integrand(double C2, double lambda) {
  return [=](double t) {
    const double r = first_radicand(t, C2, lambda);
    if (!(r > 0.0))
      throw std::domain_error("theta_first: radicand non-positive at tau = " +
                              fmt(t));
    return 1.0 / std::sqrt(r);
  };
}

// Coarse scan so radicand dips between quadrature nodes are caught up front.
void scan_domain(const std::function<double(double)>& integrand, double lo,
                 double hi) {
  const int kScan = 256;
  for (int i = 0; i <= kScan; ++i)
    (void)integrand(lo + (hi - lo) * i / kScan);
}

void validate_range(const TauRange& range) {
  if (range.count < 2)
    throw std::invalid_argument("parametric: tau range needs at least 2 samples");
  if (!(range.hi > range.lo))
    throw std::invalid_argument("parametric: tau range must have hi > lo");
}

double sign_value(Sign s) { return s == Sign::Plus ? 1.0 : -1.0; }

// Shared sampling driver: cumulative Theta along the tau grid, then the
// family-specific map (Y, q) with segment splitting at Theta sign changes.
struct ThetaSampler {
  const std::function<double(double)>& integrand;
  double theta;  // running value, seeded at the first grid point

  double advance(double from, double to) {
    theta += adaptive_quad(integrand, from, to, 1e-12).value;
    return theta;
  }
};

}  // namespace

double theta_first(double tau, double tau0, double C2, double lambda) {
  const auto integrand = first_integrand(C2, lambda);
  scan_domain(integrand, std::min(tau, tau0), std::max(tau, tau0));
  return adaptive_quad(integrand, tau0, tau, 1e-10).value;
}

ParametricCurve curve_first(double lambda, double C1, double C2, double a,
                            double b, const TauRange& range, double tau0) {
  if (a == 0.0 || b == 0.0 || C1 == 0.0)
    throw std::invalid_argument("curve_first: a, b, C1 must be nonzero");
  validate_range(range);

  ParametricCurve curve;
  curve.family = ParametricFamily::FirstCondition;
  curve.constants = {C1, C2, a, b, lambda};
  // alpha^(1/lambda) = a/b^2; the signed real power keeps the sign of b when
  // 2*lambda is an odd integer (e.g. lambda = 1/2, b < 0 yields alpha < 0).
  curve.alpha = real_pow(a, lambda) / real_pow(b, 2.0 * lambda);

  const auto integrand = first_integrand(C2, lambda);
  scan_domain(integrand, std::min(tau0, range.lo), std::max(tau0, range.hi));

  const double step = (range.hi - range.lo) / (range.count - 1);
  ThetaSampler sampler{integrand, 0.0};
  sampler.theta = adaptive_quad(integrand, tau0, range.lo, 1e-12).value;

  double prev_tau = range.lo;
  for (int i = 0; i < range.count; ++i) {
    const double t = (i == range.count - 1) ? range.hi : range.lo + i * step;
    const double th = (i == 0) ? sampler.theta : sampler.advance(prev_tau, t);
    prev_tau = t;
    curve.tau.push_back(t);
    curve.Y.push_back(a * C1 * C1 * std::exp(th));
    curve.q.push_back(b * C1 * t * std::exp(0.5 * th));
  }
  curve.segments = {{0, curve.tau.size()}};
  return curve;
}

ParametricCurve curve_first(double lambda, double C1, double C2, double a,
                            double b, const TauRange& range) {
  return curve_first(lambda, C1, C2, a, b, range, range.lo);
}

namespace {

// Appends a sample and maintains segment boundaries across Theta poles.
struct SegmentedAppender {
  ParametricCurve& curve;
  std::size_t seg_begin = 0;
  double prev_theta = 0.0;
  bool have_prev = false;

  void push(double tau, double theta, double Y, double q) {
    if (theta == 0.0) {  // exact pole: drop the sample, split here
      close();
      have_prev = false;
      return;
    }
    if (have_prev && theta * prev_theta < 0.0) close();
    curve.tau.push_back(tau);
    curve.Y.push_back(Y);
    curve.q.push_back(q);
    prev_theta = theta;
    have_prev = true;
  }

  void close() {
    if (curve.tau.size() > seg_begin)
      curve.segments.emplace_back(seg_begin, curve.tau.size());
    seg_begin = curve.tau.size();
  }
};

}  // namespace

ParametricCurve curve_second(double lambda, double C1, double C2, double a,
                             double b, Sign sign, const TauRange& range,
                             double tau0) {
  if (lambda == 0.0)
    throw std::invalid_argument("curve_second: lambda = 0; use curve_lambda0");
  if (a == 0.0 || b == 0.0 || C1 == 0.0)
    throw std::invalid_argument("curve_second: a, b, C1 must be nonzero");
  validate_range(range);

  const double s = sign_value(sign);
  auto integrand = std::function<double(double)>([=](double t) {
    const double r = 1.0 + s * real_pow(t, lambda);
    if (!(r > 0.0))
      throw std::domain_error("curve_second: radicand non-positive at tau = " +
                              fmt(t));
    return 1.0 / std::sqrt(r);
  });
  scan_domain(integrand, std::min(tau0, range.lo), std::max(tau0, range.hi));

  ParametricCurve curve;
  curve.family = ParametricFamily::SecondCondition;
  curve.constants = {C1, C2, a, b, lambda};
  curve.alpha = s * real_pow(a, lambda) * real_pow(b, 2.0 - lambda) * lambda / 2.0;

  const double y_const = a * real_pow(C1, lambda - 2.0);
  const double q_const = b * real_pow(C1, lambda);

  const double step = (range.hi - range.lo) / (range.count - 1);
  ThetaSampler sampler{integrand, 0.0};
  sampler.theta = C2 + adaptive_quad(integrand, tau0, range.lo, 1e-12).value;

  SegmentedAppender out{curve};
  double prev_tau = range.lo;
  for (int i = 0; i < range.count; ++i) {
    const double t = (i == range.count - 1) ? range.hi : range.lo + i * step;
    const double th = (i == 0) ? sampler.theta : sampler.advance(prev_tau, t);
    prev_tau = t;
    out.push(t, th, y_const / th, q_const * t / th);
  }
  out.close();
  return curve;
}

ParametricCurve curve_second(double lambda, double C1, double C2, double a,
                             double b, Sign sign, const TauRange& range) {
  return curve_second(lambda, C1, C2, a, b, sign, range, range.lo);
}

ParametricCurve curve_lambda0(double C1, double C2, double b, Sign sign,
                              const TauRange& range, double tau0) {
  if (b == 0.0 || C1 == 0.0)
    throw std::invalid_argument("curve_lambda0: b, C1 must be nonzero");
  validate_range(range);

  const double s = sign_value(sign);
  auto integrand =
      std::function<double(double)>([=](double t) { return std::exp(s * t * t); });

  ParametricCurve curve;
  curve.family = ParametricFamily::LambdaZero;
  curve.constants = {C1, C2, 1.0, b, 0.0};
  curve.alpha = s * 2.0 * b * b;

  const double step = (range.hi - range.lo) / (range.count - 1);
  ThetaSampler sampler{integrand, 0.0};
  sampler.theta = C2 + adaptive_quad(integrand, tau0, range.lo, 1e-12).value;

  SegmentedAppender out{curve};
  double prev_tau = range.lo;
  for (int i = 0; i < range.count; ++i) {
    const double t = (i == range.count - 1) ? range.hi : range.lo + i * step;
    const double th = (i == 0) ? sampler.theta : sampler.advance(prev_tau, t);
    prev_tau = t;
    out.push(t, th, C1 / th, b * std::exp(s * t * t) / th);
  }
  out.close();
  return curve;
}

ParametricCurve curve_lambda0(double C1, double C2, double b, Sign sign,
                              const TauRange& range) {
  return curve_lambda0(C1, C2, b, sign, range, range.lo);
}

double elliptic_rhs(double tau, double C2) {
  return 2.0 * tau * tau * tau / 3.0 + 0.25 * tau * tau + C2;
}

std::optional<EllipticOrbit> elliptic_orbit(double C2, int samples) {
  if (samples < 16)
    throw std::invalid_argument("elliptic_orbit: need at least 16 samples");

  const double c3 = 2.0 / 3.0;
  const auto roots = cubic_roots(c3, 0.25, 0.0, C2);

  // A bounded oscillation needs two adjacent *simple* roots with the cubic
  // positive between them. A repeated bounding root makes the period integral
  // diverge (homoclinic), so the case is rejected.
  int lo_idx = -1;
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
    const double mid = 0.5 * (roots[i].value + roots[i + 1].value);
    if (elliptic_rhs(mid, C2) > 0.0) {
      if (roots[i].multiplicity != 1 || roots[i + 1].multiplicity != 1)
        return std::nullopt;
      lo_idx = static_cast<int>(i);
      break;
    }
  }
  if (lo_idx < 0) return std::nullopt;

  const double r1 = roots[lo_idx].value;
  const double r2 = roots[lo_idx + 1].value;
  // With three simple real roots and positive leading coefficient the
  // positive interval is (smallest, middle); the third root sits above.
  double r3 = 0.0;
  for (const auto& r : roots)
    if (r.value != r1 && r.value != r2) r3 = r.value;

  // Factored integrand 1/sqrt(c3 (t-r1)(r2-t)(r3-t)); the substitutions
  // t = r1 + s^2 and t = r2 - s^2 remove the turning-point singularities.
  const double m = 0.5 * (r1 + r2);
  auto g_lo = std::function<double(double)>([=](double s) {
    return 2.0 / std::sqrt(c3 * (r2 - r1 - s * s) * (r3 - r1 - s * s));
  });
  auto g_hi = std::function<double(double)>([=](double s) {
    return 2.0 / std::sqrt(c3 * (r2 - r1 - s * s) * (r3 - r2 + s * s));
  });
  const double s_lo_max = std::sqrt(m - r1);
  const double s_hi_max = std::sqrt(r2 - m);

  EllipticOrbit orbit;
  orbit.tau_min = r1;
  orbit.tau_max = r2;

  // Ascending half: r1 -> m in the lower substitution, m -> r2 in the upper.
  const int half = std::max(samples / 2, 8);
  double theta = 0.0;
  orbit.theta.push_back(0.0);
  orbit.tau.push_back(r1);
  for (int i = 1; i <= half; ++i) {
    const double s_prev = s_lo_max * (i - 1) / half;
    const double s_cur = s_lo_max * i / half;
    theta += adaptive_quad(g_lo, s_prev, s_cur, 1e-12).value;
    orbit.theta.push_back(theta);
    orbit.tau.push_back(r1 + s_cur * s_cur);
  }
  for (int i = 1; i <= half; ++i) {
    const double s_prev = s_hi_max * (1.0 - double(i - 1) / half);
    const double s_cur = s_hi_max * (1.0 - double(i) / half);
    theta += adaptive_quad(g_hi, s_cur, s_prev, 1e-12).value;
    orbit.theta.push_back(theta);
    orbit.tau.push_back(r2 - s_cur * s_cur);
  }
  const double half_period = theta;
  orbit.period = 2.0 * half_period;

  // Mirror half: tau(period - Theta) = tau(Theta).
  const std::size_t nasc = orbit.theta.size();
  for (std::size_t i = nasc - 1; i-- > 0;) {
    orbit.theta.push_back(orbit.period - orbit.theta[i]);
    orbit.tau.push_back(orbit.tau[i]);
  }
  return orbit;
}

}  // namespace efdyn
