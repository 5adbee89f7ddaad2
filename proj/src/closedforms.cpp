#include "efdyn/closedforms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "efdyn/numerics.hpp"

namespace efdyn {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double pseudo_amplitude(double H) {
  return std::sqrt(M_PI / 2.0) * std::exp(H / 2.0);
}

double pseudo_solution(double H, double Y0, Branch /*branch*/, double Y) {
  const double A = pseudo_amplitude(H);
  const double arg = (Y - Y0) / A;
  if (!(std::abs(arg) < 1.0))
    throw std::domain_error(
        "pseudo_solution: Y outside the solution interval (Y0 - A, Y0 + A)");
  const double z = erf_inv(arg);
  return std::exp(H / 2.0) * std::exp(-z * z);
}

double pseudo_quadrature(double H, double q, Branch branch) {
  if (!(q > 0.0))
    throw std::domain_error("pseudo_quadrature: q must be positive");
  const double d = H / 2.0 - std::log(q);
  if (d < 0.0)
    throw std::domain_error("pseudo_quadrature: ln q exceeds H/2");
  const double mag = pseudo_amplitude(H) * erf(std::sqrt(d));
  return branch == Branch::Plus ? -mag : mag;
}

double ermakov_general(double C, double Y) {
  const double radicand = 1.0 - 2.0 * C * Y + (C * C - 1.0) * Y * Y;
  if (!(radicand > 0.0))
    throw std::domain_error("ermakov_general: radicand non-positive at Y");
  return std::sqrt(radicand);
}

double pinney(double Y) {
  const double radicand = 1.0 - Y * Y;
  if (!(radicand > 0.0))
    throw std::domain_error("pinney: Y outside (-1, 1)");
  return std::sqrt(radicand);
}

double ermakov_partner(double s) {
  const double radicand = s * s - 1.0;
  if (!(radicand > 0.0))
    throw std::domain_error("ermakov_partner: |s| must exceed 1");
  return std::sqrt(radicand);
}

double sech_soliton(double Y) {
  if (!(Y > 0.0)) throw std::domain_error("sech_soliton: Y must be positive");
  const double c = std::cosh(std::log(Y) / 4.0);
  return 0.375 * std::sqrt(Y) / (c * c);
}

double diode_partner(double s) {
  if (!(s > -1.0)) throw std::domain_error("diode_partner: s must exceed -1");
  const double t = 1.0 + s;
  return 1.5 * std::cbrt(1.5 * t * t * t * t);
}

double aslanov_general(double k, double p, double x) {
  if (p == -2.0 || p == -3.0)
    throw std::domain_error("aslanov_general: p in {-2, -3} is excluded");
  if (k == 0.0) throw std::domain_error("aslanov_general: k must be nonzero");
  const double inner = 1.0 + real_pow(x, k * (p + 2.0)) / (k * k * (p + 3.0));
  if (!(inner > 0.0))
    throw std::domain_error("aslanov_general: non-positive base");
  return real_pow(1.0 / inner, 1.0 / (p + 2.0));
}

double aslanov_particular(double x) {
  if (x < 0.0)
    throw std::domain_error("aslanov_particular: x must be non-negative");
  const double d = 2.0 + 3.0 * std::sqrt(x);
  return 9.0 * x / (d * d);
}

double ef_residual(const EfParams& p, const std::function<double(double)>& f,
                   double Y, double h) {
  const double d2 = second_derivative(f, Y, h);
  const double rhs = p.alpha * real_pow(Y, -p.lambda - 2.0) * real_pow(f(Y), p.n);
  return std::abs(d2 - rhs);
}

double ef_residual(const EfParams& p, const std::function<double(double)>& f,
                   double Y) {
  return ef_residual(p, f, Y, 1e-4 * std::max(1.0, std::abs(Y)));
}

double aslanov_residual(double k, double p,
                        const std::function<double(double)>& f, double x,
                        double h) {
  const double d2 = second_derivative(f, x, h);
  const double d1 = first_derivative(f, x, h);
  const double val = f(x);
  return std::abs(d2 + (k + 1.0) / x * d1 +
                  real_pow(x, 2.0 * k + k * p - 2.0) *
                      real_pow(val, 2.0 * p + 5.0));
}

const char* to_string(ClosedFormFamily f) {
  switch (f) {
    case ClosedFormFamily::PseudoErf: return "pseudo";
    case ClosedFormFamily::ErmakovGeneral: return "ermakov";
    case ClosedFormFamily::Pinney: return "pinney";
    case ClosedFormFamily::ErmakovPartner: return "ermakov-partner";
    case ClosedFormFamily::SechSoliton: return "sech";
    case ClosedFormFamily::DiodePartner: return "diode";
    case ClosedFormFamily::AslanovGeneral: return "aslanov";
    case ClosedFormFamily::AslanovParticular: return "aslanov-particular";
  }
  return "unknown";
}

namespace {

double get_or(const std::map<std::string, double>& m, const std::string& key,
              double def) {
  auto it = m.find(key);
  return it == m.end() ? def : it->second;
}

// Positivity component of 1 - 2CY + (C^2-1)Y^2 containing Y = 0.
Interval ermakov_domain(double C) {
  if (C == 1.0) return {-kInf, 0.5};    // 1 - 2Y
  if (C == -1.0) return {-0.5, kInf};   // 1 + 2Y
  const double r1 = 1.0 / (C - 1.0);
  const double r2 = 1.0 / (C + 1.0);
  if (C * C < 1.0) return {std::min(r1, r2), std::max(r1, r2)};
  // parabola opens upward; component containing 0 is unbounded on one side
  if (C > 1.0) return {-kInf, std::min(r1, r2)};
  return {std::max(r1, r2), kInf};
}

}  // namespace

ClosedForm make_closed_form(ClosedFormFamily family,
                            const std::map<std::string, double>& params) {
  ClosedForm cf;
  cf.family = family;
  switch (family) {
    case ClosedFormFamily::PseudoErf: {
      const double H = get_or(params, "H", 0.0);
      const double Y0 = get_or(params, "Y0", 0.0);
      const double A = pseudo_amplitude(H);
      cf.params = {{"H", H}, {"Y0", Y0}};
      cf.domain = {Y0 - A, Y0 + A};
      break;
    }
    case ClosedFormFamily::ErmakovGeneral: {
      const double C = get_or(params, "C", 0.0);
      cf.params = {{"C", C}};
      cf.domain = ermakov_domain(C);
      break;
    }
    case ClosedFormFamily::Pinney:
      cf.domain = {-1.0, 1.0};
      break;
    case ClosedFormFamily::ErmakovPartner:
      cf.domain = {1.0, kInf};
      break;
    case ClosedFormFamily::SechSoliton:
      cf.domain = {0.0, kInf};
      break;
    case ClosedFormFamily::DiodePartner:
      cf.domain = {-1.0, kInf};
      break;
    case ClosedFormFamily::AslanovGeneral: {
      const double k = get_or(params, "k", -1.0);
      const double p = get_or(params, "p", -1.5);
      if (p == -2.0 || p == -3.0)
        throw std::invalid_argument("make_closed_form: p in {-2, -3} excluded");
      if (k == 0.0)
        throw std::invalid_argument("make_closed_form: k must be nonzero");
      cf.params = {{"k", k}, {"p", p}};
      cf.domain = {0.0, kInf};
      break;
    }
    case ClosedFormFamily::AslanovParticular:
      cf.domain = {0.0, kInf};
      break;
  }
  return cf;
}

double evaluate(const ClosedForm& cf, double x) {
  switch (cf.family) {
    case ClosedFormFamily::PseudoErf:
      return pseudo_solution(get_or(cf.params, "H", 0.0),
                             get_or(cf.params, "Y0", 0.0), Branch::Plus, x);
    case ClosedFormFamily::ErmakovGeneral:
      return ermakov_general(get_or(cf.params, "C", 0.0), x);
    case ClosedFormFamily::Pinney:
      return pinney(x);
    case ClosedFormFamily::ErmakovPartner:
      return ermakov_partner(x);
    case ClosedFormFamily::SechSoliton:
      return sech_soliton(x);
    case ClosedFormFamily::DiodePartner:
      return diode_partner(x);
    case ClosedFormFamily::AslanovGeneral:
      return aslanov_general(get_or(cf.params, "k", -1.0),
                             get_or(cf.params, "p", -1.5), x);
    case ClosedFormFamily::AslanovParticular:
      return aslanov_particular(x);
  }
  throw std::logic_error("evaluate: unknown family");
}

}  // namespace efdyn
