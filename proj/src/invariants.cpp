#include "efdyn/invariants.hpp"

#include <cmath>
#include <stdexcept>

#include "efdyn/numerics.hpp"

namespace efdyn {

double pseudo_hamiltonian(const PhysicalState& s) {
  if (s.q == 0.0)
    throw std::domain_error("pseudo_hamiltonian: q = 0 (logarithmic singularity)");
  return s.qY * s.qY + std::log(s.q * s.q);
}

double invariant_first(const EfParams& p, const PhysicalState& s) {
  if (p.lambda == -1.0)
    throw std::domain_error(
        "invariant_first: lambda = -1 is unsupported (no closed-form invariant "
        "for this case)");
  if (s.Y == 0.0) throw std::domain_error("invariant_first: Y must be nonzero");
  const double pw = real_pow(s.q * s.q / s.Y, p.lambda + 1.0);
  return s.Y * s.qY * s.qY - s.q * s.qY - p.alpha / (p.lambda + 1.0) * pw;
}

double invariant_second(const EfParams& p, const PhysicalState& s) {
  if (p.lambda == 0.0)
    throw std::domain_error(
        "invariant_second: lambda = 0 is unsupported (use pseudo_hamiltonian "
        "in partner variables)");
  if (s.Y == 0.0) throw std::domain_error("invariant_second: Y must be nonzero");
  const double d = s.q - s.Y * s.qY;
  const double pw = real_pow(s.q / s.Y, p.lambda);
  return d * d - 2.0 * p.alpha / p.lambda * pw;
}

double ermakov_invariant(const PhysicalState& s) {
  if (s.q == 0.0) throw std::domain_error("ermakov_invariant: q must be nonzero");
  return 0.5 * (s.qY * s.qY - 1.0 / (s.q * s.q));
}

double ermakov_c_invariant(const PhysicalState& s) {
  if (s.q == 0.0)
    throw std::domain_error("ermakov_c_invariant: q must be nonzero");
  return s.Y * (s.qY * s.qY - 1.0 / (s.q * s.q)) - s.q * s.qY;
}

DriftReport invariant_drift(const std::vector<double>& values) {
  if (values.empty())
    throw std::invalid_argument("invariant_drift: empty sample list");
  const double first = values.front();
  double max_dev = 0.0;
  for (double v : values) max_dev = std::max(max_dev, std::abs(v - first));
  return {max_dev, max_dev / std::max(1.0, std::abs(first))};
}

}  // namespace efdyn
