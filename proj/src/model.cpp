#include "efdyn/model.hpp"

#include <cmath>
#include <stdexcept>

namespace efdyn {

EfParams::EfParams(double alpha_, double lambda_, double n_)
    : alpha(alpha_), lambda(lambda_), n(n_) {
  if (!std::isfinite(alpha) || !std::isfinite(lambda) || !std::isfinite(n))
    throw std::invalid_argument("EfParams: all parameters must be finite");
  if (alpha == 0.0)
    throw std::invalid_argument("EfParams: alpha must be nonzero");
}

const char* to_string(EquilibriumKind k) {
  switch (k) {
    case EquilibriumKind::Saddle: return "saddle";
    case EquilibriumKind::StableNode: return "stable_node";
    case EquilibriumKind::UnstableNode: return "unstable_node";
    case EquilibriumKind::StableSpiral: return "stable_spiral";
    case EquilibriumKind::UnstableSpiral: return "unstable_spiral";
    case EquilibriumKind::Center: return "center";
    case EquilibriumKind::DegenerateNode: return "degenerate_node";
    case EquilibriumKind::NonHyperbolic: return "non_hyperbolic";
  }
  return "unknown";
}

const char* to_string(PointIndex i) {
  switch (i) {
    case PointIndex::P0: return "p0";
    case PointIndex::P1: return "p1";
    case PointIndex::P2: return "p2";
    case PointIndex::P3: return "p3";
  }
  return "unknown";
}

Eigen::Vector2d vector_field(const EfParams& p, const Eigen::Vector2d& s) {
  const double u = s[0];
  const double v = s[1];
  return {-u * (1.0 + u - p.alpha * v),
          v * (1.0 + p.lambda + p.n * u - p.alpha * v)};
}

Eigen::Vector2d vector_field(const EfParams& p, const SystemState& s) {
  return vector_field(p, Eigen::Vector2d(s.u, s.v));
}

Eigen::Matrix2d jacobian(const EfParams& p, const Eigen::Vector2d& s) {
  const double u = s[0];
  const double v = s[1];
  Eigen::Matrix2d j;
  j << -1.0 - 2.0 * u + p.alpha * v, p.alpha * u,
       p.n * v, 1.0 + p.lambda + p.n * u - 2.0 * p.alpha * v;
  return j;
}

Eigen::Matrix2d jacobian(const EfParams& p, const SystemState& s) {
  return jacobian(p, Eigen::Vector2d(s.u, s.v));
}

EquilibriumKind classify(double delta1, double delta2, double tol) {
  if (!(tol > 0.0))
    throw std::invalid_argument("classify: tolerance must be positive");
  if (delta2 < -tol) return EquilibriumKind::Saddle;
  if (std::abs(delta2) <= tol) {
    return std::abs(delta1) > tol ? EquilibriumKind::DegenerateNode
                                  : EquilibriumKind::NonHyperbolic;
  }
  // delta2 > tol from here
  if (std::abs(delta1) <= tol) return EquilibriumKind::Center;
  const double disc = delta1 * delta1 - 4.0 * delta2;
  if (std::abs(disc) <= tol) return EquilibriumKind::DegenerateNode;
  if (delta1 < 0.0)
    return disc > tol ? EquilibriumKind::StableNode
                      : EquilibriumKind::StableSpiral;
  return disc > tol ? EquilibriumKind::UnstableNode
                    : EquilibriumKind::UnstableSpiral;
}

FixedPointSet fixed_points(const EfParams& p, double tol) {
  auto make = [&](PointIndex idx, double u, double v) {
    const Eigen::Matrix2d j = jacobian(p, Eigen::Vector2d(u, v));
    const double d1 = j.trace();
    const double d2 = j.determinant();
    EquilibriumPoint pt;
    pt.u = u;
    pt.v = v;
    pt.delta1 = d1;
    pt.delta2 = d2;
    pt.discriminant = d1 * d1 - 4.0 * d2;
    pt.kind = classify(d1, d2, tol);
    pt.index = idx;
    return pt;
  };

  FixedPointSet set;
  set.points.push_back(make(PointIndex::P0, 0.0, 0.0));
  set.points.push_back(make(PointIndex::P1, -1.0, 0.0));
  set.points.push_back(make(PointIndex::P2, 0.0, (p.lambda + 1.0) / p.alpha));
  set.p3_defined = (p.n != 1.0);
  if (set.p3_defined) {
    const double u3 = -p.lambda / (p.n - 1.0);
    const double v3 = (p.lambda - p.n + 1.0) / (p.alpha * (1.0 - p.n));
    set.points.push_back(make(PointIndex::P3, u3, v3));
  }

  // Coincidences (e.g. P3 = P1 for the pseudo-oscillator) are flagged on the
  // later-indexed point.
  for (std::size_t i = 1; i < set.points.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double du = set.points[i].u - set.points[j].u;
      const double dv = set.points[i].v - set.points[j].v;
      if (std::hypot(du, dv) < 1e-9) {
        set.points[i].coincident_with = set.points[j].index;
        break;
      }
    }
  }
  return set;
}

RosenauStatus rosenau_status(const EfParams& p, double tol) {
  if (!(tol > 0.0))
    throw std::invalid_argument("rosenau_status: tolerance must be positive");
  RosenauStatus st;
  st.first = std::abs(p.n - (2.0 * p.lambda + 1.0)) <= tol;
  st.second = std::abs(p.n - (p.lambda - 1.0)) <= tol;
  st.tolerance = tol;
  return st;
}

CenterCondition center_condition(const EfParams& p, double tol) {
  if (!(tol > 0.0))
    throw std::invalid_argument("center_condition: tolerance must be positive");
  CenterCondition cc;
  cc.necessary = std::abs(p.n - (2.0 * p.lambda + 1.0)) <= tol;
  cc.sufficient = cc.necessary && p.n > 1.0 + tol;
  return cc;
}

}  // namespace efdyn
