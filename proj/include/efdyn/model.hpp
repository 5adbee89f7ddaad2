#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "efdyn/numerics.hpp"

namespace efdyn {

/// Parameters (alpha, lambda, n) of the Emden-Fowler equation
///   q_YY = alpha * Y^(-lambda-2) * q^n.
/// alpha must be nonzero and all fields finite; the constructor enforces it.
struct EfParams {
  double alpha;
  double lambda;
  double n;
  EfParams(double alpha_, double lambda_, double n_);
};

/// State of the autonomous phase-plane system. The canonical coordinates are
/// named (u, v) here: u is the usual X of the planar reduction and v is the
/// system's second coordinate, renamed to avoid the collision with the
/// physical independent variable Y. t is the autonomous time, t = ln(xi).
struct SystemState {
  double u = 0.0;
  double v = 0.0;
  double t = 0.0;
};

enum class EquilibriumKind {
  Saddle,
  StableNode,
  UnstableNode,
  StableSpiral,
  UnstableSpiral,
  Center,
  DegenerateNode,
  NonHyperbolic,
};

enum class PointIndex { P0, P1, P2, P3 };

const char* to_string(EquilibriumKind k);  // lowercase snake_case
const char* to_string(PointIndex i);       // "p0" .. "p3"

struct EquilibriumPoint {
  double u = 0.0;
  double v = 0.0;
  double delta1 = 0.0;        // Jacobian trace
  double delta2 = 0.0;        // Jacobian determinant
  double discriminant = 0.0;  // delta1^2 - 4*delta2
  EquilibriumKind kind = EquilibriumKind::NonHyperbolic;
  PointIndex index = PointIndex::P0;
  /// Set when this point lies within 1e-9 of an earlier-indexed one
  /// (e.g. P3 = P1 for the pseudo-oscillator). Points are never merged.
  std::optional<PointIndex> coincident_with;
};

struct FixedPointSet {
  std::vector<EquilibriumPoint> points;  // P0, P1, P2[, P3], in index order
  bool p3_defined = true;                // false iff n == 1 (division by zero)
};

/// The two quadrature-integrability conditions: n = 2*lambda + 1 (first) and
/// n = lambda - 1 (second), each tested with the same absolute tolerance.
struct RosenauStatus {
  bool first = false;
  bool second = false;
  double tolerance = kDefaultTol;
};

struct CenterCondition {
  bool necessary = false;   // trace of J at P3 vanishes: n = 2*lambda + 1
  bool sufficient = false;  // necessary and det(J at P3) = lambda/2 > 0: n > 1
};

/// Right-hand side of the autonomous system:
///   du/dt = -u (1 + u - alpha v),  dv/dt = v (1 + lambda + n u - alpha v).
Eigen::Vector2d vector_field(const EfParams& p, const Eigen::Vector2d& s);
Eigen::Vector2d vector_field(const EfParams& p, const SystemState& s);

/// Jacobian of the vector field:
///   [[-1 - 2u + alpha v, alpha u], [n v, 1 + lambda + n u - 2 alpha v]].
Eigen::Matrix2d jacobian(const EfParams& p, const Eigen::Vector2d& s);
Eigen::Matrix2d jacobian(const EfParams& p, const SystemState& s);

/// Linear classification from trace delta1 and determinant delta2, with a
/// tolerance band resolving the borderline cases. Total: every input pair
/// maps to exactly one kind. "Center" is a linear-analysis statement.
EquilibriumKind classify(double delta1, double delta2, double tol = kDefaultTol);

/// The equilibria (0,0), (-1,0), (0,(lambda+1)/alpha) and, for n != 1,
/// (-lambda/(n-1), (lambda-n+1)/(alpha(1-n))), each carrying its
/// (delta1, delta2, discriminant) and classification. Coincident points are
/// kept and flagged, not merged.
FixedPointSet fixed_points(const EfParams& p, double tol = kDefaultTol);

RosenauStatus rosenau_status(const EfParams& p, double tol = kDefaultTol);

/// Periodicity conditions at P3. Necessary: n = 2*lambda + 1 (within tol).
/// Sufficient: additionally n > 1 + tol, equivalently det(J at P3) =
/// lambda/2 > 0. Stated for lambda > 0 (n > 1); see README for the lambda
/// threshold discussion.
CenterCondition center_condition(const EfParams& p, double tol = kDefaultTol);

}  // namespace efdyn
