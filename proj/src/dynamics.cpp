#include "efdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "efdyn/numerics.hpp"

namespace efdyn {

namespace {

constexpr double kBlowupGuard = 1e12;
constexpr double kSingularityGuard = 1e-10;

using Vec2 = Eigen::Vector2d;
using Rhs = std::function<Vec2(double, const Vec2&)>;

Vec2 euler_step(const Rhs& f, double t, const Vec2& y, double h) {
  return y + h * f(t, y);
}

Vec2 rk4_step(const Rhs& f, double t, const Vec2& y, double h) {
  const Vec2 k1 = f(t, y);
  const Vec2 k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
  const Vec2 k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
  const Vec2 k4 = f(t + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Fehlberg 4(5) embedded pair; returns the 5th-order solution and the
// infinity-norm difference against the 4th-order one in err.
Vec2 rkf45_step(const Rhs& f, double t, const Vec2& y, double h, double& err) {
  const Vec2 k1 = f(t, y);
  const Vec2 k2 = f(t + h / 4.0, y + h * (k1 / 4.0));
  const Vec2 k3 = f(t + 3.0 * h / 8.0, y + h * (3.0 * k1 + 9.0 * k2) / 32.0);
  const Vec2 k4 = f(t + 12.0 * h / 13.0,
                    y + h * (1932.0 * k1 - 7200.0 * k2 + 7296.0 * k3) / 2197.0);
  const Vec2 k5 = f(t + h, y + h * (439.0 / 216.0 * k1 - 8.0 * k2 +
                                    3680.0 / 513.0 * k3 - 845.0 / 4104.0 * k4));
  const Vec2 k6 =
      f(t + h / 2.0, y + h * (-8.0 / 27.0 * k1 + 2.0 * k2 -
                              3544.0 / 2565.0 * k3 + 1859.0 / 4104.0 * k4 -
                              11.0 / 40.0 * k5));
  const Vec2 y5 = y + h * (16.0 / 135.0 * k1 + 6656.0 / 12825.0 * k3 +
                           28561.0 / 56430.0 * k4 - 9.0 / 50.0 * k5 +
                           2.0 / 55.0 * k6);
  const Vec2 y4 = y + h * (25.0 / 216.0 * k1 + 1408.0 / 2565.0 * k3 +
                           2197.0 / 4104.0 * k4 - k5 / 5.0);
  err = (y5 - y4).cwiseAbs().maxCoeff();
  return y5;
}

struct GuardResult {
  bool stop = false;
  StopReason reason = StopReason::Completed;
  std::string detail;
};

// Per-step acceptance check; sees the previous and candidate states.
using Guard = std::function<GuardResult(const Vec2& prev, const Vec2& next)>;

GuardResult common_guard(const Vec2& next) {
  if (!next.allFinite())
    return {true, StopReason::NonFinite, "non-finite state"};
  if (next.cwiseAbs().maxCoeff() > kBlowupGuard)
    return {true, StopReason::Blowup, "|state| exceeded 1e12"};
  return {};
}

void validate_step_control(Method method, double step_or_tol) {
  if (method == Method::RKF45) {
    if (!(step_or_tol >= 1e-14 && step_or_tol <= 1e-2))
      throw std::invalid_argument(
          "integrate: adaptive tolerance must lie in [1e-14, 1e-2]");
  } else if (!(step_or_tol > 0.0)) {
    throw std::invalid_argument("integrate: step size must be positive");
  }
}

// Fixed-step driver (Euler/RK4). Step targets are computed as t0 + i*dt so
// the endpoint is hit exactly (convergence studies rely on it). RHS domain
// errors truncate the trajectory.
void run_fixed(const Rhs& f, double t_end, Method method, double dt,
               const Guard& guard, Trajectory& traj) {
  const double t0 = traj.samples.back().t;
  double t = t0;
  Vec2 y(traj.samples.back().x1, traj.samples.back().x2);
  const long nsteps =
      static_cast<long>(std::ceil((t_end - t0) / dt - 1e-9));
  for (long i = 1; i <= nsteps; ++i) {
    const double t_next = (i == nsteps) ? t_end : t0 + i * dt;
    const double h = t_next - t;
    Vec2 next;
    try {
      next = method == Method::Euler ? euler_step(f, t, y, h)
                                     : rk4_step(f, t, y, h);
    } catch (const std::domain_error& e) {
      traj.stop = StopReason::DomainEdge;
      traj.stop_detail = e.what();
      return;
    }
    const GuardResult g = guard(y, next);
    if (g.stop) {
      traj.stop = g.reason;
      traj.stop_detail = g.detail;
      return;
    }
    t = t_next;
    y = next;
    ++traj.step_info.accepted;
    traj.samples.push_back({t, y[0], y[1]});
  }
}

// Adaptive RKF45 driver with local extrapolation. Error control is mixed
// absolute/relative: err <= tol * max(1, |y|_inf). Step underflow throws
// IntegrationError unless the collapse was forced by a domain edge or a
// guard rejection, which truncate instead.
void run_adaptive(const Rhs& f, double t_end, double tol, const Guard& guard,
                  Trajectory& traj) {
  double t = traj.samples.back().t;
  Vec2 y(traj.samples.back().x1, traj.samples.back().x2);
  double h = std::min(1e-2 * (t_end - t), 0.1);
  bool domain_rejected = false;
  bool guard_rejected = false;
  GuardResult last_guard;
  std::string domain_detail;

  while (t < t_end) {
    if (t_end - t <= 4e-14 * std::max(1.0, std::abs(t_end))) break;
    h = std::min(h, t_end - t);
    if (h < 1e-14 * std::max(1.0, std::abs(t))) {
      if (domain_rejected) {
        traj.stop = StopReason::DomainEdge;
        traj.stop_detail = domain_detail;
        return;
      }
      if (guard_rejected) {
        traj.stop = last_guard.reason;
        traj.stop_detail = last_guard.detail;
        return;
      }
      throw IntegrationError("integrate: step size underflow at t = " +
                                 std::to_string(t),
                             traj);
    }
    double err = 0.0;
    Vec2 next;
    try {
      next = rkf45_step(f, t, y, h, err);
    } catch (const std::domain_error& e) {
      domain_rejected = true;
      domain_detail = e.what();
      h *= 0.5;
      ++traj.step_info.rejected;
      continue;
    }
    domain_rejected = false;
    const double scale = tol * std::max(1.0, y.cwiseAbs().maxCoeff());
    if (!std::isfinite(err) || err > scale) {
      const double shrink =
          std::isfinite(err) && err > 0.0
              ? std::max(0.1, 0.9 * std::pow(scale / err, 0.2))
              : 0.1;
      h *= shrink;
      ++traj.step_info.rejected;
      continue;
    }
    const GuardResult g = guard(y, next);
    if (g.stop) {
      // Shrink onto the stopping set instead of stepping over it; once the
      // step floor is reached the guard's reason is reported.
      if (h > 2e-14 * std::max(1.0, std::abs(t))) {
        guard_rejected = true;
        last_guard = g;
        h *= 0.5;
        ++traj.step_info.rejected;
        continue;
      }
      traj.stop = g.reason;
      traj.stop_detail = g.detail;
      return;
    }
    guard_rejected = false;
    t += h;
    y = next;
    ++traj.step_info.accepted;
    traj.samples.push_back({t, y[0], y[1]});
    const double grow = err > 0.0 ? 0.9 * std::pow(scale / err, 0.2) : 4.0;
    h *= std::clamp(grow, 0.1, 4.0);
  }
}

Trajectory run(const Rhs& f, Coords coords, double t0, const Vec2& y0,
               double t_end, Method method, double step_or_tol,
               const Guard& guard) {
  validate_step_control(method, step_or_tol);
  Trajectory traj;
  traj.coords = coords;
  traj.method = method;
  traj.step_info.step_or_tol = step_or_tol;
  traj.samples.push_back({t0, y0[0], y0[1]});
  if (method == Method::RKF45)
    run_adaptive(f, t_end, step_or_tol, guard, traj);
  else
    run_fixed(f, t_end, method, step_or_tol, guard, traj);
  return traj;
}

}  // namespace

const char* to_string(Method m) {
  switch (m) {
    case Method::Euler: return "euler";
    case Method::RK4: return "rk4";
    case Method::RKF45: return "rkf45";
  }
  return "unknown";
}

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::Completed: return "completed";
    case StopReason::Blowup: return "blowup";
    case StopReason::Singularity: return "singularity";
    case StopReason::NonFinite: return "non_finite";
    case StopReason::DomainEdge: return "domain_edge";
  }
  return "unknown";
}

Trajectory integrate_system(const EfParams& p, double u0, double v0,
                            double t_max, Method method, double step_or_tol) {
  if (!(t_max > 0.0))
    throw std::invalid_argument("integrate_system: t_max must be positive");
  Rhs f = [&p](double, const Vec2& y) { return vector_field(p, y); };
  Guard guard = [](const Vec2&, const Vec2& next) { return common_guard(next); };
  return run(f, Coords::System, 0.0, Vec2(u0, v0), t_max, method, step_or_tol,
             guard);
}

Trajectory integrate_physical(const EfParams& p, double Y0, double q0,
                              double qY0, double Y_max, Method method,
                              double step_or_tol) {
  if (!(Y_max > Y0))
    throw std::invalid_argument("integrate_physical: Y_max must exceed Y0");
  Rhs f = [&p](double Y, const Vec2& s) {
    return Vec2(s[1],
                p.alpha * real_pow(Y, -p.lambda - 2.0) * real_pow(s[0], p.n));
  };
  (void)f(Y0, Vec2(q0, qY0));  // initial state must be evaluable: caller error
  const bool negative_power = p.n < 0.0;
  Guard guard = [negative_power](const Vec2& prev, const Vec2& next) {
    GuardResult g = common_guard(next);
    if (g.stop) return g;
    if (negative_power &&
        (std::abs(next[0]) < kSingularityGuard || next[0] * prev[0] < 0.0))
      return GuardResult{true, StopReason::Singularity,
                         "q reached the singularity guard"};
    return GuardResult{};
  };
  return run(f, Coords::Physical, Y0, Vec2(q0, qY0), Y_max, method,
             step_or_tol, guard);
}

KamkeState kamke_map(double Y, double q, double qY) {
  if (Y == 0.0) throw std::domain_error("kamke_map: Y must be nonzero");
  return {1.0 / Y, q, -Y * Y * qY};
}

PhysicalState kamke_inverse(const KamkeState& k) {
  if (k.xi == 0.0) throw std::domain_error("kamke_inverse: xi must be nonzero");
  return {1.0 / k.xi, k.eta, -k.eta_prime * k.xi * k.xi};
}

std::pair<double, double> invariant_transform(double Y, double q) {
  if (Y == 0.0)
    throw std::domain_error("invariant_transform: Y must be nonzero");
  return {1.0 / Y, q / Y};
}

SystemState js_coordinates(const EfParams& p, double xi, double eta,
                           double eta_prime) {
  if (eta == 0.0)
    throw std::domain_error("js_coordinates: eta must be nonzero");
  if (eta_prime == 0.0)
    throw std::domain_error("js_coordinates: eta' must be nonzero");
  if (!(xi > 0.0))
    throw std::domain_error("js_coordinates: xi must be positive (xi = e^t)");
  SystemState s;
  s.u = xi * eta_prime / eta;
  s.v = real_pow(xi, p.lambda - 1.0) * real_pow(eta, p.n) / eta_prime;
  s.t = std::log(xi);
  return s;
}

SystemState physical_to_system(const EfParams& p, const PhysicalState& s) {
  const KamkeState k = kamke_map(s.Y, s.q, s.qY);
  return js_coordinates(p, k.xi, k.eta, k.eta_prime);
}

PeriodReport detect_period(const EfParams& p, double u0, double v0, double tol,
                           double t_max) {
  if (!(tol > 0.0))
    throw std::invalid_argument("detect_period: tolerance must be positive");
  if (!(t_max > 0.0))
    throw std::invalid_argument("detect_period: t_max must be positive");

  Rhs f = [&p](double, const Vec2& y) { return vector_field(p, y); };
  const double itol = 1e-10;

  // Matching crossings repeat the initial crossing: same v-direction and, when
  // P3 exists, the same side of P3 in u.
  const double vdot0 = vector_field(p, Vec2(u0, v0))[1];
  const int dir0 = vdot0 > 0.0 ? 1 : (vdot0 < 0.0 ? -1 : 0);
  int u_side = 0;
  double u3 = 0.0;
  const FixedPointSet fps = fixed_points(p);
  if (fps.p3_defined) {
    u3 = fps.points.back().u;
    u_side = u0 > u3 ? 1 : (u0 < u3 ? -1 : 0);
  }

  PeriodReport rep;
  rep.reason = "inconclusive";

  Vec2 y(u0, v0);
  double t = 0.0;
  double h = 1e-3;

  // Re-integrates the last accepted step to a query time; used by the
  // crossing bisection so event location does not depend on step placement.
  auto state_from = [&f](double t_from, const Vec2& y_from, double t_query) {
    const int substeps = 32;
    Vec2 z = y_from;
    double tt = t_from;
    const double hh = (t_query - t_from) / substeps;
    for (int i = 0; i < substeps; ++i) {
      z = rk4_step(f, tt, z, hh);
      tt += hh;
    }
    return z;
  };

  while (t < t_max) {
    h = std::min(h, t_max - t);
    if (h < 1e-14 * std::max(1.0, t)) {
      rep.reason = "step_underflow";
      return rep;
    }
    double err = 0.0;
    const Vec2 next = rkf45_step(f, t, y, h, err);
    const double scale = itol * std::max(1.0, y.cwiseAbs().maxCoeff());
    if (!std::isfinite(err) || err > scale) {
      h *= std::isfinite(err) && err > 0.0
               ? std::max(0.1, 0.9 * std::pow(scale / err, 0.2))
               : 0.1;
      continue;
    }
    if (!next.allFinite() || next.cwiseAbs().maxCoeff() > kBlowupGuard) {
      rep.reason = "escape";
      return rep;
    }

    const double ga = y[1] - v0;
    const double gb = next[1] - v0;
    if (ga != 0.0 && gb != 0.0 && ga * gb < 0.0) {
      // Bisection on the section event, refined to 1e-12 in time.
      double lo = t, hi = t + h;
      const bool rising = gb > 0.0;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        const double gm = state_from(t, y, mid)[1] - v0;
        if ((gm < 0.0) == rising)
          lo = mid;
        else
          hi = mid;
      }
      const double tc = 0.5 * (lo + hi);
      const Vec2 yc = state_from(t, y, tc);
      ++rep.crossings;
      const int cdir = rising ? 1 : -1;
      const int cside = yc[0] > u3 ? 1 : (yc[0] < u3 ? -1 : 0);
      if ((dir0 == 0 || cdir == dir0) && (u_side == 0 || cside == u_side)) {
        const double closure = std::hypot(yc[0] - u0, yc[1] - v0);
        rep.closure_error = std::min(rep.closure_error, closure);
        if (closure < tol) {
          rep.periodic = true;
          rep.period = tc;
          rep.closure_error = closure;
          rep.reason = "closed";
          return rep;
        }
      }
    }

    t += h;
    y = next;
    const double grow = err > 0.0 ? 0.9 * std::pow(scale / err, 0.2) : 4.0;
    h *= std::clamp(grow, 0.1, 4.0);
  }
  return rep;
}

}  // namespace efdyn
