#include "ordfix/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <fmt/format.h>

#include "ordfix/error.hpp"

namespace ordfix {

SpaceSpec::SpaceSpec(int dim, double p) : dim_(dim), p_(p) {
  if (dim < 1) throw PreconditionError(fmt::format("SpaceSpec: dimension must be positive, got {}", dim));
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw PreconditionError(fmt::format("SpaceSpec: exponent p must lie in (1, inf), got {}", p));
  }
}

namespace {

double lp_norm(const double* x, Eigen::Index n, double p) {
  double scale = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) scale = std::max(scale, std::abs(x[i]));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  if (p == 2.0) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double t = x[i] / scale;
      sum += t * t;
    }
    return scale * std::sqrt(sum);
  }
  for (Eigen::Index i = 0; i < n; ++i) sum += std::pow(std::abs(x[i]) / scale, p);
  return scale * std::pow(sum, 1.0 / p);
}

struct Plane {
  double a;
  double b;
};

double plane_norm(Plane v, double p) {
  const double xs[2] = {v.a, v.b};
  return lp_norm(xs, 2, p);
}

Plane unit_sphere_point(double theta, double p) {
  const Plane u{std::cos(theta), std::sin(theta)};
  const double n = plane_norm(u, p);
  return {u.a / n, u.b / n};
}

// 1 - ||x + y||/2 for the best partner y of x = s(theta) with ||x - y|| = eps,
// where y = s(theta + t) and t in (0, pi]. Distance along this arc grows
// from 0 to ||2x|| = 2.
double pair_gap(double theta, double eps, double p, const ModulusSolverConfig& cfg) {
  const Plane x = unit_sphere_point(theta, p);
  auto constraint = [&](double t) {
    const Plane y = unit_sphere_point(theta + t, p);
    return plane_norm({x.a - y.a, x.b - y.b}, p) - eps;
  };
  const double lo_val = -eps;
  const double hi_val = constraint(std::numbers::pi);
  if (hi_val <= 0.0) {
    // eps at the diameter: the antipode is the only admissible partner.
    return 1.0;
  }
  std::uintmax_t max_iter = static_cast<std::uintmax_t>(cfg.root_max_iter);
  auto stop = [](double a, double b) { return std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(b)); };
  // The upper end of the bracket is the feasible side (distance >= eps).
  const double b = boost::math::tools::toms748_solve(constraint, 0.0, std::numbers::pi, lo_val,
                                                     hi_val, stop, max_iter)
                       .second;
  const double residual = constraint(b);
  if (std::abs(residual) > cfg.root_tolerance) {
    throw SolverError(fmt::format(
        "modulus_of_convexity: partner-point solve stalled at theta={} (|distance - eps| = {}, {} iterations)",
        theta, std::abs(residual), max_iter));
  }
  const Plane y = unit_sphere_point(theta + b, p);
  return 1.0 - plane_norm({x.a + y.a, x.b + y.b}, p) / 2.0;
}

}  // namespace

double norm(const SpaceSpec& space, const Vector& x) {
  require_dim(x, space.dim(), "norm");
  require_finite(x, "norm");
  return lp_norm(x.data(), x.size(), space.p());
}

double distance(const SpaceSpec& space, const Vector& x, const Vector& y) {
  require_dim(x, space.dim(), "distance");
  require_dim(y, space.dim(), "distance");
  const Vector d = x - y;
  require_finite(d, "distance");
  return lp_norm(d.data(), d.size(), space.p());
}

double modulus_of_convexity(const SpaceSpec& space, double eps, const ModulusSolverConfig& cfg) {
  if (!(eps >= 0.0 && eps <= 2.0)) {
    throw PreconditionError(fmt::format("modulus_of_convexity: eps must lie in [0, 2], got {}", eps));
  }
  if (cfg.angle_grid < 1) throw PreconditionError("modulus_of_convexity: angle_grid must be positive");
  if (eps == 0.0) return 0.0;
  if (space.dim() == 1) {
    // The real line: x = 1, y = 1 - eps is optimal.
    return eps / 2.0;
  }
  // l^p restricted to span(e1, e2) is l^p^2, and the extremal pairs of l^p
  // live in such a section, so the computation is done in the plane.
  const double p = space.p();
  const double quarter = std::numbers::pi / 2.0;
  const double step = quarter / cfg.angle_grid;
  double best = std::numeric_limits<double>::infinity();
  int best_k = 0;
  for (int k = 0; k < cfg.angle_grid; ++k) {
    const double v = pair_gap(k * step, eps, p, cfg);
    if (v < best) {
      best = v;
      best_k = k;
    }
  }
  std::uintmax_t brent_iter = 200;
  const auto refined = boost::math::tools::brent_find_minima(
      [&](double theta) { return pair_gap(theta, eps, p, cfg); }, (best_k - 1) * step,
      (best_k + 1) * step, cfg.refine_bits, brent_iter);
  best = std::min(best, refined.second);
  return std::clamp(best, 0.0, 1.0);
}

double modulus_noise_floor() { return 64.0 * std::numeric_limits<double>::epsilon(); }

ConvexityProfile convexity_profile(const SpaceSpec& space, const ProfileConfig& cfg) {
  if (cfg.grid_points < 2) {
    throw PreconditionError(
        fmt::format("convexity_profile: grid needs at least two points, got {}", cfg.grid_points));
  }
  ConvexityProfile profile;
  profile.zero_tolerance = 10.0 * modulus_noise_floor();
  const int n = cfg.grid_points;
  profile.epsilons.reserve(n);
  profile.deltas.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double eps = (i == n - 1) ? 2.0 : 2.0 * i / (n - 1);
    profile.epsilons.push_back(eps);
    profile.deltas.push_back(modulus_of_convexity(space, eps, cfg.solver));
  }
  for (int i = 0; i < n; ++i) {
    if (profile.deltas[i] <= profile.zero_tolerance) profile.eps0 = profile.epsilons[i];
  }
  return profile;
}

double characteristic_of_convexity(const SpaceSpec& space, const ProfileConfig& cfg) {
  return convexity_profile(space, cfg).eps0;
}

ConvexityInequality convexity_inequality(const SpaceSpec& space, const Vector& x, const Vector& y,
                                         double lambda, double r, const ModulusSolverConfig& cfg) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw PreconditionError(fmt::format("convexity_inequality: r must be positive, got {}", r));
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw PreconditionError(fmt::format("convexity_inequality: lambda must lie in [0, 1], got {}", lambda));
  }
  const double nx = norm(space, x);
  const double ny = norm(space, y);
  const double bound = r * (1.0 + kConeTolerance);
  if (nx > bound) {
    throw PreconditionError(fmt::format("convexity_inequality: ||x|| = {} exceeds r = {}", nx, r));
  }
  if (ny > bound) {
    throw PreconditionError(fmt::format("convexity_inequality: ||y|| = {} exceeds r = {}", ny, r));
  }
  ConvexityInequality out;
  const double ratio = std::min(distance(space, x, y) / r, 2.0);
  out.delta = modulus_of_convexity(space, ratio, cfg);
  out.lhs = norm(space, lambda * x + (1.0 - lambda) * y);
  out.rhs = r * (1.0 - 2.0 * std::min(lambda, 1.0 - lambda) * out.delta);
  out.holds = inequality_holds(out.lhs, out.rhs);
  return out;
}

}  // namespace ordfix
