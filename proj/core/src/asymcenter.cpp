#include "ordfix/asymcenter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "ordfix/error.hpp"

namespace ordfix {

AsymCenterProblem make_asym_center_problem(std::vector<Vector> tail, const ConeSpec& cone, const SpaceSpec& space,
                                           TailDirection direction) {
  if (tail.empty()) throw PreconditionError("asymptotic center: empty tail");
  if (cone.kind() != ConeKind::orthant) {
    throw UnsupportedOperation(
        fmt::format("asymptotic center: the constraint set needs a strongly minihedral cone, got {}",
                    to_string(cone.kind())));
  }
  for (const Vector& x : tail) {
    require_dim(x, space.dim(), "asymptotic center tail");
    require_finite(x, "asymptotic center tail");
  }
  Vector bound = direction == TailDirection::increasing ? sup_set(cone, tail) : inf_set(cone, tail);
  return AsymCenterProblem{std::move(tail), cone, space, direction, std::move(bound)};
}

AsymCenterProblem asym_center_problem_from_orbit(const OrbitRecord& record, const ConeSpec& cone,
                                                 const SpaceSpec& space, std::optional<std::size_t> from) {
  if (record.points.empty()) throw PreconditionError("asymptotic center: empty orbit");
  const std::size_t start = std::min(from.value_or(record.points.size() / 2), record.points.size() - 1);
  std::vector<Vector> tail(record.points.begin() + static_cast<std::ptrdiff_t>(start), record.points.end());
  const MonotoneCheck chain = check_orbit_monotone(record, cone);
  TailDirection direction = TailDirection::increasing;
  if (!chain.increasing) {
    if (!chain.decreasing) throw PreconditionError("asymptotic center: orbit is not monotone");
    direction = TailDirection::decreasing;
  }
  return make_asym_center_problem(std::move(tail), cone, space, direction);
}

double asymptotic_radius(const AsymCenterProblem& problem, const Vector& y) {
  if (problem.tail.empty()) throw PreconditionError("asymptotic_radius: empty tail");
  double r = 0.0;
  for (const Vector& x : problem.tail) r = std::max(r, distance(problem.space, x, y));
  return r;
}

namespace {

Vector project(const AsymCenterProblem& problem, const Vector& y) {
  return problem.direction == TailDirection::increasing ? Vector(y.cwiseMax(problem.bound))
                                                        : Vector(y.cwiseMin(problem.bound));
}

// Subgradient of max_n ||x_n - y||: the dual-norm unit vector of the
// farthest tail point, taken at y.
Vector subgradient(const AsymCenterProblem& problem, const Vector& y, double& value) {
  const double p = problem.space.p();
  std::size_t arg = 0;
  value = -1.0;
  for (std::size_t n = 0; n < problem.tail.size(); ++n) {
    const double d = distance(problem.space, problem.tail[n], y);
    if (d > value) {
      value = d;
      arg = n;
    }
  }
  Vector g = Vector::Zero(y.size());
  if (value == 0.0) return g;
  const Vector v = y - problem.tail[arg];
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double t = std::abs(v[i]) / value;
    g[i] = (v[i] < 0 ? -1.0 : 1.0) * std::pow(t, p - 1.0);
  }
  return g;
}

}  // namespace

AsymCenterResult solve_asym_center(const AsymCenterProblem& problem, const AsymCenterConfig& cfg) {
  if (cfg.max_iter < 1) throw PreconditionError("solve_asym_center: max_iter must be >= 1");
  const double p = problem.space.p();
  const double d = problem.space.dim();
  // ||v||_2 <= kappa ||v||_p
  const double kappa = p > 2.0 ? std::pow(d, 0.5 - 1.0 / p) : 1.0;

  Vector y = problem.bound;
  const double f0 = asymptotic_radius(problem, y);
  // Every tail point lies between bound and the far end of the tail, so the
  // monotonic l^p norm gives f(y) >= f(bound) on the constraint set.
  const double monotone_bound = cfg.use_order_bound ? f0 : 0.0;
  const double radius = 2.0 * kappa * f0;
  double c = cfg.step_scale;
  if (c <= 0.0) {
    const ConeSpec& cone = problem.cone;
    c = (sup_set(cone, problem.tail) - inf_set(cone, problem.tail)).norm();
  }

  AsymCenterResult result;
  result.z = y;
  result.r = f0;
  double sum_step = 0.0;
  double sum_sq = 0.0;
  result.subgradient_bound = -std::numeric_limits<double>::infinity();
  result.lower_bound = monotone_bound;

  for (int k = 1; k <= cfg.max_iter && c > 0.0; ++k) {
    double value = 0.0;
    const Vector g = subgradient(problem, y, value);
    if (value < result.r) {
      result.r = value;
      result.z = y;
    }
    result.iterations = k;
    if (value == 0.0) break;
    const double step = c / std::sqrt(static_cast<double>(k));
    sum_step += step;
    sum_sq += step * step * g.squaredNorm();
    result.subgradient_bound = result.r - (radius * radius + sum_sq) / (2.0 * sum_step);
    result.lower_bound = std::max(monotone_bound, result.subgradient_bound);
    if (result.r - result.lower_bound <= 1e-3 * cfg.tol) break;
    y = project(problem, y - step * g);
  }
  result.lower_bound = std::max({result.lower_bound, result.subgradient_bound, 0.0});
  result.certified = result.r - result.lower_bound <= cfg.tol;
  if (!result.certified) {
    throw SolverError(fmt::format(
        "solve_asym_center: stalled after {} iterations, best value {} vs certified lower bound {} (gap {} > tol {})",
        result.iterations, result.r, result.lower_bound, result.r - result.lower_bound, cfg.tol));
  }
  return result;
}

void attach_fixed_point_residual(const MappingSpec& map, const SpaceSpec& space, AsymCenterResult& result) {
  try {
    result.fixed_point_residual = distance(space, apply(map, result.z), result.z);
  } catch (const DomainError&) {
    result.fixed_point_residual = std::numeric_limits<double>::infinity();
  }
}

bool verify_center_is_fixed(const MappingSpec& map, const SpaceSpec& space, const AsymCenterResult& result,
                            double tol) {
  AsymCenterResult copy = result;
  attach_fixed_point_residual(map, space, copy);
  return copy.fixed_point_residual <= tol;
}

}  // namespace ordfix
