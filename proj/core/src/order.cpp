#include "ordfix/order.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ordfix/error.hpp"

namespace ordfix {

std::string_view to_string(ConeKind kind) {
  switch (kind) {
    case ConeKind::orthant:
      return "orthant";
    case ConeKind::lorentz:
      return "lorentz";
  }
  return "unknown";
}

ConeKind parse_cone_kind(std::string_view name) {
  if (name == "orthant") return ConeKind::orthant;
  if (name == "lorentz") return ConeKind::lorentz;
  throw ParseError(fmt::format("unknown cone kind '{}' (expected orthant or lorentz)", name));
}

ConeSpec::ConeSpec(ConeKind kind, int dim) : kind_(kind), dim_(dim) {
  if (dim < 1) throw PreconditionError(fmt::format("ConeSpec: dimension must be positive, got {}", dim));
  if (kind == ConeKind::lorentz && dim < 2) {
    throw PreconditionError("ConeSpec: the Lorentz cone needs dimension >= 2");
  }
}

double cone_margin(const ConeSpec& cone, const Vector& v) {
  require_dim(v, cone.dim(), "cone_margin");
  if (cone.kind() == ConeKind::orthant) return v.minCoeff();
  const Eigen::Index n = v.size();
  return v[n - 1] - v.head(n - 1).norm();
}

bool contains(const ConeSpec& cone, const Vector& x, double tol) { return cone_margin(cone, x) >= -tol; }

bool in_interior(const ConeSpec& cone, const Vector& x, double tol) { return cone_margin(cone, x) > tol; }

bool leq(const ConeSpec& cone, const Vector& x, const Vector& y, double tol) {
  require_dim(x, cone.dim(), "leq");
  require_dim(y, cone.dim(), "leq");
  return contains(cone, y - x, tol);
}

bool lt(const ConeSpec& cone, const Vector& x, const Vector& y, double tol) {
  if (!leq(cone, x, y, tol)) return false;
  return (y - x).cwiseAbs().maxCoeff() > tol;
}

bool ll(const ConeSpec& cone, const Vector& x, const Vector& y, double tol) {
  require_dim(x, cone.dim(), "ll");
  require_dim(y, cone.dim(), "ll");
  return in_interior(cone, y - x, tol);
}

OrderInterval::OrderInterval(const ConeSpec& cone, Vector lo, Vector hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  require_finite(lo_, "OrderInterval lo");
  require_finite(hi_, "OrderInterval hi");
  if (!leq(cone, lo_, hi_)) {
    throw PreconditionError(
        fmt::format("OrderInterval: lo = {} is not <= hi = {}", to_string(lo_), to_string(hi_)));
  }
}

bool interval_contains(const OrderInterval& interval, const ConeSpec& cone, const Vector& z) {
  return leq(cone, interval.lo(), z) && leq(cone, z, interval.hi());
}

namespace {

void require_minihedral(const ConeSpec& cone, std::string_view what) {
  if (!cone.is_minihedral()) {
    throw UnsupportedOperation(fmt::format("{}: the {} cone is not minihedral", what, to_string(cone.kind())));
  }
}

}  // namespace

Vector sup_pair(const ConeSpec& cone, const Vector& x, const Vector& y) {
  require_minihedral(cone, "sup_pair");
  require_dim(x, cone.dim(), "sup_pair");
  require_dim(y, cone.dim(), "sup_pair");
  return x.cwiseMax(y);
}

Vector inf_pair(const ConeSpec& cone, const Vector& x, const Vector& y) {
  require_minihedral(cone, "inf_pair");
  require_dim(x, cone.dim(), "inf_pair");
  require_dim(y, cone.dim(), "inf_pair");
  return x.cwiseMin(y);
}

Vector sup_set(const ConeSpec& cone, std::span<const Vector> points) {
  require_minihedral(cone, "sup_set");
  if (points.empty()) throw PreconditionError("sup_set: empty set has no supremum in a pointed cone");
  Vector s = points.front();
  for (const Vector& v : points) s = sup_pair(cone, s, v);
  return s;
}

Vector inf_set(const ConeSpec& cone, std::span<const Vector> points) {
  require_minihedral(cone, "inf_set");
  if (points.empty()) throw PreconditionError("inf_set: empty set has no infimum in a pointed cone");
  Vector s = points.front();
  for (const Vector& v : points) s = inf_pair(cone, s, v);
  return s;
}

Vector project_onto_cone(const ConeSpec& cone, const Vector& v) {
  require_dim(v, cone.dim(), "project_onto_cone");
  if (cone.kind() == ConeKind::orthant) return v.cwiseMax(0.0);
  const Eigen::Index n = v.size();
  const double s = v[n - 1];
  const double r = v.head(n - 1).norm();
  if (r <= s) return v;
  if (r <= -s) return Vector::Zero(n);
  const double scale = (s + r) / 2.0;
  Vector out(n);
  out.head(n - 1) = v.head(n - 1) * (scale / r);
  out[n - 1] = scale;
  return out;
}

Vector sample_cone_point(const ConeSpec& cone, Rng& rng, double scale) {
  const int d = cone.dim();
  if (cone.kind() == ConeKind::orthant) return rng.uniform_cube(d, 0.0, scale);
  const double t = rng.uniform(0.0, scale);
  Vector v = t * rng.uniform_cube(d, -1.0, 1.0);
  v[d - 1] += t;
  return project_onto_cone(cone, v);
}

std::vector<OrderedPair> sample_ordered_pairs(const ConeSpec& cone, int n, Rng& rng, double scale) {
  std::vector<OrderedPair> pairs;
  pairs.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) {
    Vector x = rng.uniform_cube(cone.dim(), -scale, scale);
    Vector y = x + sample_cone_point(cone, rng, scale);
    pairs.push_back({std::move(x), std::move(y)});
  }
  return pairs;
}

std::vector<OrderedPair> sample_positive_ordered_pairs(const ConeSpec& cone, int n, Rng& rng, double scale) {
  std::vector<OrderedPair> pairs;
  pairs.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) {
    Vector x = sample_cone_point(cone, rng, scale);
    Vector y = x + sample_cone_point(cone, rng, scale);
    pairs.push_back({std::move(x), std::move(y)});
  }
  return pairs;
}

double normality_constant_estimate(const SpaceSpec& space, std::span<const OrderedPair> pairs) {
  double best = 0.0;
  for (const auto& [x, y] : pairs) {
    const double ny = norm(space, y);
    if (ny == 0.0) continue;
    best = std::max(best, norm(space, x) / ny);
  }
  return best;
}

double normality_constant_estimate(const ConeSpec& cone, const SpaceSpec& space, int n_samples,
                                   std::uint64_t seed) {
  if (n_samples <= 0) throw PreconditionError("normality_constant_estimate: n_samples must be positive");
  if (cone.dim() != space.dim()) throw DimensionMismatch("normality_constant_estimate: cone and space dimensions differ");
  Rng rng(seed);
  const auto pairs = sample_positive_ordered_pairs(cone, n_samples, rng);
  return normality_constant_estimate(space, pairs);
}

NormMonotonicityReport check_norm_monotonic(const ConeSpec& cone, const NormFunction& norm_fn,
                                            std::span<const OrderedPair> pairs) {
  NormMonotonicityReport report;
  const Vector zero = Vector::Zero(cone.dim());
  for (const auto& [x, y] : pairs) {
    if (!leq(cone, zero, x) || !leq(cone, x, y)) {
      throw PreconditionError(
          fmt::format("check_norm_monotonic: pair {} / {} is not ordered 0 <= x <= y", to_string(x), to_string(y)));
    }
    ++report.samples;
    const double nx = norm_fn(x);
    const double ny = norm_fn(y);
    if (!inequality_holds(nx, ny)) {
      report.passed = false;
      if (!report.witness) report.witness = NormMonotonicityReport::Witness{x, y, nx, ny};
    }
  }
  return report;
}

NormMonotonicityReport is_norm_monotonic(const ConeSpec& cone, const SpaceSpec& space, int n_samples,
                                         std::uint64_t seed) {
  if (n_samples <= 0) throw PreconditionError("is_norm_monotonic: n_samples must be positive");
  if (cone.dim() != space.dim()) throw DimensionMismatch("is_norm_monotonic: cone and space dimensions differ");
  Rng rng(seed);
  const auto pairs = sample_positive_ordered_pairs(cone, n_samples, rng);
  return check_norm_monotonic(cone, [&space](const Vector& v) { return norm(space, v); }, pairs);
}

LatticeReport check_lattice_axioms(const ConeSpec& cone, int n_samples, std::uint64_t seed) {
  if (!cone.is_minihedral()) {
    throw UnsupportedOperation(
        fmt::format("check_lattice_axioms: the {} cone is not minihedral", to_string(cone.kind())));
  }
  Rng rng(seed);
  LatticeReport report;
  auto same = [](const Vector& a, const Vector& b) { return (a - b).cwiseAbs().maxCoeff() <= kConeTolerance; };
  for (int i = 0; i < n_samples; ++i) {
    const Vector x = rng.uniform_cube(cone.dim(), -1.0, 1.0);
    const Vector y = rng.uniform_cube(cone.dim(), -1.0, 1.0);
    ++report.samples;
    if (!same(sup_pair(cone, x, x), x) || !same(inf_pair(cone, x, x), x)) ++report.idempotence_failures;
    if (!same(sup_pair(cone, x, y), sup_pair(cone, y, x)) || !same(inf_pair(cone, x, y), inf_pair(cone, y, x))) {
      ++report.commutativity_failures;
    }
    if (!same(sup_pair(cone, x, inf_pair(cone, x, y)), x) || !same(inf_pair(cone, x, sup_pair(cone, x, y)), x)) {
      ++report.absorption_failures;
    }
    const Vector s = sup_pair(cone, x, y);
    const Vector m = inf_pair(cone, x, y);
    if (!leq(cone, x, s) || !leq(cone, y, s) || !leq(cone, m, x) || !leq(cone, m, y)) {
      ++report.upper_bound_failures;
    }
  }
  return report;
}

}  // namespace ordfix
