#include "ordfix/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "ordfix/error.hpp"

namespace ordfix {

// ---------------------------------------------------------------- GridTable

std::size_t GridTable::size() const {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         [](std::size_t acc, int n) { return acc * static_cast<std::size_t>(n); });
}

Vector GridTable::point(std::size_t flat_index) const {
  Vector x(dim());
  for (int i = dim() - 1; i >= 0; --i) {
    const auto n = static_cast<std::size_t>(shape[i]);
    x[i] = origin[i] + static_cast<double>(flat_index % n) * step[i];
    flat_index /= n;
  }
  return x;
}

std::optional<std::size_t> GridTable::index_of(const Vector& x) const {
  if (x.size() != dim()) return std::nullopt;
  std::size_t flat = 0;
  for (int i = 0; i < dim(); ++i) {
    const double k = std::round((x[i] - origin[i]) / step[i]);
    if (k < 0 || k >= shape[i]) return std::nullopt;
    if (std::abs(x[i] - (origin[i] + k * step[i])) > 1e-9 * step[i]) return std::nullopt;
    flat = flat * static_cast<std::size_t>(shape[i]) + static_cast<std::size_t>(k);
  }
  return flat;
}

// ------------------------------------------------------------------- Domain

Domain Domain::of_cone(const ConeSpec& cone) {
  Domain d;
  d.kind = Kind::cone;
  d.cone = cone;
  return d;
}

Domain Domain::order_interval(const ConeSpec& cone, Vector lo, Vector hi) {
  const OrderInterval checked(cone, lo, hi);
  Domain d;
  d.kind = Kind::order_interval;
  d.cone = cone;
  d.lo = checked.lo();
  d.hi = checked.hi();
  return d;
}

Domain Domain::box(Vector lo, Vector hi) {
  require_dim(hi, lo.size(), "Domain::box");
  require_finite(lo, "Domain::box lo");
  require_finite(hi, "Domain::box hi");
  if ((hi - lo).minCoeff() < 0.0) {
    throw PreconditionError(fmt::format("Domain::box: lo = {} exceeds hi = {}", to_string(lo), to_string(hi)));
  }
  Domain d;
  d.kind = Kind::box;
  d.lo = std::move(lo);
  d.hi = std::move(hi);
  return d;
}

std::string_view to_string(Domain::Kind kind) {
  switch (kind) {
    case Domain::Kind::whole_space:
      return "space";
    case Domain::Kind::cone:
      return "cone";
    case Domain::Kind::order_interval:
      return "order_interval";
    case Domain::Kind::box:
      return "box";
    case Domain::Kind::lattice:
      return "lattice";
  }
  return "unknown";
}

namespace {

void check_domain_dim(const Domain& domain, int dim) {
  if (domain.cone && domain.cone->dim() != dim) {
    throw DimensionMismatch(fmt::format("domain cone has dimension {}, map has {}", domain.cone->dim(), dim));
  }
  if (domain.kind == Domain::Kind::box || domain.kind == Domain::Kind::order_interval) {
    require_dim(domain.lo, dim, "domain lo");
    require_dim(domain.hi, dim, "domain hi");
  }
}

Vector apply_variant(const MappingSpec::Variant& variant, const Vector& x) {
  return std::visit(
      [&x](const auto& m) -> Vector {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, maps::Affine>) {
          return m.A * x + m.b;
        } else if constexpr (std::is_same_v<M, maps::Truncation>) {
          return x.cwiseMin(m.c);
        } else if constexpr (std::is_same_v<M, maps::Translation>) {
          return x + m.b;
        } else if constexpr (std::is_same_v<M, maps::BoxProjection>) {
          return x.cwiseMax(m.lo).cwiseMin(m.hi);
        } else if constexpr (std::is_same_v<M, maps::Composition>) {
          Vector y = x;
          for (const MappingSpec& part : m.maps) y = apply(part, y);
          return y;
        } else {
          const auto idx = m.table.index_of(x);
          if (!idx) throw DomainError(fmt::format("grid-defined map: {} is not a lattice point", to_string(x)));
          return m.table.values[*idx];
        }
      },
      variant);
}

}  // namespace

// -------------------------------------------------------------- MappingSpec

MappingSpec::MappingSpec(Variant variant, Domain domain, int dim)
    : variant_(std::move(variant)), domain_(std::move(domain)), dim_(dim) {
  check_domain_dim(domain_, dim_);
}

MappingSpec MappingSpec::affine(Matrix A, Vector b, Domain domain) {
  if (A.rows() != A.cols()) throw DimensionMismatch("affine map: A must be square");
  require_dim(b, A.rows(), "affine map b");
  require_finite(b, "affine map b");
  if (!A.allFinite()) throw NonFiniteValue("affine map: A has non-finite entries");
  const int dim = static_cast<int>(A.rows());
  MappingSpec m(maps::Affine{std::move(A), std::move(b)}, std::move(domain), dim);
  m.verify_self_map();
  return m;
}

MappingSpec MappingSpec::truncation(Vector c, Domain domain) {
  require_finite(c, "truncation map c");
  const int dim = static_cast<int>(c.size());
  MappingSpec m(maps::Truncation{std::move(c)}, std::move(domain), dim);
  m.verify_self_map();
  return m;
}

MappingSpec MappingSpec::translation(Vector b, Domain domain) {
  require_finite(b, "translation map b");
  const int dim = static_cast<int>(b.size());
  MappingSpec m(maps::Translation{std::move(b)}, std::move(domain), dim);
  m.verify_self_map();
  return m;
}

MappingSpec MappingSpec::box_projection(Vector lo, Vector hi, Domain domain) {
  const Domain checked = Domain::box(lo, hi);
  const int dim = static_cast<int>(lo.size());
  MappingSpec m(maps::BoxProjection{checked.lo, checked.hi}, std::move(domain), dim);
  m.verify_self_map();
  return m;
}

MappingSpec MappingSpec::composition(std::vector<MappingSpec> parts, Domain domain) {
  if (parts.empty()) throw PreconditionError("composition: needs at least one map");
  const int dim = parts.front().dim();
  for (const MappingSpec& part : parts) {
    if (part.dim() != dim) throw DimensionMismatch("composition: parts have different dimensions");
  }
  MappingSpec m(maps::Composition{std::move(parts)}, std::move(domain), dim);
  m.verify_self_map();
  return m;
}

MappingSpec MappingSpec::grid_defined(GridTable table) {
  const int dim = table.dim();
  if (dim < 1) throw PreconditionError("grid-defined map: empty shape");
  require_dim(table.origin, dim, "grid origin");
  require_dim(table.step, dim, "grid step");
  require_finite(table.origin, "grid origin");
  for (int i = 0; i < dim; ++i) {
    if (table.shape[i] < 1) throw PreconditionError("grid-defined map: shape entries must be positive");
    if (!(table.step[i] > 0.0) || !std::isfinite(table.step[i])) {
      throw PreconditionError("grid-defined map: steps must be positive and finite");
    }
  }
  if (table.values.size() != table.size()) {
    throw PreconditionError(fmt::format("grid-defined map: expected {} values, got {}", table.size(),
                                        table.values.size()));
  }
  // Exhaustive self-map check: every image must itself be a lattice point.
  for (std::size_t i = 0; i < table.values.size(); ++i) {
    require_dim(table.values[i], dim, "grid value");
    if (!table.index_of(table.values[i])) {
      throw DomainError(fmt::format("grid-defined map: image {} of {} is not a lattice point",
                                    to_string(table.values[i]), to_string(table.point(i))));
    }
  }
  Domain domain;
  domain.kind = Domain::Kind::lattice;
  return MappingSpec(maps::GridDefined{std::move(table)}, std::move(domain), dim);
}

std::string_view MappingSpec::variant_name() const {
  constexpr std::string_view names[] = {"affine",         "truncation",  "translation",
                                        "box_projection", "composition", "grid_defined"};
  return names[variant_.index()];
}

void MappingSpec::verify_self_map() const {
  if (domain_.kind == Domain::Kind::whole_space) return;
  Rng rng(0x5e1fa9ULL);
  for (int i = 0; i < 256; ++i) {
    const Vector x = sample_domain_point(*this, rng);
    const Vector y = apply_variant(variant_, x);
    if (!in_domain(*this, y)) {
      throw DomainError(fmt::format("{} map is not a self-map of its {} domain: T{} = {}", variant_name(),
                                    to_string(domain_.kind), to_string(x), to_string(y)));
    }
  }
}

bool in_domain(const MappingSpec& map, const Vector& x) {
  if (x.size() != map.dim()) return false;
  const Domain& d = map.domain();
  switch (d.kind) {
    case Domain::Kind::whole_space:
      return true;
    case Domain::Kind::cone:
      return contains(*d.cone, x);
    case Domain::Kind::order_interval:
      return leq(*d.cone, d.lo, x) && leq(*d.cone, x, d.hi);
    case Domain::Kind::box:
      return (x - d.lo).minCoeff() >= -kConeTolerance && (d.hi - x).minCoeff() >= -kConeTolerance;
    case Domain::Kind::lattice:
      return std::get<maps::GridDefined>(map.variant()).table.index_of(x).has_value();
  }
  return false;
}

Vector apply(const MappingSpec& map, const Vector& x) {
  require_dim(x, map.dim(), "apply");
  require_finite(x, "apply");
  if (!in_domain(map, x)) {
    throw DomainError(fmt::format("apply: {} lies outside the {} domain of the {} map", to_string(x),
                                  to_string(map.domain().kind), map.variant_name()));
  }
  return apply_variant(map.variant(), x);
}

Vector sample_domain_point(const MappingSpec& map, Rng& rng, double scale) {
  const Domain& d = map.domain();
  switch (d.kind) {
    case Domain::Kind::whole_space:
      return rng.uniform_cube(map.dim(), -scale, scale);
    case Domain::Kind::cone:
      return sample_cone_point(*d.cone, rng, scale);
    case Domain::Kind::box:
      return rng.uniform_box(d.lo, d.hi);
    case Domain::Kind::order_interval: {
      if (d.cone->kind() == ConeKind::orthant) return rng.uniform_box(d.lo, d.hi);
      const double size = (d.hi - d.lo).norm();
      for (int attempt = 0; attempt < 64; ++attempt) {
        Vector z = d.lo + sample_cone_point(*d.cone, rng, size);
        if (leq(*d.cone, z, d.hi)) return z;
      }
      const double t = rng.uniform(0.0, 1.0);
      return t * d.lo + (1.0 - t) * d.hi;
    }
    case Domain::Kind::lattice: {
      const auto& table = std::get<maps::GridDefined>(map.variant()).table;
      const int k = rng.uniform_int(0, static_cast<int>(table.size()) - 1);
      return table.point(static_cast<std::size_t>(k));
    }
  }
  return Vector::Zero(map.dim());
}

std::vector<OrderedPair> sample_comparable_pairs(const MappingSpec& map, const ConeSpec& cone,
                                                 const SamplerConfig& cfg) {
  if (cone.dim() != map.dim()) throw DimensionMismatch("sample_comparable_pairs: cone and map dimensions differ");
  Rng rng(cfg.seed);
  std::vector<OrderedPair> pairs;
  pairs.reserve(static_cast<std::size_t>(std::max(cfg.samples, 0)));
  const Domain& d = map.domain();

  if (d.kind == Domain::Kind::lattice) {
    if (cone.kind() != ConeKind::orthant) {
      throw UnsupportedOperation("sample_comparable_pairs: lattice domains are ordered by the orthant only");
    }
    const auto& table = std::get<maps::GridDefined>(map.variant()).table;
    for (int s = 0; s < cfg.samples; ++s) {
      Vector x(table.dim());
      Vector y(table.dim());
      for (int i = 0; i < table.dim(); ++i) {
        const int kx = rng.uniform_int(0, table.shape[i] - 1);
        const int ky = rng.uniform_int(kx, table.shape[i] - 1);
        x[i] = table.origin[i] + kx * table.step[i];
        y[i] = table.origin[i] + ky * table.step[i];
      }
      pairs.push_back({std::move(x), std::move(y)});
    }
    return pairs;
  }

  const bool clip_to_box = cone.kind() == ConeKind::orthant &&
                           (d.kind == Domain::Kind::box ||
                            (d.kind == Domain::Kind::order_interval && d.cone->kind() == ConeKind::orthant));
  for (int s = 0; s < cfg.samples; ++s) {
    Vector x = sample_domain_point(map, rng, cfg.scale);
    Vector step = sample_cone_point(cone, rng, cfg.scale);
    Vector y = x + step;
    if (clip_to_box) {
      y = y.cwiseMin(d.hi);
    } else {
      int halvings = 0;
      while (!in_domain(map, y) && halvings < 60) {
        step *= 0.5;
        y = x + step;
        ++halvings;
      }
      if (!in_domain(map, y)) y = x;
    }
    pairs.push_back({std::move(x), std::move(y)});
  }
  return pairs;
}

std::vector<OrderedPair> lattice_comparable_pairs(const GridTable& table, const ConeSpec& cone) {
  std::vector<Vector> points;
  points.reserve(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) points.push_back(table.point(i));
  std::vector<OrderedPair> pairs;
  for (const Vector& x : points) {
    for (const Vector& y : points) {
      if (leq(cone, x, y)) pairs.push_back({x, y});
    }
  }
  return pairs;
}

double spectral_radius(const Matrix& A) {
  if (A.rows() != A.cols()) throw DimensionMismatch("spectral_radius: matrix must be square");
  if (A.size() == 0) return 0.0;
  Eigen::EigenSolver<Matrix> solver(A, /*computeEigenvectors=*/false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

std::optional<Vector> affine_fixed_point(const MappingSpec& map) {
  const auto* affine = std::get_if<maps::Affine>(&map.variant());
  if (!affine) throw PreconditionError("affine_fixed_point: map is not affine");
  const Eigen::Index n = affine->A.rows();
  const Matrix system = Matrix::Identity(n, n) - affine->A;
  const Eigen::CompleteOrthogonalDecomposition<Matrix> cod(system);
  Vector x = cod.solve(affine->b);
  const double scale = std::max(1.0, affine->b.cwiseAbs().maxCoeff());
  if (!x.allFinite() || (system * x - affine->b).cwiseAbs().maxCoeff() > 1e-10 * scale) return std::nullopt;
  if (!in_domain(map, x)) return std::nullopt;
  return x;
}

std::vector<Vector> fixed_point_oracle(const MappingSpec& map, const FixedPointSearchConfig& cfg) {
  const bool is_lattice = map.domain().kind == Domain::Kind::lattice;
  if (!is_lattice) {
    require_dim(cfg.lo, map.dim(), "fixed_point_oracle lo");
    require_dim(cfg.hi, map.dim(), "fixed_point_oracle hi");
    if (!cfg.lo.allFinite() || !cfg.hi.allFinite()) {
      throw PreconditionError("fixed_point_oracle: the search region must be bounded");
    }
    if ((cfg.hi - cfg.lo).minCoeff() < 0.0) throw PreconditionError("fixed_point_oracle: lo exceeds hi");
    if (!(cfg.step > 0.0)) throw PreconditionError("fixed_point_oracle: grid step must be positive");
  }
  if (!(cfg.tol > 0.0)) throw PreconditionError("fixed_point_oracle: tol must be positive");

  std::vector<Vector> found;
  const double merge_radius = 10.0 * cfg.tol;
  auto add = [&](const Vector& x) {
    for (const Vector& f : found) {
      if ((f - x).cwiseAbs().maxCoeff() <= merge_radius) return;
    }
    found.push_back(x);
  };

  if (const auto* affine = std::get_if<maps::Affine>(&map.variant());
      affine && spectral_radius(affine->A) < 1.0) {
    if (auto exact = affine_fixed_point(map)) add(*exact);
  }

  auto residual = [&](const Vector& x, Vector& tx) {
    tx = apply(map, x);
    return (tx - x).cwiseAbs().maxCoeff();
  };
  auto probe = [&](const Vector& start) {
    Vector x = start;
    Vector tx;
    for (int s = 0; s <= cfg.refine_steps; ++s) {
      try {
        if (residual(x, tx) <= cfg.tol) {
          add(x);
          return;
        }
      } catch (const DomainError&) {
        return;
      }
      x = tx;
    }
  };

  if (is_lattice) {
    const auto& table = std::get<maps::GridDefined>(map.variant()).table;
    for (std::size_t i = 0; i < table.size(); ++i) probe(table.point(i));
    return found;
  }

  std::vector<int> counts(static_cast<std::size_t>(map.dim()));
  std::size_t total = 1;
  for (int i = 0; i < map.dim(); ++i) {
    counts[i] = static_cast<int>(std::floor((cfg.hi[i] - cfg.lo[i]) / cfg.step + 1e-9)) + 1;
    total *= static_cast<std::size_t>(counts[i]);
    if (total > cfg.max_points) {
      throw PreconditionError(fmt::format("fixed_point_oracle: grid exceeds {} points", cfg.max_points));
    }
  }
  std::vector<int> k(static_cast<std::size_t>(map.dim()), 0);
  Vector g(map.dim());
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (int i = 0; i < map.dim(); ++i) g[i] = cfg.lo[i] + k[i] * cfg.step;
    if (in_domain(map, g)) probe(g);
    for (int i = map.dim() - 1; i >= 0; --i) {
      if (++k[i] < counts[i]) break;
      k[i] = 0;
    }
  }
  return found;
}

}  // namespace ordfix
