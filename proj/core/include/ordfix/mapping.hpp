#pragma once

// Declarative self-maps T : K -> K.
//
// A MappingSpec is an immutable value made of a variant (the formula) and a
// domain K. Factories verify on sampled points of K that T(K) is contained
// in K and throw DomainError otherwise.

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "ordfix/order.hpp"
#include "ordfix/sampling.hpp"
#include "ordfix/vector.hpp"

namespace ordfix {

/// Finite rectangular lattice origin + k .* step, 0 <= k_i < shape_i, with
/// one image point per lattice point (row-major, last coordinate fastest).
struct GridTable {
  Vector origin;
  Vector step;
  std::vector<int> shape;
  std::vector<Vector> values;

  int dim() const { return static_cast<int>(shape.size()); }
  std::size_t size() const;
  Vector point(std::size_t flat_index) const;
  /// Flat index of the lattice point within 1e-9 * step of x, if any.
  std::optional<std::size_t> index_of(const Vector& x) const;
};

struct Domain {
  enum class Kind { whole_space, cone, order_interval, box, lattice };

  Kind kind = Kind::whole_space;
  std::optional<ConeSpec> cone;  ///< cone and order_interval
  Vector lo;                     ///< order_interval and box
  Vector hi;

  static Domain whole_space() { return {}; }
  static Domain of_cone(const ConeSpec& cone);
  static Domain order_interval(const ConeSpec& cone, Vector lo, Vector hi);
  static Domain box(Vector lo, Vector hi);
};

std::string_view to_string(Domain::Kind kind);

class MappingSpec;

namespace maps {

struct Affine {
  Matrix A;
  Vector b;
};
/// x -> min(x, c) componentwise.
struct Truncation {
  Vector c;
};
struct Translation {
  Vector b;
};
/// x -> clamp(x, lo, hi) componentwise.
struct BoxProjection {
  Vector lo;
  Vector hi;
};
/// Applied first to last: maps[0] acts first.
struct Composition {
  std::vector<MappingSpec> maps;
};
struct GridDefined {
  GridTable table;
};

}  // namespace maps

class MappingSpec {
 public:
  using Variant = std::variant<maps::Affine, maps::Truncation, maps::Translation, maps::BoxProjection,
                               maps::Composition, maps::GridDefined>;

  static MappingSpec affine(Matrix A, Vector b, Domain domain = Domain::whole_space());
  static MappingSpec truncation(Vector c, Domain domain = Domain::whole_space());
  static MappingSpec translation(Vector b, Domain domain = Domain::whole_space());
  static MappingSpec box_projection(Vector lo, Vector hi, Domain domain = Domain::whole_space());
  static MappingSpec composition(std::vector<MappingSpec> parts, Domain domain = Domain::whole_space());
  /// The domain of a grid-defined map is its lattice.
  static MappingSpec grid_defined(GridTable table);

  int dim() const { return dim_; }
  const Domain& domain() const { return domain_; }
  const Variant& variant() const { return variant_; }
  std::string_view variant_name() const;

 private:
  MappingSpec(Variant variant, Domain domain, int dim);
  void verify_self_map() const;

  Variant variant_;
  Domain domain_;
  int dim_;
};

/// Membership in the declared domain, with cone tolerance on the boundary.
bool in_domain(const MappingSpec& map, const Vector& x);

/// T(x). Throws DomainError if x is outside the declared domain.
Vector apply(const MappingSpec& map, const Vector& x);

/// A point of the declared domain; `scale` bounds the coordinates of points
/// drawn from unbounded domains.
Vector sample_domain_point(const MappingSpec& map, Rng& rng, double scale = 4.0);

struct SamplerConfig {
  int samples = 1000;
  std::uint64_t seed = 0;
  double scale = 4.0;
};

/// Pairs x <= y with both points in the domain of map. Lattice domains draw
/// both points from the lattice (orthant cone only).
std::vector<OrderedPair> sample_comparable_pairs(const MappingSpec& map, const ConeSpec& cone,
                                                 const SamplerConfig& cfg);
/// Every pair x <= y of lattice points, x != y allowed to coincide.
std::vector<OrderedPair> lattice_comparable_pairs(const GridTable& table, const ConeSpec& cone);

/// Largest modulus of an eigenvalue.
double spectral_radius(const Matrix& A);

/// For an affine map: the minimum-norm solution of (I - A) x = b when the
/// system is consistent and that solution lies in the domain.
std::optional<Vector> affine_fixed_point(const MappingSpec& map);

struct FixedPointSearchConfig {
  Vector lo;                 ///< search box; must be finite
  Vector hi;
  double step = 0.25;        ///< grid resolution h
  double tol = kFixedPointTolerance;  ///< max-norm residual accepted
  int refine_steps = 200;    ///< Picard steps tried from each grid point
  std::size_t max_points = 2'000'000;
};

/// Grid-based fixed-point oracle. Returns grid points with
/// ||Tx - x||_inf <= tol plus points reached from grid points by a short
/// Picard refinement, de-duplicated. For affine maps with spectral radius
/// below one the exact solve of (I - A) x = b comes first. Lattice maps are
/// searched over their lattice instead of the grid.
std::vector<Vector> fixed_point_oracle(const MappingSpec& map, const FixedPointSearchConfig& cfg);

}  // namespace ordfix
