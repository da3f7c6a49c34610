#pragma once

// Partial orders induced by closed convex pointed cones:
//   x <= y  iff  y - x in P,
//   x <  y  iff  x <= y and x != y,
//   x << y  iff  y - x in int P.
// Two cones ship: the non-negative orthant and the Lorentz (ice-cream) cone
// {x : x_last >= ||(x_1, ..., x_{d-1})||_2}.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ordfix/sampling.hpp"
#include "ordfix/space.hpp"
#include "ordfix/vector.hpp"

namespace ordfix {

enum class ConeKind { orthant, lorentz };

std::string_view to_string(ConeKind kind);
/// "orthant" or "lorentz"; throws ParseError otherwise.
ConeKind parse_cone_kind(std::string_view name);

class ConeSpec {
 public:
  ConeSpec(ConeKind kind, int dim);

  static ConeSpec orthant(int dim) { return {ConeKind::orthant, dim}; }
  static ConeSpec lorentz(int dim) { return {ConeKind::lorentz, dim}; }

  ConeKind kind() const { return kind_; }
  int dim() const { return dim_; }
  /// Pairwise (indeed set-wise) suprema exist only for the orthant.
  bool is_minihedral() const { return kind_ == ConeKind::orthant; }

  friend bool operator==(const ConeSpec&, const ConeSpec&) = default;

 private:
  ConeKind kind_;
  int dim_;
};

/// Signed membership margin: >= 0 iff v in P. Orthant: min_i v_i. Lorentz:
/// v_last - ||v_rest||_2.
double cone_margin(const ConeSpec& cone, const Vector& v);

bool contains(const ConeSpec& cone, const Vector& x, double tol = kConeTolerance);
bool in_interior(const ConeSpec& cone, const Vector& x, double tol = kConeTolerance);

bool leq(const ConeSpec& cone, const Vector& x, const Vector& y, double tol = kConeTolerance);
inline bool geq(const ConeSpec& cone, const Vector& x, const Vector& y, double tol = kConeTolerance) {
  return leq(cone, y, x, tol);
}
bool lt(const ConeSpec& cone, const Vector& x, const Vector& y, double tol = kConeTolerance);
bool ll(const ConeSpec& cone, const Vector& x, const Vector& y, double tol = kConeTolerance);
inline bool comparable(const ConeSpec& cone, const Vector& x, const Vector& y) {
  return leq(cone, x, y) || leq(cone, y, x);
}

/// The order interval [lo, hi] = {z : lo <= z <= hi}.
class OrderInterval {
 public:
  /// Throws PreconditionError unless lo <= hi under cone.
  OrderInterval(const ConeSpec& cone, Vector lo, Vector hi);

  const Vector& lo() const { return lo_; }
  const Vector& hi() const { return hi_; }

 private:
  Vector lo_;
  Vector hi_;
};

bool interval_contains(const OrderInterval& interval, const ConeSpec& cone, const Vector& z);

/// Least upper bound of {x, y}. Orthant: componentwise max. Lorentz:
/// UnsupportedOperation, the cone is not minihedral.
Vector sup_pair(const ConeSpec& cone, const Vector& x, const Vector& y);
Vector inf_pair(const ConeSpec& cone, const Vector& x, const Vector& y);
/// Supremum of a finite non-empty set (orthant only).
Vector sup_set(const ConeSpec& cone, std::span<const Vector> points);
Vector inf_set(const ConeSpec& cone, std::span<const Vector> points);

/// Nearest point of the cone in the Euclidean norm.
Vector project_onto_cone(const ConeSpec& cone, const Vector& v);

/// A cone element with coordinates of order `scale`. Orthant: uniform in
/// [0, scale]^d. Lorentz: t e_last plus a perturbation of size t, projected
/// into the cone, t uniform in [0, scale].
Vector sample_cone_point(const ConeSpec& cone, Rng& rng, double scale = 1.0);

struct OrderedPair {
  Vector lower;
  Vector upper;
};

/// Pairs x <= y: x uniform in [-scale, scale]^d, y = x + d with d drawn from
/// the cone.
std::vector<OrderedPair> sample_ordered_pairs(const ConeSpec& cone, int n, Rng& rng, double scale = 1.0);
/// Pairs 0 <= x <= y: x and d both drawn from the cone, y = x + d.
std::vector<OrderedPair> sample_positive_ordered_pairs(const ConeSpec& cone, int n, Rng& rng,
                                                       double scale = 1.0);

/// Max of ||x|| / ||y|| over the pairs (pairs with y = 0 are skipped). A lower
/// bound on the normality constant gamma.
double normality_constant_estimate(const SpaceSpec& space, std::span<const OrderedPair> pairs);
double normality_constant_estimate(const ConeSpec& cone, const SpaceSpec& space, int n_samples,
                                   std::uint64_t seed);

struct NormMonotonicityReport {
  bool passed = true;
  int samples = 0;
  struct Witness {
    Vector x;
    Vector y;
    double norm_x;
    double norm_y;
  };
  std::optional<Witness> witness;  ///< first violating pair, if any
};

using NormFunction = std::function<double(const Vector&)>;

/// Checks ||x|| <= ||y|| on each supplied pair with 0 <= x <= y. Throws
/// PreconditionError if a pair is not ordered that way.
NormMonotonicityReport check_norm_monotonic(const ConeSpec& cone, const NormFunction& norm_fn,
                                            std::span<const OrderedPair> pairs);
NormMonotonicityReport is_norm_monotonic(const ConeSpec& cone, const SpaceSpec& space, int n_samples,
                                         std::uint64_t seed);

/// Sampled lattice-axiom check for sup_pair / inf_pair. Each counter is the
/// number of sampled instances where the axiom failed.
struct LatticeReport {
  int samples = 0;
  int idempotence_failures = 0;
  int commutativity_failures = 0;
  int absorption_failures = 0;
  int upper_bound_failures = 0;  ///< x <= sup(x,y), y <= sup(x,y), and dually for inf
  bool passed() const {
    return idempotence_failures == 0 && commutativity_failures == 0 && absorption_failures == 0 &&
           upper_bound_failures == 0;
  }
};

/// Throws UnsupportedOperation for non-minihedral cones.
LatticeReport check_lattice_axioms(const ConeSpec& cone, int n_samples, std::uint64_t seed);

}  // namespace ordfix
