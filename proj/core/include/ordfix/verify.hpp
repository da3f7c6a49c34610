#pragma once

// Sampled (or, for lattice maps, exhaustive) verifiers for the mapping
// classes. Every verifier runs over explicit point pairs; the SamplerConfig
// overloads only generate the pairs, so a fixed seed reproduces both the
// sample set and the verdict.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ordfix/mapping.hpp"
#include "ordfix/order.hpp"
#include "ordfix/space.hpp"

namespace ordfix {

struct Violation {
  std::string kind;  ///< "order" (Tx <= Ty failed) or "norm"
  Vector x;
  Vector y;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct PropertyReport {
  std::string property;
  std::optional<double> alpha;
  int samples_tested = 0;
  std::vector<Violation> violations;

  bool passed() const { return violations.empty(); }
};

PropertyReport check_monotone(const MappingSpec& map, const ConeSpec& cone, std::span<const OrderedPair> pairs);
PropertyReport is_monotone(const MappingSpec& map, const ConeSpec& cone, const SamplerConfig& cfg);

/// Monotone and ||Tx - Ty||^2 <= ||x - y||^2 on comparable pairs.
PropertyReport check_monotone_nonexpansive(const MappingSpec& map, const ConeSpec& cone, const SpaceSpec& space,
                                           std::span<const OrderedPair> pairs);
PropertyReport is_monotone_nonexpansive(const MappingSpec& map, const ConeSpec& cone, const SpaceSpec& space,
                                        const SamplerConfig& cfg);

/// Monotone and
///   ||Tx-Ty||^2 <= a||Tx-y||^2 + a||Ty-x||^2 + (1-2a)||x-y||^2
/// on comparable pairs. Throws PreconditionError for alpha >= 1.
PropertyReport check_alpha_nonexpansive(const MappingSpec& map, const ConeSpec& cone, const SpaceSpec& space,
                                        double alpha, std::span<const OrderedPair> pairs);
PropertyReport is_alpha_nonexpansive(const MappingSpec& map, const ConeSpec& cone, const SpaceSpec& space,
                                     double alpha, const SamplerConfig& cfg);

/// ||Tx - p|| <= ||x - p|| for every supplied fixed point p and sampled x
/// comparable with p. Throws PreconditionError on an empty list and
/// NotAFixedPoint when some p has ||Tp - p|| > kFixedPointTolerance.
PropertyReport is_quasi_nonexpansive(const MappingSpec& map, const ConeSpec& cone, const SpaceSpec& space,
                                     std::span<const Vector> fixed_points, const SamplerConfig& cfg);

struct Lemma22Check {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// ||Tx-Ty||^2 <= ||x-y||^2 + 2a/(1-a) ||Tx-x||^2
///                + 2|a|/(1-a) ||Tx-x|| (||x-y|| + ||Tx-Ty||)
/// for a comparable pair in either order. Throws PreconditionError for an
/// incomparable pair or alpha >= 1.
Lemma22Check check_lemma22_inequality(const MappingSpec& map, const ConeSpec& cone, const SpaceSpec& space,
                                      double alpha, const Vector& x, const Vector& y);

/// Parameters of the (a, b)-monotone class: a > 1/2, b < a.
struct AbMonotoneParams {
  double a;
  double b;
};

/// Hilbert-space classes checked on arbitrary (not necessarily comparable)
/// pairs: nonspreading, hybrid, TJ and optionally (a, b)-monotone. Inner
/// products come from the norm by polarization. Throws PreconditionError
/// unless p = 2.
std::vector<PropertyReport> classify_hilbert_variants(const MappingSpec& map, const SpaceSpec& space,
                                                      const SamplerConfig& cfg,
                                                      std::optional<AbMonotoneParams> ab = std::nullopt);

/// <u, v> = (||u+v||^2 - ||u-v||^2) / 4 in l^2.
double polarized_inner_product(const SpaceSpec& space, const Vector& u, const Vector& v);

}  // namespace ordfix
