#include "ordfix/verify.hpp"

#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "ordfix/error.hpp"

namespace ordfix {

namespace {

double sq(double v) { return v * v; }

// Shared driver: order check on (Tx, Ty) plus an optional squared-norm
// inequality computed by `sides`.
using Sides = std::function<std::pair<double, double>(const Vector& x, const Vector& y, const Vector& tx,
                                                      const Vector& ty)>;

PropertyReport run_pairs(std::string property, std::optional<double> alpha, const MappingSpec& map,
                         const ConeSpec& cone, std::span<const OrderedPair> pairs, const Sides& sides) {
  PropertyReport report{std::move(property), alpha, 0, {}};
  for (const auto& [x, y] : pairs) {
    const Vector tx = apply(map, x);
    const Vector ty = apply(map, y);
    ++report.samples_tested;
    if (!leq(cone, tx, ty)) {
      report.violations.push_back({"order", x, y, 0.0, cone_margin(cone, ty - tx)});
    }
    if (sides) {
      const auto [lhs, rhs] = sides(x, y, tx, ty);
      if (!inequality_holds(lhs, rhs)) report.violations.push_back({"norm", x, y, lhs, rhs});
    }
  }
  return report;
}

void require_alpha(double alpha) {
  if (!(alpha < 1.0)) throw PreconditionError(fmt::format("alpha must be < 1, got {}", alpha));
}

}  // namespace

PropertyReport check_monotone(const MappingSpec& map, const ConeSpec& cone, std::span<const OrderedPair> pairs) {
  return run_pairs("monotone", std::nullopt, map, cone, pairs, nullptr);
}

PropertyReport is_monotone(const MappingSpec& map, const ConeSpec& cone, const SamplerConfig& cfg) {
  const auto pairs = sample_comparable_pairs(map, cone, cfg);
  return check_monotone(map, cone, pairs);
}

PropertyReport check_monotone_nonexpansive(const MappingSpec& map, const ConeSpec& cone, const SpaceSpec& space,
                                           std::span<const OrderedPair> pairs) {
  return run_pairs("monotone_nonexpansive", std::nullopt, map, cone, pairs,
                   [&space](const Vector& x, const Vector& y, const Vector& tx, const Vector& ty) {
                     return std::pair{sq(distance(space, tx, ty)), sq(distance(space, x, y))};
                   });
}

PropertyReport is_monotone_nonexpansive(const MappingSpec& map, const ConeSpec& cone, const SpaceSpec& space,
                                        const SamplerConfig& cfg) {
  const auto pairs = sample_comparable_pairs(map, cone, cfg);
  return check_monotone_nonexpansive(map, cone, space, pairs);
}

PropertyReport check_alpha_nonexpansive(const MappingSpec& map, const ConeSpec& cone, const SpaceSpec& space,
                                        double alpha, std::span<const OrderedPair> pairs) {
  require_alpha(alpha);
  return run_pairs("monotone_alpha_nonexpansive", alpha, map, cone, pairs,
                   [&space, alpha](const Vector& x, const Vector& y, const Vector& tx, const Vector& ty) {
                     const double lhs = sq(distance(space, tx, ty));
                     const double rhs = alpha * sq(distance(space, tx, y)) + alpha * sq(distance(space, ty, x)) +
                                        (1.0 - 2.0 * alpha) * sq(distance(space, x, y));
                     return std::pair{lhs, rhs};
                   });
}

PropertyReport is_alpha_nonexpansive(const MappingSpec& map, const ConeSpec& cone, const SpaceSpec& space,
                                     double alpha, const SamplerConfig& cfg) {
  require_alpha(alpha);
  const auto pairs = sample_comparable_pairs(map, cone, cfg);
  return check_alpha_nonexpansive(map, cone, space, alpha, pairs);
}

PropertyReport is_quasi_nonexpansive(const MappingSpec& map, const ConeSpec& cone, const SpaceSpec& space,
                                     std::span<const Vector> fixed_points, const SamplerConfig& cfg) {
  if (fixed_points.empty()) throw PreconditionError("is_quasi_nonexpansive: no fixed point supplied");
  for (const Vector& p : fixed_points) {
    const double r = distance(space, apply(map, p), p);
    if (r > kFixedPointTolerance) {
      throw NotAFixedPoint(fmt::format("is_quasi_nonexpansive: {} has residual {}", to_string(p), r));
    }
  }
  PropertyReport report{"quasi_nonexpansive", std::nullopt, 0, {}};
  auto check = [&](const Vector& x, const Vector& p) {
    ++report.samples_tested;
    const double lhs = distance(space, apply(map, x), p);
    const double rhs = distance(space, x, p);
    if (!inequality_holds(lhs, rhs)) report.violations.push_back({"norm", x, p, lhs, rhs});
  };

  if (map.domain().kind == Domain::Kind::lattice) {
    const auto& table = std::get<maps::GridDefined>(map.variant()).table;
    for (const Vector& p : fixed_points) {
      for (std::size_t i = 0; i < table.size(); ++i) {
        const Vector x = table.point(i);
        if (comparable(cone, x, p)) check(x, p);
      }
    }
    return report;
  }

  Rng rng(cfg.seed);
  for (const Vector& p : fixed_points) {
    for (int s = 0; s < cfg.samples; ++s) {
      Vector step = sample_cone_point(cone, rng, cfg.scale);
      if (rng.uniform(0.0, 1.0) < 0.5) step = -step;
      int halvings = 0;
      while (!in_domain(map, p + step) && halvings < 60) {
        step *= 0.5;
        ++halvings;
      }
      const Vector x = in_domain(map, p + step) ? Vector(p + step) : p;
      check(x, p);
    }
  }
  return report;
}

Lemma22Check check_lemma22_inequality(const MappingSpec& map, const ConeSpec& cone, const SpaceSpec& space,
                                      double alpha, const Vector& x, const Vector& y) {
  require_alpha(alpha);
  if (!comparable(cone, x, y)) {
    throw PreconditionError(
        fmt::format("check_lemma22_inequality: {} and {} are not comparable", to_string(x), to_string(y)));
  }
  const Vector tx = apply(map, x);
  const Vector ty = apply(map, y);
  const double txy = distance(space, tx, ty);
  const double xy = distance(space, x, y);
  const double move = distance(space, tx, x);
  Lemma22Check out;
  out.lhs = sq(txy);
  out.rhs = sq(xy) + 2.0 * alpha / (1.0 - alpha) * sq(move) +
            2.0 * std::abs(alpha) / (1.0 - alpha) * move * (xy + txy);
  out.holds = inequality_holds(out.lhs, out.rhs);
  return out;
}

double polarized_inner_product(const SpaceSpec& space, const Vector& u, const Vector& v) {
  if (space.p() != 2.0) throw PreconditionError("polarized_inner_product: requires p = 2");
  return (sq(norm(space, u + v)) - sq(norm(space, u - v))) / 4.0;
}

std::vector<PropertyReport> classify_hilbert_variants(const MappingSpec& map, const SpaceSpec& space,
                                                      const SamplerConfig& cfg, std::optional<AbMonotoneParams> ab) {
  if (space.p() != 2.0) {
    throw PreconditionError(fmt::format("classify_hilbert_variants: requires p = 2, got p = {}", space.p()));
  }
  if (ab && !(ab->a > 0.5 && ab->b < ab->a)) {
    throw PreconditionError(fmt::format("(a, b)-monotone needs a > 1/2 and b < a, got a = {}, b = {}", ab->a, ab->b));
  }
  std::vector<PropertyReport> reports{
      {"nonspreading", std::nullopt, 0, {}},
      {"hybrid", std::nullopt, 0, {}},
      {"tj", std::nullopt, 0, {}},
  };
  if (ab) reports.push_back({fmt::format("ab_monotone(a={},b={})", ab->a, ab->b), std::nullopt, 0, {}});

  Rng rng(cfg.seed);
  for (int s = 0; s < cfg.samples; ++s) {
    const Vector x = sample_domain_point(map, rng, cfg.scale);
    const Vector y = sample_domain_point(map, rng, cfg.scale);
    const Vector tx = apply(map, x);
    const Vector ty = apply(map, y);
    const double txy2 = sq(distance(space, tx, ty));
    const double xy2 = sq(distance(space, x, y));
    const double txy_cross = sq(distance(space, tx, y));
    const double tyx_cross = sq(distance(space, ty, x));
    auto record = [&](PropertyReport& r, double lhs, double rhs) {
      ++r.samples_tested;
      if (!inequality_holds(lhs, rhs)) r.violations.push_back({"norm", x, y, lhs, rhs});
    };
    record(reports[0], 2.0 * txy2, txy_cross + tyx_cross);
    record(reports[1], txy2, xy2 + polarized_inner_product(space, x - tx, y - ty));
    record(reports[2], 2.0 * txy2, xy2 + txy_cross);
    if (ab) {
      // <x-y, Tx-Ty> >= a||Tx-Ty||^2 + (1-a)||x-y||^2 - b||x-Tx||^2 - b||y-Ty||^2,
      // recorded as lhs <= rhs with the sides swapped.
      const double rhs = polarized_inner_product(space, x - y, tx - ty);
      const double lhs = ab->a * txy2 + (1.0 - ab->a) * xy2 - ab->b * sq(distance(space, x, tx)) -
                         ab->b * sq(distance(space, y, ty));
      record(reports[3], lhs, rhs);
    }
  }
  return reports;
}

}  // namespace ordfix
