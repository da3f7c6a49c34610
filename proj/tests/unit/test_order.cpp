#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "ordfix/error.hpp"
#include "ordfix/order.hpp"
#include "ordfix/sampling.hpp"

using namespace ordfix;

TEST_CASE("cone construction") {
  CHECK(parse_cone_kind("orthant") == ConeKind::orthant);
  CHECK(parse_cone_kind("lorentz") == ConeKind::lorentz);
  CHECK_THROWS_AS(parse_cone_kind("ice-cream"), ParseError);
  CHECK_THROWS_AS(ConeSpec::orthant(0), PreconditionError);
  CHECK_THROWS_AS(ConeSpec::lorentz(1), PreconditionError);
  CHECK(ConeSpec::orthant(3).is_minihedral());
  CHECK_FALSE(ConeSpec::lorentz(3).is_minihedral());
}

TEST_CASE("cone membership") {
  CHECK(contains(ConeSpec::orthant(3), make_vector({1, 2, 0})));
  CHECK_FALSE(contains(ConeSpec::orthant(2), make_vector({1, -1e-3})));
  CHECK(contains(ConeSpec::orthant(2), make_vector({1, -1e-13})));
  CHECK(contains(ConeSpec::lorentz(3), make_vector({3, 4, 5})));
  CHECK_FALSE(contains(ConeSpec::lorentz(3), make_vector({3, 4, 4.99})));
  CHECK_THROWS_AS(contains(ConeSpec::orthant(2), make_vector({1, 2, 3})), DimensionMismatch);
}

TEST_CASE("order relations") {
  const ConeSpec o = ConeSpec::orthant(2);
  const Vector x = make_vector({0.5, 1.5});
  CHECK(leq(o, x, x));
  CHECK_FALSE(lt(o, x, x));
  CHECK(leq(o, make_vector({0, 0}), make_vector({1, 2})));
  CHECK(ll(o, make_vector({0, 0}), make_vector({1, 2})));
  CHECK(lt(o, make_vector({0, 0}), make_vector({0, 2})));
  CHECK_FALSE(ll(o, make_vector({0, 0}), make_vector({0, 2})));
  CHECK_FALSE(leq(o, make_vector({0, 1}), make_vector({1, 0})));
  CHECK_FALSE(geq(o, make_vector({0, 1}), make_vector({1, 0})));
  CHECK_FALSE(comparable(o, make_vector({0, 1}), make_vector({1, 0})));
}

TEST_CASE("cone axioms on sampled vectors") {
  std::mt19937_64 rng(3);
  for (ConeSpec cone : {ConeSpec::orthant(4), ConeSpec::lorentz(4)}) {
    for (int i = 0; i < 1000; ++i) {
      const Vector v = gen::uniform(rng, 4, -2, 2);
      if (contains(cone, v) && contains(cone, Vector(-v))) CHECK(v.norm() <= 1e-12);
      const Vector a = cone.kind() == ConeKind::orthant ? gen::uniform(rng, 4, 0, 3) : gen::lorentz(rng, 4, 3);
      const Vector b = cone.kind() == ConeKind::orthant ? gen::uniform(rng, 4, 0, 3) : gen::lorentz(rng, 4, 3);
      const double s = gen::scalar(rng, 0, 5);
      const double t = gen::scalar(rng, 0, 5);
      CHECK(contains(cone, a));
      CHECK(contains(cone, Vector(s * a + t * b), 1e-10));
      // transitivity of the induced order
      const Vector x = gen::uniform(rng, 4, -2, 2);
      CHECK(leq(cone, x, Vector(x + a), 1e-10));
      CHECK(leq(cone, x, Vector(x + a + b), 1e-10));
    }
  }
}

TEST_CASE("order intervals") {
  const ConeSpec o = ConeSpec::orthant(2);
  const OrderInterval iv(o, make_vector({0, 0}), make_vector({1, 1}));
  CHECK(interval_contains(iv, o, iv.lo()));
  CHECK(interval_contains(iv, o, iv.hi()));
  CHECK_FALSE(interval_contains(iv, o, make_vector({2, 0.5})));
  CHECK_THROWS_AS(OrderInterval(o, make_vector({1, 0}), make_vector({0, 1})), PreconditionError);

  std::mt19937_64 rng(8);
  const ConeSpec l = ConeSpec::lorentz(3);
  for (int i = 0; i < 300; ++i) {
    const Vector lo = gen::uniform(rng, 3, -1, 1);
    const Vector hi = lo + gen::lorentz(rng, 3, 2);
    const OrderInterval box(l, lo, hi);
    const double t = gen::scalar(rng, 0, 1);
    CHECK(interval_contains(box, l, Vector(t * lo + (1 - t) * hi)));
    // convexity of the interval on sampled member pairs
    const Vector u = lo + t * (hi - lo);
    const Vector w = lo + (1 - t) * (hi - lo);
    const double s = gen::scalar(rng, 0, 1);
    CHECK(interval_contains(box, l, Vector(s * u + (1 - s) * w)));
  }
}

TEST_CASE("orthant lattice operations") {
  const ConeSpec o = ConeSpec::orthant(2);
  CHECK(sup_pair(o, make_vector({1, 0}), make_vector({0, 1})) == make_vector({1, 1}));
  CHECK(inf_pair(o, make_vector({1, 0}), make_vector({0, 1})) == make_vector({0, 0}));
  const Vector x = make_vector({0.2, 0.3});
  const Vector y = make_vector({0.5, 0.3});
  CHECK(sup_pair(o, x, y) == y);
  CHECK(inf_pair(o, x, y) == x);
  const std::vector<Vector> pts{make_vector({1, 5}), make_vector({3, 2}), make_vector({0, 4})};
  CHECK(sup_set(o, pts) == make_vector({3, 5}));
  CHECK(inf_set(o, pts) == make_vector({0, 2}));
  CHECK_THROWS_AS(sup_set(o, std::span<const Vector>{}), PreconditionError);

  const LatticeReport rep = check_lattice_axioms(ConeSpec::orthant(4), 500, 1);
  CHECK(rep.passed());
  CHECK(rep.samples == 500);
}

TEST_CASE("Lorentz cone has incomparable minimal upper bounds") {
  const ConeSpec l = ConeSpec::lorentz(3);
  const Vector x = make_vector({1, 0, 0});
  const Vector y = make_vector({-1, 0, 0});
  const Vector u1 = make_vector({0, 0, 1});
  const Vector u2 = make_vector({0, 1, std::sqrt(2.0)});
  for (const Vector& u : {u1, u2}) {
    CHECK(leq(l, x, u));
    CHECK(leq(l, y, u));
  }
  CHECK_FALSE(comparable(l, u1, u2));
  // grid search: no other upper bound lies below either candidate
  int below = 0;
  const double h = 0.125;
  for (double a = -2; a <= 2; a += h) {
    for (double b = -2; b <= 2; b += h) {
      for (double t = 0; t <= 3; t += h) {
        const Vector v = make_vector({a, b, t});
        if (!leq(l, x, v) || !leq(l, y, v)) continue;
        for (const Vector& u : {u1, u2}) {
          if (leq(l, v, u) && (v - u).norm() > 1e-9) ++below;
        }
      }
    }
  }
  CHECK(below == 0);
  CHECK_THROWS_AS(sup_pair(l, x, y), UnsupportedOperation);
  CHECK_THROWS_AS(inf_pair(l, x, y), UnsupportedOperation);
  CHECK_THROWS_AS(check_lattice_axioms(l, 10, 1), UnsupportedOperation);
}

TEST_CASE("projection onto the cone") {
  const ConeSpec l = ConeSpec::lorentz(3);
  CHECK(project_onto_cone(l, make_vector({3, 4, 6})) == make_vector({3, 4, 6}));
  CHECK(project_onto_cone(l, make_vector({3, 4, -6})) == Vector::Zero(3));
  const Vector p = project_onto_cone(l, make_vector({3, 4, 0}));
  CHECK(p[2] == doctest::Approx(2.5));
  CHECK(contains(l, p));
  CHECK(project_onto_cone(ConeSpec::orthant(2), make_vector({-1, 2})) == make_vector({0, 2}));
}

TEST_CASE("sampled cone points and pairs") {
  Rng rng(4);
  for (ConeSpec cone : {ConeSpec::orthant(3), ConeSpec::lorentz(3)}) {
    for (const auto& [x, y] : sample_ordered_pairs(cone, 200, rng, 2.0)) CHECK(leq(cone, x, y));
    for (const auto& [x, y] : sample_positive_ordered_pairs(cone, 200, rng, 2.0)) {
      CHECK(contains(cone, x));
      CHECK(leq(cone, x, y));
    }
  }
}

TEST_CASE("normality estimates") {
  const SpaceSpec s(3, 2.0);
  const Vector x = make_vector({1, 2, 3});
  const std::vector<OrderedPair> same{{x, x}};
  CHECK(normality_constant_estimate(s, same) == doctest::Approx(1.0));
  for (double p : {1.5, 2.0, 4.0}) {
    CHECK(normality_constant_estimate(ConeSpec::orthant(3), SpaceSpec(3, p), 2000, 9) <= 1.0 + 1e-12);
  }
  CHECK(normality_constant_estimate(ConeSpec::lorentz(3), s, 2000, 9) <= 1.0 + 1e-12);
  CHECK(normality_constant_estimate(ConeSpec::orthant(3), s, 500, 42) ==
        normality_constant_estimate(ConeSpec::orthant(3), s, 500, 42));
  CHECK_THROWS_AS(normality_constant_estimate(ConeSpec::orthant(3), s, 0, 1), PreconditionError);
  CHECK_THROWS_AS(normality_constant_estimate(ConeSpec::orthant(2), s, 10, 1), DimensionMismatch);
}

TEST_CASE("monotonic norm check") {
  for (double p : {1.5, 2.0, 3.0}) {
    const NormMonotonicityReport r = is_norm_monotonic(ConeSpec::orthant(4), SpaceSpec(4, p), 1000, 2);
    CHECK(r.passed);
    CHECK(r.samples == 1000);
    CHECK_FALSE(r.witness);
  }
  CHECK(is_norm_monotonic(ConeSpec::lorentz(3), SpaceSpec(3, 2.0), 1000, 2).passed);

  const ConeSpec o = ConeSpec::orthant(2);
  const std::vector<OrderedPair> from_zero{{Vector::Zero(2), make_vector({0.3, 0.1})}};
  CHECK(check_norm_monotonic(o, [](const Vector& v) { return v.norm(); }, from_zero).passed);

  // |x1 - x2| is a seminorm that is not monotonic on the orthant
  const NormFunction bad = [](const Vector& v) { return std::abs(v[0] - v[1]); };
  const std::vector<OrderedPair> pairs{{make_vector({1, 0}), make_vector({1, 1})}};
  const NormMonotonicityReport r = check_norm_monotonic(o, bad, pairs);
  CHECK_FALSE(r.passed);
  REQUIRE(r.witness);
  CHECK(r.witness->norm_x == 1.0);
  CHECK(r.witness->norm_y == 0.0);

  const std::vector<OrderedPair> unordered{{make_vector({1, 0}), make_vector({0, 1})}};
  CHECK_THROWS_AS(check_norm_monotonic(o, bad, unordered), PreconditionError);
}
