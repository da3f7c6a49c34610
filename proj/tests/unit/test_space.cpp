#include <doctest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "ordfix/error.hpp"
#include "ordfix/space.hpp"

using namespace ordfix;

namespace {

double euclid_delta(double eps) { return 1.0 - std::sqrt(1.0 - eps * eps / 4.0); }

// Exact modulus of l^p for p >= 2: 1 - (1 - (eps/2)^p)^(1/p).
double hanner_delta_large_p(double p, double eps) { return 1.0 - std::pow(1.0 - std::pow(eps / 2.0, p), 1.0 / p); }

// Exact modulus of l^p for 1 < p < 2: the root delta of
// (1 - delta + eps/2)^p + |1 - delta - eps/2|^p = 2.
double hanner_delta_small_p(double p, double eps) {
  auto g = [&](double d) { return std::pow(1.0 - d + eps / 2.0, p) + std::pow(std::abs(1.0 - d - eps / 2.0), p) - 2.0; };
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double lp(double p, double a, double b) { return std::pow(std::pow(std::abs(a), p) + std::pow(std::abs(b), p), 1.0 / p); }

// Brute force over pairs of grid points on the l^p unit circle with
// ||x - y|| >= eps. Every pair is feasible, so the result bounds delta from
// above; it converges to delta as the grid is refined.
double grid_delta(double p, double eps, int n) {
  std::vector<double> xs(n), ys(n);
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n;
    const double s = lp(p, std::cos(t), std::sin(t));
    xs[i] = std::cos(t) / s;
    ys[i] = std::sin(t) / s;
  }
  double best = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (lp(p, xs[i] - xs[j], ys[i] - ys[j]) < eps) continue;
      best = std::min(best, 1.0 - lp(p, xs[i] + xs[j], ys[i] + ys[j]) / 2.0);
    }
  }
  return best;
}

}  // namespace

TEST_CASE("space spec validates dimension and exponent") {
  CHECK_NOTHROW(SpaceSpec(3, 1.5));
  CHECK_THROWS_AS(SpaceSpec(0, 2.0), PreconditionError);
  CHECK_THROWS_AS(SpaceSpec(2, 1.0), PreconditionError);
  CHECK_THROWS_AS(SpaceSpec(2, 0.5), PreconditionError);
  CHECK_THROWS_AS(SpaceSpec(2, std::numeric_limits<double>::infinity()), PreconditionError);
  CHECK_THROWS_AS(SpaceSpec(2, std::nan("")), PreconditionError);
}

TEST_CASE("norm values") {
  CHECK(norm(SpaceSpec(2, 2.0), make_vector({3.0, 4.0})) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(norm(SpaceSpec(4, 1.7), Vector::Zero(4)) == 0.0);
  // frozen value of 3^(1/3)
  CHECK(norm(SpaceSpec(3, 3.0), make_vector({1.0, 1.0, 1.0})) == doctest::Approx(1.4422495703074083).epsilon(1e-15));
  CHECK(distance(SpaceSpec(2, 2.0), make_vector({1.0, 1.0}), make_vector({4.0, 5.0})) == doctest::Approx(5.0));
  CHECK_THROWS_AS(norm(SpaceSpec(2, 2.0), make_vector({1.0, 2.0, 3.0})), DimensionMismatch);
}

TEST_CASE("norm survives extreme magnitudes") {
  const SpaceSpec s(2, 3.0);
  CHECK(norm(s, make_vector({1e300, 1e300})) == doctest::Approx(std::cbrt(2.0) * 1e300));
  CHECK(norm(s, make_vector({1e-300, 1e-300})) == doctest::Approx(std::cbrt(2.0) * 1e-300));
}

TEST_CASE("norm axioms on random vectors") {
  std::mt19937_64 rng(11);
  for (double p : {1.2, 2.0, 3.5}) {
    for (int trial = 0; trial < 500; ++trial) {
      const int d = gen::integer(rng, 1, 6);
      const SpaceSpec s(d, p);
      const Vector x = gen::uniform(rng, d, -5, 5);
      const Vector y = gen::uniform(rng, d, -5, 5);
      const double c = gen::scalar(rng, -3, 3);
      CHECK(norm(s, x + y) <= norm(s, x) + norm(s, y) + 1e-12);
      CHECK(norm(s, c * x) == doctest::Approx(std::abs(c) * norm(s, x)).epsilon(1e-12));
      CHECK(norm(s, x) >= x.cwiseAbs().maxCoeff() - 1e-12);
    }
  }
}

TEST_CASE("modulus of convexity in the Euclidean plane") {
  const SpaceSpec s(2, 2.0);
  CHECK(modulus_of_convexity(s, 0.0) == 0.0);
  CHECK(modulus_of_convexity(s, 1.0) == doctest::Approx(0.1339745962155614).epsilon(1e-9));
  CHECK(modulus_of_convexity(s, 2.0) == doctest::Approx(1.0).epsilon(1e-7));
  for (double eps : {0.1, 0.5, 1.0, 1.5, 1.9, 2.0}) {
    CHECK(std::abs(modulus_of_convexity(s, eps) - euclid_delta(eps)) <= 1e-7);
  }
}

TEST_CASE("closed form agrees with the brute-force grid oracle") {
  for (double eps : {0.5, 1.0, 1.5, 2.0}) {
    const double g = grid_delta(2.0, eps, 720);
    CHECK(g >= euclid_delta(eps) - 1e-12);
    CHECK(g - euclid_delta(eps) <= 1e-2);
  }
}

TEST_CASE("modulus matches the exact l^p formulas") {
  for (double p : {2.5, 3.0, 4.0}) {
    for (double eps : {0.3, 0.8, 1.2, 1.7}) {
      CHECK(std::abs(modulus_of_convexity(SpaceSpec(2, p), eps) - hanner_delta_large_p(p, eps)) <= 1e-7);
    }
  }
  for (double p : {1.25, 1.5, 1.8}) {
    for (double eps : {0.3, 0.8, 1.2, 1.7}) {
      CHECK(std::abs(modulus_of_convexity(SpaceSpec(2, p), eps) - hanner_delta_small_p(p, eps)) <= 1e-7);
    }
  }
}

TEST_CASE("modulus never exceeds the grid oracle") {
  for (double p : {1.5, 3.0}) {
    for (double eps : {0.5, 1.0, 1.5}) {
      const double solved = modulus_of_convexity(SpaceSpec(2, p), eps);
      const double g = grid_delta(p, eps, 400);
      CHECK(solved <= g + 1e-9);
      CHECK(g - solved <= 2e-2);
    }
  }
}

TEST_CASE("modulus does not depend on the ambient dimension") {
  for (double p : {1.5, 3.0}) {
    const double d2 = modulus_of_convexity(SpaceSpec(2, p), 1.0);
    CHECK(modulus_of_convexity(SpaceSpec(7, p), 1.0) == doctest::Approx(d2).epsilon(1e-12));
  }
}

TEST_CASE("modulus on the line") {
  CHECK(modulus_of_convexity(SpaceSpec(1, 3.0), 1.0) == doctest::Approx(0.5));
  CHECK(modulus_of_convexity(SpaceSpec(1, 1.5), 2.0) == doctest::Approx(1.0));
}

TEST_CASE("modulus rejects eps outside [0, 2]") {
  const SpaceSpec s(2, 2.0);
  CHECK_THROWS_AS(modulus_of_convexity(s, -0.1), PreconditionError);
  CHECK_THROWS_AS(modulus_of_convexity(s, 2.01), PreconditionError);
  CHECK_THROWS_AS(modulus_of_convexity(s, std::nan("")), PreconditionError);
}

TEST_CASE("convexity profile invariants") {
  for (double p : {1.5, 2.0, 3.0}) {
    const SpaceSpec s(3, p);
    const ConvexityProfile prof = convexity_profile(s, {.grid_points = 41, .solver = {}});
    REQUIRE(prof.epsilons.size() == 41);
    REQUIRE(prof.deltas.size() == 41);
    CHECK(prof.epsilons.front() == 0.0);
    CHECK(prof.epsilons.back() == 2.0);
    for (std::size_t i = 0; i < prof.deltas.size(); ++i) {
      CHECK(prof.deltas[i] >= 0.0);
      CHECK(prof.deltas[i] <= 1.0);
      if (i > 0) CHECK(prof.deltas[i] >= prof.deltas[i - 1] - 1e-12);
    }
    CHECK(prof.eps0 <= 2.0 / 40 + 1e-12);
    CHECK(prof.zero_tolerance == doctest::Approx(10 * modulus_noise_floor()));
  }
}

TEST_CASE("characteristic of convexity") {
  CHECK(characteristic_of_convexity(SpaceSpec(2, 2.0)) <= 0.01 + 1e-12);
  CHECK(characteristic_of_convexity(SpaceSpec(2, 1.5)) <= 0.01 + 1e-12);
  CHECK_THROWS_AS(characteristic_of_convexity(SpaceSpec(2, 2.0), {.grid_points = 1, .solver = {}}), PreconditionError);
  CHECK_THROWS_AS(characteristic_of_convexity(SpaceSpec(2, 2.0), {.grid_points = 0, .solver = {}}), PreconditionError);
}

TEST_CASE("convexity inequality examples") {
  const SpaceSpec s(2, 2.0);
  const Vector x = make_vector({0.3, -0.4});
  CHECK(check_convexity_inequality(s, x, x, 0.3, norm(s, x)));

  const ConvexityInequality r = convexity_inequality(s, make_vector({1, 0}), make_vector({0, 1}), 0.5, 1.0);
  CHECK(r.lhs == doctest::Approx(std::sqrt(2.0) / 2.0));
  CHECK(r.delta == doctest::Approx(euclid_delta(std::sqrt(2.0))).epsilon(1e-9));
  CHECK(r.rhs == doctest::Approx(1.0 - euclid_delta(std::sqrt(2.0))).epsilon(1e-9));
  CHECK(r.holds);
  // orthogonal unit vectors attain the bound in a Hilbert space
  CHECK(std::abs(r.rhs - r.lhs) < 1e-9);
}

TEST_CASE("convexity inequality preconditions") {
  const SpaceSpec s(2, 2.0);
  const Vector x = make_vector({1, 0});
  CHECK_THROWS_AS(convexity_inequality(s, x, x, 0.5, 0.0), PreconditionError);
  CHECK_THROWS_AS(convexity_inequality(s, x, x, 1.5, 1.0), PreconditionError);
  CHECK_THROWS_AS(convexity_inequality(s, make_vector({2, 0}), x, 0.5, 1.0), PreconditionError);
  CHECK_THROWS_AS(convexity_inequality(s, x, make_vector({0, 2}), 0.5, 1.0), PreconditionError);
}

TEST_CASE("convexity inequality on random admissible tuples") {
  std::mt19937_64 rng(5);
  for (double p : {1.5, 3.0}) {
    const SpaceSpec s(3, p);
    for (int trial = 0; trial < 300; ++trial) {
      const double r = gen::scalar(rng, 0.1, 10.0);
      Vector x = gen::uniform(rng, 3, -1, 1);
      Vector y = gen::uniform(rng, 3, -1, 1);
      x *= r * gen::scalar(rng, 0, 1) / std::max(norm(s, x), 1e-12);
      y *= r * gen::scalar(rng, 0, 1) / std::max(norm(s, y), 1e-12);
      CHECK(check_convexity_inequality(s, x, y, gen::scalar(rng, 0, 1), r));
    }
  }
}
