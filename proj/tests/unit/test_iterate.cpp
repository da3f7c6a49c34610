#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ordfix/corpus.hpp"
#include "ordfix/error.hpp"
#include "ordfix/iterate.hpp"

using namespace ordfix;

namespace {

const ConeSpec kO2 = ConeSpec::orthant(2);
const SpaceSpec kE2(2, 2.0);

}  // namespace

TEST_CASE("iteration config validation") {
  CHECK_NOTHROW(IterationConfig{}.validate());
  CHECK_THROWS_AS((IterationConfig{0, 1e-10, 1e8, 50}.validate()), PreconditionError);
  CHECK_THROWS_AS((IterationConfig{10, 0.0, 1e8, 50}.validate()), PreconditionError);
  CHECK_THROWS_AS((IterationConfig{10, 1e-10, -1.0, 50}.validate()), PreconditionError);
  CHECK_THROWS_AS((IterationConfig{10, 1e-10, 1e8, 0}.validate()), PreconditionError);
}

TEST_CASE("Picard orbit of the affine contraction follows the geometric series") {
  const OrbitRecord r = picard_orbit(corpus::affine_contraction(), Vector::Zero(2), kO2, kE2);
  CHECK(r.verdict == OrbitVerdict::converged);
  CHECK(r.order_monotone == OrderTrend::increasing);
  for (std::size_t n = 0; n < r.points.size(); ++n) {
    const double want = 2.0 - std::pow(2.0, 1.0 - static_cast<double>(n));
    CHECK(r.points[n][0] == doctest::Approx(want).epsilon(1e-15));
    CHECK(r.points[n][1] == doctest::Approx(want).epsilon(1e-15));
  }
  CHECK(r.residuals.back() <= 1e-10);
  for (std::size_t n = 0; n + 1 < r.points.size(); ++n) {
    CHECK(r.points[n + 1] == apply(corpus::affine_contraction(), r.points[n]));
    CHECK(r.leq_up[n]);
  }
  CHECK(r.norms.size() == r.points.size());
}

TEST_CASE("Picard orbit edge cases") {
  const OrbitRecord fixed = picard_orbit(corpus::affine_contraction(), make_vector({2, 2}), kO2, kE2);
  CHECK(fixed.verdict == OrbitVerdict::converged);
  CHECK(fixed.points.size() == 1);

  const OrbitRecord cst = picard_orbit(corpus::constant(), Vector::Zero(2), kO2, kE2);
  CHECK(cst.verdict == OrbitVerdict::converged);
  CHECK(cst.points.size() == 2);
  CHECK(cst.last() == make_vector({1, 2}));

  const OrbitRecord trans = picard_orbit(corpus::translation(), Vector::Zero(2), kO2, kE2, {100000, 1e-10, 1e3, 50});
  CHECK(trans.verdict == OrbitVerdict::unbounded_suspected);
  CHECK(trans.order_monotone == OrderTrend::increasing);
  for (std::size_t n = 0; n < trans.points.size(); n += 97) {
    CHECK(trans.points[n] == static_cast<double>(n) * make_vector({1, 0.5}));
  }
  CHECK_FALSE(trans.bounded());

  const OrbitRecord capped = picard_orbit(corpus::translation(), Vector::Zero(2), kO2, kE2, {10, 1e-10, 1e8, 50});
  CHECK(capped.verdict == OrbitVerdict::max_iter_reached);
  CHECK(capped.points.size() == 10);

  CHECK_THROWS_AS(picard_orbit(corpus::affine_contraction(), make_vector({-1, 0}), kO2, kE2), DomainError);
}

TEST_CASE("Mann orbits") {
  const MappingSpec m = corpus::affine_contraction();
  const Vector x0 = make_vector({0.0, 0.3});
  const OrbitRecord picard = picard_orbit(m, x0, kO2, kE2);
  const OrbitRecord zero = mann_orbit(m, x0, constant_beta(0.0), kO2, kE2);
  REQUIRE(zero.points.size() == picard.points.size());
  for (std::size_t n = 0; n < picard.points.size(); ++n) CHECK(zero.points[n] == picard.points[n]);

  const OrbitRecord one = mann_orbit(m, x0, constant_beta(1.0), kO2, kE2, {50, 1e-10, 1e8, 50});
  for (const Vector& p : one.points) CHECK(p == x0);

  const OrbitRecord half = mann_orbit(m, Vector::Zero(2), constant_beta(0.5), kO2, kE2);
  CHECK(half.verdict == OrbitVerdict::converged);
  CHECK((half.last() - make_vector({2, 2})).norm() < 1e-9);

  const OrbitRecord harmonic = mann_orbit(m, Vector::Zero(2), parse_beta_schedule("harmonic"), kO2, kE2);
  CHECK(harmonic.verdict == OrbitVerdict::converged);

  CHECK_THROWS_AS(mann_orbit(m, x0, constant_beta(1.5), kO2, kE2), PreconditionError);
  CHECK_THROWS_AS(mann_orbit(m, x0, constant_beta(-0.1), kO2, kE2), PreconditionError);
}

TEST_CASE("beta schedules") {
  CHECK(parse_beta_schedule("0.25")(7) == 0.25);
  CHECK(parse_beta_schedule("const:0.75")(0) == 0.75);
  CHECK(parse_beta_schedule("harmonic")(0) == 0.5);
  CHECK(parse_beta_schedule("harmonic")(2) == 0.25);
  CHECK_THROWS_AS(parse_beta_schedule("fast"), ParseError);
  CHECK_THROWS_AS(parse_beta_schedule("const:"), ParseError);
}

TEST_CASE("orbit monotonicity") {
  OrbitRecord constant;
  constant.points = {make_vector({1, 1}), make_vector({1, 1}), make_vector({1, 1})};
  const MonotoneCheck c = check_orbit_monotone(constant, kO2);
  CHECK(c.increasing);
  CHECK(c.decreasing);
  CHECK(c.trend() == OrderTrend::stationary);

  OrbitRecord incomparable;
  incomparable.points = {make_vector({1, 0}), make_vector({0, 1})};
  const MonotoneCheck i = check_orbit_monotone(incomparable, kO2);
  CHECK(i.trend() == OrderTrend::neither);
  REQUIRE(i.first_violation);
  CHECK(*i.first_violation == 0);

  OrbitRecord broken;
  broken.points = {make_vector({0, 0}), make_vector({1, 1}), make_vector({2, 2}), make_vector({1.5, 3})};
  const MonotoneCheck b = check_orbit_monotone(broken, kO2);
  CHECK_FALSE(b.increasing);
  REQUIRE(b.first_violation);
  CHECK(*b.first_violation == 2);

  const OrbitRecord down = picard_orbit(corpus::negative_translation_box(), make_vector({3, 3}), kO2, kE2);
  CHECK(down.order_monotone == OrderTrend::decreasing);
  CHECK(down.last() == Vector::Zero(2));

  CHECK_THROWS_AS(check_orbit_monotone(OrbitRecord{}, kO2), PreconditionError);
}

TEST_CASE("monotone limits") {
  CHECK((monotone_limit(picard_orbit(corpus::affine_contraction(), Vector::Zero(2), kO2, kE2), kO2) -
         make_vector({2, 2})).norm() < 1e-9);
  OrbitRecord constant;
  constant.points = {make_vector({4, 1})};
  constant.verdict = OrbitVerdict::converged;
  CHECK(monotone_limit(constant, kO2) == make_vector({4, 1}));
  const OrbitRecord trans = picard_orbit(corpus::translation(), Vector::Zero(2), kO2, kE2, {100000, 1e-10, 1e3, 50});
  CHECK_THROWS_AS(monotone_limit(trans, kO2), PreconditionError);
}

TEST_CASE("orbit CSV round trip") {
  const OrbitRecord r = picard_orbit(corpus::affine_contraction(), Vector::Zero(2), kO2, kE2);
  std::stringstream buf;
  write_orbit_csv(buf, r);
  std::string header;
  std::getline(buf, header);
  CHECK(header == "n,x1,x2,residual,norm,leq_up,leq_down");
  buf.seekg(0);
  const std::vector<Vector> back = read_orbit_points(buf);
  REQUIRE(back.size() == r.points.size());
  for (std::size_t n = 0; n < back.size(); ++n) CHECK(back[n] == r.points[n]);

  std::stringstream empty;
  CHECK_THROWS_AS(read_orbit_points(empty), ParseError);
  std::stringstream bad("n,x1\n0,abc\n");
  CHECK_THROWS_AS(read_orbit_points(bad), ParseError);
  std::stringstream ragged("n,x1,x2\n0,1\n");
  CHECK_THROWS_AS(read_orbit_points(ragged), ParseError);
}
