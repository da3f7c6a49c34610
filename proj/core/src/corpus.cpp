#include "ordfix/corpus.hpp"

#include "ordfix/harness.hpp"

namespace ordfix::corpus {

namespace {

const ConeSpec kOrthant2 = ConeSpec::orthant(2);

}  // namespace

MappingSpec affine_contraction() {
  return MappingSpec::affine(0.5 * Matrix::Identity(2, 2), make_vector({1.0, 1.0}), Domain::of_cone(kOrthant2));
}

MappingSpec affine_5d() {
  Matrix A = Matrix::Constant(5, 5, 0.15);
  Vector b(5);
  for (int i = 0; i < 5; ++i) b(i) = (i + 1) / 5.0;
  return MappingSpec::affine(std::move(A), std::move(b), Domain::of_cone(ConeSpec::orthant(5)));
}

MappingSpec translation() {
  return MappingSpec::translation(make_vector({1.0, 0.5}), Domain::of_cone(kOrthant2));
}

MappingSpec constant() {
  return MappingSpec::affine(Matrix::Zero(2, 2), make_vector({1.0, 2.0}), Domain::of_cone(kOrthant2));
}

MappingSpec truncation() {
  return MappingSpec::truncation(make_vector({1.0, 2.0}), Domain::of_cone(kOrthant2));
}

MappingSpec alpha_step_grid() {
  GridTable table;
  table.origin = Vector::Zero(2);
  table.step = Vector::Ones(2);
  table.shape = {6, 6};
  auto g = [](double t) { return t <= 3.0 ? 0.0 : 2.0; };
  table.values.reserve(table.size());
  for (std::size_t k = 0; k < table.size(); ++k) {
    const Vector x = table.point(k);
    table.values.push_back(make_vector({g(x(0)), g(x(1))}));
  }
  return MappingSpec::grid_defined(std::move(table));
}

MappingSpec negative_translation_box() {
  const Vector lo = Vector::Zero(2);
  const Vector hi = Vector::Constant(2, 3.0);
  std::vector<MappingSpec> parts;
  parts.push_back(MappingSpec::translation(make_vector({-0.5, -0.25})));
  parts.push_back(MappingSpec::box_projection(lo, hi));
  return MappingSpec::composition(std::move(parts), Domain::box(lo, hi));
}

MappingSpec affine_negative() {
  return MappingSpec::affine(0.5 * Matrix::Identity(2, 2), make_vector({-1.0, -1.0}));
}

MappingSpec identity() {
  return MappingSpec::affine(Matrix::Identity(2, 2), Vector::Zero(2), Domain::of_cone(kOrthant2));
}

MappingSpec order_reversing_box() {
  const Vector lo = Vector::Zero(2);
  const Vector hi = Vector::Constant(2, 3.0);
  return MappingSpec::affine(-Matrix::Identity(2, 2), make_vector({3.0, 3.0}), Domain::box(lo, hi));
}

}  // namespace ordfix::corpus

namespace ordfix {

namespace {

Scenario make_scenario(std::string id, MappingSpec map, double p, X0Policy policy, std::vector<Suite> suites,
                       Expectation expected = Expectation::fixed_point_exists) {
  const int d = map.dim();
  Scenario s{.id = std::move(id),
             .space = SpaceSpec(d, p),
             .cone = ConeSpec::orthant(d),
             .map = std::move(map),
             .x0_policy = policy,
             .x0 = std::nullopt,
             .alpha = 0.0,
             .expected = expected,
             .seed = 0,
             .suites = std::move(suites)};
  return s;
}

Scenario with_x0(Scenario s, Vector x0) {
  s.x0_policy = X0Policy::explicit_point;
  s.x0 = std::move(x0);
  return s;
}

}  // namespace

std::vector<Scenario> builtin_scenarios() {
  using enum Suite;
  std::vector<Scenario> out;
  out.push_back(make_scenario("affine_contraction", corpus::affine_contraction(), 2.0, X0Policy::zero,
                              {t32, t41_44, c45_46}));
  out.push_back(with_x0(make_scenario("affine_contraction_above", corpus::affine_contraction(), 2.0,
                                      X0Policy::explicit_point, {t33, t41_44}),
                        make_vector({5.0, 5.0})));
  out.push_back(make_scenario("affine_contraction_sampled_below", corpus::affine_contraction(), 2.0,
                              X0Policy::sampled_below_Tx0, {t32, t41_44}));
  out.push_back(make_scenario("affine_contraction_sampled_above", corpus::affine_contraction(), 2.0,
                              X0Policy::sampled_above_Tx0, {t33, t41_44}));
  out.push_back(make_scenario("affine_5d_p3", corpus::affine_5d(), 3.0, X0Policy::zero, {t32, t41_44, c45_46}));
  out.push_back(make_scenario("translation", corpus::translation(), 2.0, X0Policy::zero, {t32},
                              Expectation::no_fixed_point));
  out.push_back(make_scenario("constant", corpus::constant(), 2.0, X0Policy::zero, {t32, t41_44, c45_46}));
  out.push_back(with_x0(make_scenario("truncation", corpus::truncation(), 2.0, X0Policy::explicit_point,
                                      {t32, t41_44, c45_46}),
                        make_vector({0.5, 1.0})));

  Scenario grid_low = make_scenario("alpha_step_grid_low", corpus::alpha_step_grid(), 2.0, X0Policy::zero, {t32});
  grid_low.alpha = corpus::kAlphaStepGridAlpha;
  out.push_back(grid_low);
  Scenario grid_high = with_x0(make_scenario("alpha_step_grid_high", corpus::alpha_step_grid(), 2.0,
                                             X0Policy::explicit_point, {t33, t41_44}),
                               make_vector({5.0, 4.0}));
  grid_high.alpha = corpus::kAlphaStepGridAlpha;
  out.push_back(grid_high);

  out.push_back(with_x0(make_scenario("negative_translation_box", corpus::negative_translation_box(), 2.0,
                                      X0Policy::explicit_point, {t33, t41_44}),
                        make_vector({3.0, 3.0})));
  out.push_back(make_scenario("affine_negative", corpus::affine_negative(), 2.0, X0Policy::zero, {t33, t41_44}));

  std::uint64_t seed = 1;
  for (auto& s : out) s.seed = seed++;
  return out;
}

}  // namespace ordfix
