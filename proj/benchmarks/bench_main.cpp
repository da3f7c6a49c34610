#include <benchmark/benchmark.h>

#include "ordfix/asymcenter.hpp"
#include "ordfix/corpus.hpp"
#include "ordfix/iterate.hpp"
#include "ordfix/space.hpp"

using namespace ordfix;

static void BM_Modulus(benchmark::State& state) {
  const SpaceSpec space(static_cast<int>(state.range(0)), 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(modulus_of_convexity(space, 1.0));
}
BENCHMARK(BM_Modulus)->Arg(2)->Arg(5)->Arg(20);

static void BM_ConvexityInequality(benchmark::State& state) {
  const SpaceSpec space(5, 1.5);
  const Vector x = Vector::LinSpaced(5, 0.1, 0.9);
  const Vector y = -x.reverse();
  for (auto _ : state) benchmark::DoNotOptimize(convexity_inequality(space, x, y, 0.3, 2.0).lhs);
}
BENCHMARK(BM_ConvexityInequality);

static void BM_PicardOrbit(benchmark::State& state) {
  const MappingSpec m = corpus::affine_5d();
  const ConeSpec cone = ConeSpec::orthant(5);
  const SpaceSpec space(5, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(picard_orbit(m, Vector::Zero(5), cone, space).points.size());
}
BENCHMARK(BM_PicardOrbit);

static void BM_AsymCenter(benchmark::State& state) {
  const ConeSpec cone = ConeSpec::orthant(2);
  const SpaceSpec space(2, 2.0);
  const OrbitRecord orbit = picard_orbit(corpus::affine_contraction(), Vector::Zero(2), cone, space);
  const AsymCenterProblem prob = asym_center_problem_from_orbit(orbit, cone, space);
  for (auto _ : state) benchmark::DoNotOptimize(solve_asym_center(prob).r);
}
BENCHMARK(BM_AsymCenter);
BENCHMARK_MAIN();
