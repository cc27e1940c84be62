#include <benchmark/benchmark.h>

#include "kcmedian/metrics.hpp"
#include "kcmedian/random.hpp"

namespace {

std::vector<kcmedian::Point> walk(kcmedian::RandomStream& rng, std::size_t n) {
  std::vector<kcmedian::Point> out;
  double x = 0.0, y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x += rng.uniform01() - 0.5;
    y += rng.uniform01() - 0.5;
    out.push_back(kcmedian::Point{x, y});
  }
  return out;
}

void BM_DiscreteFrechet(benchmark::State& state) {
  kcmedian::RandomStream rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const kcmedian::Trajectory a(walk(rng, n)), b(walk(rng, n));
  for (auto _ : state) benchmark::DoNotOptimize(kcmedian::discrete_frechet(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DiscreteFrechet)->RangeMultiplier(2)->Range(8, 512)->Complexity(benchmark::oNSquared);

void BM_Hausdorff(benchmark::State& state) {
  kcmedian::RandomStream rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const kcmedian::PointSet a(walk(rng, n)), b(walk(rng, n));
  for (auto _ : state) benchmark::DoNotOptimize(kcmedian::hausdorff(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Hausdorff)->RangeMultiplier(2)->Range(8, 512)->Complexity(benchmark::oNSquared);

}  // namespace

BENCHMARK_MAIN();
