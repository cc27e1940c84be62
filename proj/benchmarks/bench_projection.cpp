#include <benchmark/benchmark.h>

#include "kcmedian/center_space.hpp"
#include "kcmedian/cover.hpp"
#include "kcmedian/random.hpp"

namespace {

std::vector<kcmedian::Point> cloud(kcmedian::RandomStream& rng, std::size_t n) {
  std::vector<kcmedian::Point> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(kcmedian::Point{rng.uniform01(), rng.uniform01()});
  return out;
}

void BM_SimplifyTrajectory(benchmark::State& state) {
  kcmedian::RandomStream rng(3);
  const kcmedian::Trajectory t(cloud(rng, static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(kcmedian::simplify_trajectory(t, 4));
}
BENCHMARK(BM_SimplifyTrajectory)->Arg(16)->Arg(32)->Arg(64);

void BM_LCenter(benchmark::State& state) {
  kcmedian::RandomStream rng(4);
  const kcmedian::PointSet s(cloud(rng, static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(kcmedian::solve_l_center(s, 2));
}
BENCHMARK(BM_LCenter)->Arg(6)->Arg(10)->Arg(14);

void BM_TrajectoryCoverSample(benchmark::State& state) {
  kcmedian::RandomStream rng(5);
  const kcmedian::TrajectoryCover cover(kcmedian::Trajectory({{0, 0}, {1, 0}}), 2, 1.0, 1.0 / 64.0);
  for (auto _ : state) benchmark::DoNotOptimize(cover.sample(rng));
}
BENCHMARK(BM_TrajectoryCoverSample);

}  // namespace

BENCHMARK_MAIN();
