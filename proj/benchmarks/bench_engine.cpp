#include <benchmark/benchmark.h>

#include "kcmedian/engine.hpp"
#include "kcmedian/oracle.hpp"

namespace {

void BM_RunPlanted(benchmark::State& state) {
  kcmedian::oracle::PlantedSpec spec;
  spec.spines = {{{0, 0}, {1, 0}}, {{100, 0}, {101, 0}}};
  spec.per_cluster = static_cast<std::size_t>(state.range(0)) / 2;
  spec.points_per_element = 10;
  const auto inst = kcmedian::oracle::planted_trajectories(spec);
  kcmedian::ClusterParams params;
  params.k = 2;
  params.subset_budget = 4;
  params.sampling.cover_budget = 4;
  params.repetitions = 1;
  const kcmedian::TrajectorySpace space(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kcmedian::run<kcmedian::TrajectorySpace>(space, inst.elements, params).total_cost);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RunPlanted)->RangeMultiplier(2)->Range(50, 400)->Unit(benchmark::kMillisecond)->Complexity();

}  // namespace

BENCHMARK_MAIN();
