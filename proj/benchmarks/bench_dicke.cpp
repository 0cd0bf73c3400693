#include <benchmark/benchmark.h>

#include <vector>

#include "unruh/dicke.hpp"

using namespace unruh;

static void BM_BurstMetrics(benchmark::State& state) {
  const auto block = DickeBlock::fully_excited(static_cast<int>(state.range(0)), {0.2, 0.8});
  for (auto _ : state) benchmark::DoNotOptimize(burst_metrics(block).I_max);
}
BENCHMARK(BM_BurstMetrics)->RangeMultiplier(2)->Range(8, 128)->Unit(benchmark::kMillisecond);

static void BM_BlockEvolve(benchmark::State& state) {
  const auto block = DickeBlock::fully_excited(static_cast<int>(state.range(0)), {0.2, 0.8});
  std::vector<double> times;
  for (int k = 0; k <= 100; ++k) times.push_back(0.01 * k);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_block(block, times).intensity.back());
}
BENCHMARK(BM_BlockEvolve)->RangeMultiplier(2)->Range(8, 128);

static void BM_BlockSteadyState(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(block_steady_state(n, {0.8, 0.2}).log_z);
}
BENCHMARK(BM_BlockSteadyState)->RangeMultiplier(4)->Range(4, 1024);
BENCHMARK_MAIN();
