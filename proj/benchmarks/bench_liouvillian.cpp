#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "unruh/bloch.hpp"
#include "unruh/liouvillian.hpp"

using namespace unruh;

namespace {

std::vector<double> log_grid(int n) {
  std::vector<double> t;
  for (int k = 0; k < n; ++k) t.push_back(std::pow(10.0, -3.0 + 9.0 * k / (n - 1)));
  return t;
}

}  // namespace

static void BM_BuildGenerator(benchmark::State& state) {
  const RateSet r = rates_from_gammas(0.8, 0.2, 0.99);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_lindbladian(r, n).matrix().data());
}
BENCHMARK(BM_BuildGenerator)->DenseRange(2, 6);

static void BM_Spectrum(benchmark::State& state) {
  const Superoperator sop = build_lindbladian(rates_from_gammas(0.8, 0.2, 0.99), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(sop).adr);
}
BENCHMARK(BM_Spectrum)->DenseRange(2, 4);

static void BM_DenseEvolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Superoperator sop = build_lindbladian(rates_from_gammas(0.2, 0.8, 0.999), n);
  const auto times = log_grid(200);
  const DensityMatrix rho0 = all_up_state(n);
  for (auto _ : state) {
    const DensePropagator prop(sop);
    benchmark::DoNotOptimize(prop.evolve(rho0, times).back().matrix().data());
  }
}
BENCHMARK(BM_DenseEvolve)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_Bloch(benchmark::State& state) {
  const RateSet r = rates_from_gammas(0.8, 0.2, 0.9999);
  const auto times = log_grid(200);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_bloch(r, {1.0, 1.0, 0.0, 0.0}, times).back().mz);
}
BENCHMARK(BM_Bloch);
