#include <benchmark/benchmark.h>

#include "solitonlab/barrier.hpp"

namespace {

using namespace solitonlab;

kernels::TrialModel model(bool propagating) {
  const auto k = electron_constants();
  const double rest = k.m0 * k.c * k.c;
  BarrierSpec spec;
  spec.V0 = 0.25 * rest;
  spec.E = (propagating ? 0.5 : 0.1) * rest;
  spec.L = 1e-12;
  spec.seed = 20261016;
  return barrier_model(spec, k).trial_model(spec.seed);
}

void BM_serial(benchmark::State& state) {
  const auto m = model(state.range(1) != 0);
  const auto trials = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::count_trials_serial(m, trials));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_parallel(benchmark::State& state) {
  const auto m = model(state.range(1) != 0);
  const auto trials = static_cast<std::uint64_t>(state.range(0));
  const int threads = static_cast<int>(state.range(2));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::count_trials_parallel(m, trials, threads));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_serial)->ArgsProduct({{100'000, 10'000'000}, {0, 1}})->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_parallel)
    ->ArgsProduct({{100'000, 10'000'000}, {0, 1}, {1, 2, 4, 8}})
    ->UseRealTime()
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
