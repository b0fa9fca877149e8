#include <benchmark/benchmark.h>

#include "prwpv/mc.hpp"

namespace {

using prwpv::mc::LossDistribution;

void BM_SuperUniformity(benchmark::State& state, LossDistribution dist) {
  const prwpv::TestSpec spec(state.range(0), 0.1);
  const std::int64_t reps = 10000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(prwpv::mc::simulate_superuniformity(
        dist, spec, prwpv::PValueMethod::prw, {0.01, 0.05, 0.1, 0.2}, reps, 42));
  }
  state.SetItemsProcessed(state.iterations() * reps);
}
BENCHMARK_CAPTURE(BM_SuperUniformity, bernoulli, LossDistribution::bernoulli(0.2))
    ->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SuperUniformity, beta, LossDistribution::beta(4, 16))
    ->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
