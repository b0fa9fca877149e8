#include <benchmark/benchmark.h>

#include "prwpv/baselines.hpp"
#include "prwpv/prw.hpp"

namespace {

void BM_PrwPvalue(benchmark::State& state) {
  const prwpv::TestSpec spec(state.range(0), 0.1);
  double r = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(prwpv::prw_pvalue(r, spec));
    r = r < 0.08 ? r + 0.001 : 0.0;
  }
}
BENCHMARK(BM_PrwPvalue)->Arg(100)->Arg(10000);

void BM_CompareAll(benchmark::State& state) {
  const prwpv::TestSpec spec(100, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(prwpv::compare(0.0379, spec));
}
BENCHMARK(BM_CompareAll);

void BM_GInverse(benchmark::State& state) {
  const prwpv::GBoundContext ctx(state.range(0), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(prwpv::g_inverse(0.05, ctx));
}
BENCHMARK(BM_GInverse)->Arg(100)->Arg(1000);

}  // namespace
