#include <benchmark/benchmark.h>

#include "prwpv/binomial.hpp"

namespace {

using prwpv::binomial::BinomialParams;

void BM_CdfLowerTail(benchmark::State& state) {
  const auto n = state.range(0);
  const BinomialParams params(n, 0.1);
  const auto k = n / 20;
  for (auto _ : state) benchmark::DoNotOptimize(prwpv::binomial::cdf(params, k));
}
BENCHMARK(BM_CdfLowerTail)->RangeMultiplier(10)->Range(100, 1000000);

// Past the mode: complement of the short upper tail.
void BM_CdfBulk(benchmark::State& state) {
  const auto n = state.range(0);
  const BinomialParams params(n, 0.3);
  const auto k = n / 2;
  for (auto _ : state) benchmark::DoNotOptimize(prwpv::binomial::cdf(params, k));
}
BENCHMARK(BM_CdfBulk)->RangeMultiplier(10)->Range(100, 1000000);

void BM_LogPmf(benchmark::State& state) {
  const BinomialParams params(10000, 0.37);
  std::int64_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(prwpv::binomial::log_pmf(params, k));
    k = (k + 7919) % 10001;
  }
}
BENCHMARK(BM_LogPmf);

}  // namespace
