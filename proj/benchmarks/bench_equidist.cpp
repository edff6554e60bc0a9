#include <benchmark/benchmark.h>

#include "padyn/equidist.hpp"

namespace {

void BM_GenericityTest(benchmark::State& state) {
  const padyn::Prime p(3);
  const auto M = static_cast<std::size_t>(state.range(0));
  const auto alpha = padyn::random_padic(7, p, M + 3);
  for (auto _ : state) benchmark::DoNotOptimize(padyn::genericity_test(alpha, M, 3));
}
BENCHMARK(BM_GenericityTest)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_PartialSumSample(benchmark::State& state) {
  const padyn::Prime p(5);
  const auto M = static_cast<std::size_t>(state.range(0));
  const padyn::PartialSumSequence seq({padyn::random_padic(8, p, M), padyn::random_padic(9, p, M)}, M);
  for (auto _ : state) benchmark::DoNotOptimize(seq.sample());
}
BENCHMARK(BM_PartialSumSample)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_CharacterAverage(benchmark::State& state) {
  const padyn::Prime p(3);
  const std::size_t M = 100000;
  const auto P = padyn::ProductPoint::from_padics({padyn::random_padic(1, p, M + 2), padyn::random_padic(2, p, M + 2)});
  const padyn::CharacterIndex chi({1, -2}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(padyn::character_average(P, chi, M));
}
BENCHMARK(BM_CharacterAverage)->Unit(benchmark::kMillisecond);

}  // namespace
