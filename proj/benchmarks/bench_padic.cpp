#include <benchmark/benchmark.h>

#include "padyn/padic.hpp"

namespace {

void BM_Mul(benchmark::State& state) {
  const padyn::Prime p(3);
  const auto N = static_cast<std::size_t>(state.range(0));
  const auto a = padyn::random_padic(1, p, N);
  const auto b = padyn::random_padic(2, p, N);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Mul)->RangeMultiplier(10)->Range(10, 100000)->Complexity();

void BM_TeichmullerFrobenius(benchmark::State& state) {
  const padyn::Prime p(5);
  const auto N = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(padyn::teichmuller_by_frobenius(2, p, N));
}
BENCHMARK(BM_TeichmullerFrobenius)->RangeMultiplier(4)->Range(16, 1024);

void BM_TeichmullerNewton(benchmark::State& state) {
  const padyn::Prime p(5);
  const auto N = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(padyn::teichmuller_by_newton(2, p, N));
}
BENCHMARK(BM_TeichmullerNewton)->RangeMultiplier(4)->Range(16, 1 << 17);

void BM_InverseUnit(benchmark::State& state) {
  const padyn::Prime p(7);
  const auto N = static_cast<std::size_t>(state.range(0));
  auto u = padyn::random_padic(3, p, N);
  u = u + padyn::from_integer(u.digit(0) == 0 ? 1 : 0, p, N);
  for (auto _ : state) benchmark::DoNotOptimize(padyn::inverse_unit(u));
}
BENCHMARK(BM_InverseUnit)->RangeMultiplier(10)->Range(10, 100000);

}  // namespace
