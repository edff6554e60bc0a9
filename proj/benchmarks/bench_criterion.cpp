#include <vector>

#include <benchmark/benchmark.h>

#include "padyn/criterion.hpp"

namespace {

void BM_CriterionScan(benchmark::State& state) {
  const padyn::Prime p(13);
  const std::size_t nMax = 20;
  std::vector<padyn::PadicInt> alphas;
  for (std::uint64_t a = 0; a < 20; ++a) alphas.push_back(padyn::from_integer(a * 13, p, nMax + 1));
  for (auto _ : state) benchmark::DoNotOptimize(padyn::scan_criterion(p, 3, alphas, nMax));
}
BENCHMARK(BM_CriterionScan)->Unit(benchmark::kMillisecond);

void BM_Stickelberger(benchmark::State& state) {
  const padyn::Prime p(5);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(padyn::stickelberger_element(p, n, n + 1));
}
BENCHMARK(BM_Stickelberger)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

}  // namespace
