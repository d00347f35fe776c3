#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "rpys/multirpys.hpp"
#include "rpys/spectroscopy.hpp"

namespace {

std::vector<std::int64_t> random_counts(std::size_t n) {
  std::mt19937_64 gen(n);
  std::vector<std::int64_t> counts(n);
  for (auto& c : counts) c = static_cast<std::int64_t>(gen() % 5000);
  return counts;
}

void BM_MedianDeviation(benchmark::State& state) {
  const auto counts = random_counts(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpys::median_deviation(counts, rpys::DeviationMode::Absolute));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MedianDeviation)->Arg(116)->Arg(1000)->Arg(100000);

void BM_RankTransform(benchmark::State& state) {
  const auto counts = random_counts(static_cast<std::size_t>(state.range(0)));
  const auto dev = rpys::median_deviation(counts, rpys::DeviationMode::Absolute);
  for (auto _ : state) benchmark::DoNotOptimize(rpys::rank_transform(dev));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RankTransform)->Arg(116)->Arg(1000)->Arg(100000);

void BM_RandomMatrix(benchmark::State& state) {
  const auto range = rpys::YearRange::make(1900, 2015);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpys::random_matrix(static_cast<std::size_t>(state.range(0)), range, 1));
  }
}
BENCHMARK(BM_RandomMatrix)->Arg(40)->Arg(400);

}  // namespace
