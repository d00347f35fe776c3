#include <benchmark/benchmark.h>

#include "rpys/clustering.hpp"
#include "rpys/multirpys.hpp"

namespace {

void BM_WardCluster(benchmark::State& state) {
  const auto m = rpys::random_matrix(static_cast<std::size_t>(state.range(0)), rpys::YearRange::make(1900, 2015), 7);
  for (auto _ : state) benchmark::DoNotOptimize(rpys::ward_cluster(m));
}
BENCHMARK(BM_WardCluster)->Arg(7)->Arg(40)->Arg(400)->Unit(benchmark::kMicrosecond);


}  // namespace
