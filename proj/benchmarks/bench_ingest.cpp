#include <benchmark/benchmark.h>

#include "rpys/ingest.hpp"
#include "rpys/synth.hpp"

namespace {

const std::string& synthetic_wos() {
  static const std::string text = rpys::write_wos(rpys::synthesize(rpys::default_synth_spec(1)));
  return text;
}

void BM_ParseWos(benchmark::State& state) {
  const auto& text = synthetic_wos();
  for (auto _ : state) benchmark::DoNotOptimize(rpys::parse_wos(text));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParseWos)->Unit(benchmark::kMillisecond);

void BM_ParseCitedRef(benchmark::State& state) {
  const std::string raw = "de Solla Price, D.J., 1963, Little Sci. Big Sci., V1, P1, DOI 10.7312/pric91844";
  for (auto _ : state) benchmark::DoNotOptimize(rpys::parse_cited_ref(raw));
}
BENCHMARK(BM_ParseCitedRef);

}  // namespace
