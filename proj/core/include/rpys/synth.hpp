#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rpys/attribution.hpp"
#include "rpys/corpus.hpp"
#include "rpys/ingest.hpp"

namespace rpys {

/// A work cited a fixed number of times in every citing bin.
struct PlantedClassic {
  WorkKey work;
  std::vector<int> citations_per_bin;  // one entry per bin
  int volume = 1;
  int page = 1;
};

/// A work cited only by records of a single bin.
struct PlantedBurst {
  WorkKey work;
  std::size_t bin = 0;
  int citations = 0;
  int volume = 1;
  int page = 1;
};

/// Recipe for a synthetic citing corpus.
///
/// Each bin gets `records_per_bin[i]` records with citing years uniform over
/// the bin and venues uniform over `venues`. Each record cites a uniform
/// number of background references in [refs_min, refs_max] whose age is
/// geometric with parameter `recency_p` (larger = stronger preference for
/// recent work). Planted citations are added on top, to random records.
struct SynthSpec {
  std::vector<YearBin> bins;
  std::vector<std::size_t> records_per_bin;
  std::vector<std::string> venues{"SCIENTOMETRICS"};
  int refs_min = 10;
  int refs_max = 20;
  double recency_p = 0.12;
  int oldest_ref_year = 1900;
  std::size_t author_pool = 4000;
  std::vector<PlantedClassic> classics;
  std::vector<PlantedBurst> bursts;
  std::uint64_t seed = 1;

  void validate() const;  // throws Error{InvalidArgument}
};

/// Seven citing bins 1978-1985 ... 2011-2015 sized 297 ... 1347 records, with
/// Lotka 1926, Bradford 1934, Price 1963 and Cole 1973 planted as classics,
/// plus single-bin bursts of a 1989 work (1986-1990) and a 1993 work
/// (1991-1995).
SynthSpec default_synth_spec(std::uint64_t seed = 1);

SynthSpec synth_spec_from_json(std::string_view text);

std::string format_cited_ref(const WorkKey& work, int volume, int page);

std::vector<Record> synthesize(const SynthSpec& spec);

}  // namespace rpys
