#include "rpys/synth.hpp"

#include <cmath>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "rpys/rng.hpp"

namespace rpys {

namespace {

constexpr std::size_t kSourcePool = 300;

// Adds `citations` copies of `ref` to random records of one bin published no
// earlier than the cited work.
void plant(std::vector<Record>& records, std::size_t first, std::size_t count, int citations,
           const WorkKey& work, const std::string& ref, Rng& rng) {
  std::vector<std::size_t> eligible;
  for (std::size_t i = first; i < first + count; ++i) {
    if (records[i].pub_year >= work.year) eligible.push_back(i);
  }
  if (eligible.empty()) return;
  const auto parsed = parse_cited_ref(ref);
  for (int c = 0; c < citations; ++c) {
    records[eligible[rng.below(eligible.size())]].cited_refs.push_back(parsed);
  }
}

}  // namespace

void SynthSpec::validate() const {
  auto fail = [](const std::string& msg) { throw Error(Errc::InvalidArgument, "synth spec: " + msg); };
  validate_bins(bins);
  if (records_per_bin.size() != bins.size()) fail("records_per_bin needs one entry per bin");
  if (venues.empty()) fail("at least one venue is required");
  if (refs_min < 0 || refs_min > refs_max) fail("need 0 <= refs_min <= refs_max");
  if (!(recency_p > 0.0 && recency_p <= 1.0)) fail("recency_p must lie in (0, 1]");
  if (author_pool == 0) fail("author_pool must be positive");
  for (const auto& c : classics) {
    if (c.citations_per_bin.size() != bins.size()) fail("classic needs one weight per bin");
    for (int w : c.citations_per_bin) {
      if (w < 0) fail("classic weights must be >= 0");
    }
  }
  for (const auto& b : bursts) {
    if (b.bin >= bins.size()) fail("burst bin index out of range");
    if (b.citations < 0) fail("burst citations must be >= 0");
  }
}

SynthSpec default_synth_spec(std::uint64_t seed) {
  SynthSpec spec;
  spec.bins = parse_bin_spec("1978-1985,1986-1990,1991-1995,1996-2000,2001-2005,2006-2010,2011-2015");
  spec.records_per_bin = {297, 329, 406, 498, 511, 845, 1347};
  spec.seed = seed;
  auto weights = [&](double fraction) {
    std::vector<int> w;
    for (auto n : spec.records_per_bin) w.push_back(static_cast<int>(std::lround(fraction * n)));
    return w;
  };
  spec.classics = {
      {{"LOTKA AJ", 1926, "J WASHINGTON ACAD SC"}, weights(0.08), 16, 317},
      {{"BRADFORD SC", 1934, "ENGINEERING"}, weights(0.06), 137, 85},
      {{"PRICE DJD", 1963, "LITTLE SCI BIG SCI"}, weights(0.10), 1, 1},
      {{"COLE JR", 1973, "SOCIAL STRATIFICATIO"}, weights(0.07), 1, 1},
  };
  spec.bursts = {{{"BURST AB", 1989, "SCIENTOMETRICS"}, 1, 100, 14, 101},
                 {{"FLASH CD", 1993, "J INFORMETR"}, 2, 100, 3, 12}};
  return spec;
}

std::string format_cited_ref(const WorkKey& work, int volume, int page) {
  std::string out = work.first_author + ", " + std::to_string(work.year);
  if (!work.source.empty()) out += ", " + work.source;
  return out + fmt::format(", V{}, P{}", volume, page);
}

std::vector<Record> synthesize(const SynthSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::vector<Record> records;
  std::vector<std::size_t> bin_first(spec.bins.size());
  std::size_t serial = 0;

  for (std::size_t b = 0; b < spec.bins.size(); ++b) {
    const auto& bin = spec.bins[b];
    bin_first[b] = records.size();
    for (std::size_t k = 0; k < spec.records_per_bin[b]; ++k) {
      Record r;
      r.id = fmt::format("SYN:{:07d}", ++serial);
      r.pub_year = static_cast<int>(rng.between(bin.start, bin.end));
      r.venue = spec.venues[rng.below(spec.venues.size())];
      r.doc_type = "Article";
      r.extra_fields = {{"PT", {"J"}},
                        {"AU", {fmt::format("WRITER{:05d} Q", rng.below(spec.author_pool))}},
                        {"TI", {fmt::format("SYNTHETIC STUDY {}", serial)}}};
      const auto n_refs = rng.between(spec.refs_min, spec.refs_max);
      r.cited_refs.reserve(static_cast<std::size_t>(n_refs));
      for (std::int64_t i = 0; i < n_refs; ++i) {
        int year = r.pub_year;
        if (r.pub_year >= spec.oldest_ref_year) {
          do {
            year = r.pub_year - static_cast<int>(rng.geometric(spec.recency_p));
          } while (year < spec.oldest_ref_year);
        }
        const WorkKey work{fmt::format("AUTHOR{:04d} X", rng.below(spec.author_pool)), year,
                           fmt::format("JOURNAL {}", rng.below(kSourcePool))};
        const int volume = static_cast<int>(rng.between(1, 80));
        const int page = static_cast<int>(rng.between(1, 900));
        r.cited_refs.push_back(parse_cited_ref(format_cited_ref(work, volume, page)));
      }
      records.push_back(std::move(r));
    }
  }

  for (const auto& classic : spec.classics) {
    const auto ref = format_cited_ref(classic.work, classic.volume, classic.page);
    for (std::size_t b = 0; b < spec.bins.size(); ++b) {
      plant(records, bin_first[b], spec.records_per_bin[b], classic.citations_per_bin[b], classic.work, ref,
            rng);
    }
  }
  for (const auto& burst : spec.bursts) {
    plant(records, bin_first[burst.bin], spec.records_per_bin[burst.bin], burst.citations, burst.work,
          format_cited_ref(burst.work, burst.volume, burst.page), rng);
  }
  return records;
}

SynthSpec synth_spec_from_json(std::string_view text) {
  using nlohmann::json;
  SynthSpec spec;
  try {
    const auto doc = json::parse(text);
    const auto& bins = doc.at("bins");
    if (bins.is_string()) {
      spec.bins = parse_bin_spec(bins.get<std::string>());
    } else {
      for (const auto& b : bins) spec.bins.push_back(make_bin(b.at(0).get<int>(), b.at(1).get<int>()));
    }
    spec.records_per_bin = doc.at("records_per_bin").get<std::vector<std::size_t>>();
    spec.venues = doc.value("venues", spec.venues);
    spec.refs_min = doc.value("refs_min", spec.refs_min);
    spec.refs_max = doc.value("refs_max", spec.refs_max);
    spec.recency_p = doc.value("recency_p", spec.recency_p);
    spec.oldest_ref_year = doc.value("oldest_ref_year", spec.oldest_ref_year);
    spec.author_pool = doc.value("author_pool", spec.author_pool);
    spec.seed = doc.value("seed", spec.seed);
    auto work = [](const json& j) {
      return WorkKey{j.at("author").get<std::string>(), j.at("year").get<int>(),
                     j.value("source", std::string{})};
    };
    for (const auto& c : doc.value("classics", json::array())) {
      spec.classics.push_back({work(c), c.at("citations_per_bin").get<std::vector<int>>(),
                               c.value("volume", 1), c.value("page", 1)});
    }
    for (const auto& b : doc.value("bursts", json::array())) {
      spec.bursts.push_back({work(b), b.at("bin").get<std::size_t>(), b.at("citations").get<int>(),
                             b.value("volume", 1), b.value("page", 1)});
    }
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedInput, std::string("synth spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

}  // namespace rpys
