#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <ranges>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rpys/error.hpp"
#include "rpys/ingest.hpp"

namespace rpys {

/// Venue name -> canonical venue name. Keys and values are normalized on
/// insertion; unmapped venues map to themselves.
class AliasMap {
public:
  AliasMap() = default;

  void add(std::string_view from, std::string_view to);
  std::string canonical(std::string_view venue) const;
  bool empty() const noexcept { return map_.empty(); }
  std::size_t size() const noexcept { return map_.size(); }

  // Two-column CSV `from,to`; a header row with exactly those names is skipped.
  static AliasMap from_csv(std::string_view text);

private:
  std::map<std::string, std::string, std::less<>> map_;
};

struct CorpusSummary {
  std::size_t input_records = 0;
  std::size_t dropped_doc_type = 0;
  std::size_t missing_doc_type = 0;
  std::size_t duplicate_ids = 0;
};

/// Immutable filtered record set. Venues are canonical after construction.
class Corpus {
public:
  using Storage = std::shared_ptr<const std::vector<Record>>;

  const std::vector<Record>& records() const noexcept { return *records_; }
  const Storage& storage() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_->size(); }
  const CorpusSummary& summary() const noexcept { return summary_; }
  const std::vector<Diagnostic>& warnings() const noexcept { return warnings_; }

private:
  friend Corpus build_corpus(std::vector<Record>, const std::optional<std::string>&,
                             const AliasMap&);
  Corpus() = default;

  Storage records_;
  CorpusSummary summary_;
  std::vector<Diagnostic> warnings_;
};

/// Keeps records whose doc_type equals `doc_type_filter` (case-insensitive)
/// when a filter is given, rewrites venues through `aliases` and drops
/// repeated ids (first occurrence wins). Throws Error{EmptyCorpus} if no
/// record survives.
Corpus build_corpus(std::vector<Record> records,
                    const std::optional<std::string>& doc_type_filter = std::nullopt,
                    const AliasMap& aliases = {});

/// Inclusive citing-year interval.
struct YearBin {
  int start = 0;
  int end = 0;
  std::string label;

  bool contains(int year) const noexcept { return start <= year && year <= end; }
  friend bool operator==(const YearBin&, const YearBin&) = default;
};

YearBin make_bin(int start, int end);  // label "start-end"

// "1978-1985,1986-1990,..." -> bins. Throws Error{InvalidBins}.
std::vector<YearBin> parse_bin_spec(std::string_view spec);

/// Throws Error{InvalidBins} for start > end and Error{OverlappingBins} for
/// unsorted or overlapping bins.
void validate_bins(std::span<const YearBin> bins);

/// A labelled sub-corpus. Shares record storage with its corpus.
class Segment {
public:
  Segment(std::string label, Corpus::Storage storage, std::vector<std::size_t> members,
          std::optional<YearBin> interval = std::nullopt);

  static Segment from_records(std::string label, std::vector<Record> records,
                              std::optional<YearBin> interval = std::nullopt);

  const std::string& label() const noexcept { return label_; }
  const std::optional<YearBin>& interval() const noexcept { return interval_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const Record& operator[](std::size_t i) const { return (*storage_)[members_[i]]; }

  auto records() const {
    return members_ | std::views::transform(
                          [store = storage_.get()](std::size_t i) -> const Record& {
                            return (*store)[i];
                          });
  }

private:
  std::string label_;
  Corpus::Storage storage_;
  std::vector<std::size_t> members_;
  std::optional<YearBin> interval_;
};

struct Segmentation {
  std::vector<Segment> segments;
  std::size_t excluded_records = 0;       // outside every bin
  std::vector<std::string> dropped_empty; // labels of bins with no records
};

/// Assigns each record to the bin containing its pub_year. Records outside
/// every bin are counted, not returned. Empty bins are dropped.
Segmentation segment_by_bins(const Corpus& corpus, std::span<const YearBin> bins);

/// One segment per canonical venue, ordered lexicographically by venue.
std::vector<Segment> segment_by_venue(const Corpus& corpus);

/// The whole corpus as a single segment.
Segment whole_corpus(const Corpus& corpus, std::string label = "all");

// Corpus cache: `{"records": [...]}` mirroring Record.
std::string records_to_json(std::span<const Record> records);
std::vector<Record> records_from_json(std::string_view text);

}  // namespace rpys
