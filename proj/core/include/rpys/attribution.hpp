#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rpys/corpus.hpp"

namespace rpys {

inline constexpr std::string_view kUnparsedAuthor = "UNPARSED";

enum class Grouping { AuthorYear, AuthorYearSource };

std::string_view to_string(Grouping grouping) noexcept;
Grouping parse_grouping(std::string_view text);  // "author-year" | "author-year-source"

struct WorkKey {
  std::string first_author;
  int year = 0;
  std::string source;  // empty under author-year grouping

  friend auto operator<=>(const WorkKey&, const WorkKey&) = default;
};

WorkKey work_key(const CitedRef& ref, Grouping grouping);

struct AttributionRow {
  WorkKey key;
  std::int64_t count = 0;
  std::int64_t total = 0;  // references with this year in the segment
  double share = 0.0;      // count / total
};

/// Works cited with `ref_year` in `segment`, by count descending then key
/// ascending. Empty when the segment has no reference from that year.
std::vector<AttributionRow> attribute_year(const Segment& segment, int ref_year,
                                           Grouping grouping = Grouping::AuthorYear);

/// "LOTKA AJ" -> "Lotka", "DE SOLLA PRICE D" -> "De Solla Price".
std::string display_author(std::string_view first_author);

/// Percentage rounded half up, computed exactly from count / total.
int percent_half_up(std::int64_t count, std::int64_t total);

/// "Lotka: 85%"
std::string render_entry(const AttributionRow& row);

struct BandTable {
  std::vector<int> band_years;
  std::vector<std::string> segment_labels;
  // cells[year_index][segment_index] -> top rows, possibly empty
  std::vector<std::vector<std::vector<AttributionRow>>> cells;
};

BandTable band_table(std::span<const Segment> segments, std::span<const int> band_years,
                     Grouping grouping = Grouping::AuthorYear, std::size_t top_k = 5);

}  // namespace rpys
