#include "rpys/attribution.hpp"

#include <algorithm>
#include <map>

#include "rpys/text.hpp"

namespace rpys {

std::string_view to_string(Grouping grouping) noexcept {
  return grouping == Grouping::AuthorYear ? "author-year" : "author-year-source";
}

Grouping parse_grouping(std::string_view text) {
  if (text == "author-year") return Grouping::AuthorYear;
  if (text == "author-year-source") return Grouping::AuthorYearSource;
  throw Error(Errc::InvalidArgument, "unknown grouping '" + std::string(text) + "'");
}

WorkKey work_key(const CitedRef& ref, Grouping grouping) {
  WorkKey key;
  key.first_author = ref.first_author.value_or(std::string(kUnparsedAuthor));
  key.year = ref.year.value_or(0);
  if (grouping == Grouping::AuthorYearSource) key.source = ref.source.value_or("");
  return key;
}

std::vector<AttributionRow> attribute_year(const Segment& segment, int ref_year,
                                           Grouping grouping) {
  std::map<WorkKey, std::int64_t> counts;
  std::int64_t total = 0;
  for (const Record& record : segment.records()) {
    for (const auto& ref : record.cited_refs) {
      if (ref.year != ref_year) continue;
      ++counts[work_key(ref, grouping)];
      ++total;
    }
  }
  std::vector<AttributionRow> rows;
  rows.reserve(counts.size());
  for (auto& [key, count] : counts) {
    rows.push_back({key, count, total, static_cast<double>(count) / static_cast<double>(total)});
  }
  // Map order already sorts keys ascending; stable sort keeps it within equal counts.
  std::stable_sort(rows.begin(), rows.end(),
                   [](const AttributionRow& a, const AttributionRow& b) { return a.count > b.count; });
  return rows;
}

std::string display_author(std::string_view first_author) {
  auto words = split(trim(first_author), " ");
  if (words.size() > 1) words.pop_back();  // trailing initials
  std::string out;
  for (auto w : words) {
    if (w.empty()) continue;
    if (!out.empty()) out.push_back(' ');
    auto lower = to_lower(w);
    if (lower[0] >= 'a' && lower[0] <= 'z') lower[0] = static_cast<char>(lower[0] - 'a' + 'A');
    out += lower;
  }
  return out;
}

int percent_half_up(std::int64_t count, std::int64_t total) {
  if (total <= 0) return 0;
  return static_cast<int>((200 * count + total) / (2 * total));
}

std::string render_entry(const AttributionRow& row) {
  return display_author(row.key.first_author) + ": " +
         std::to_string(percent_half_up(row.count, row.total)) + "%";
}

BandTable band_table(std::span<const Segment> segments, std::span<const int> band_years,
                     Grouping grouping, std::size_t top_k) {
  BandTable table;
  table.band_years.assign(band_years.begin(), band_years.end());
  for (const auto& s : segments) table.segment_labels.push_back(s.label());
  table.cells.resize(band_years.size());
  for (std::size_t y = 0; y < band_years.size(); ++y) {
    auto& row = table.cells[y];
    row.reserve(segments.size());
    for (const auto& s : segments) {
      auto rows = attribute_year(s, band_years[y], grouping);
      if (rows.size() > top_k) rows.resize(top_k);
      row.push_back(std::move(rows));
    }
  }
  return table;
}

}  // namespace rpys
