#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "rpys/corpus.hpp"

namespace rpys {

/// Inclusive range of reference publication years.
struct YearRange {
  int first = 1900;
  int last = 2015;

  // Throws Error{InvalidArgument} when first > last.
  static YearRange make(int first, int last);

  std::size_t size() const noexcept { return static_cast<std::size_t>(last - first + 1); }
  bool contains(int year) const noexcept { return first <= year && year <= last; }
  std::size_t index_of(int year) const noexcept { return static_cast<std::size_t>(year - first); }
  int year_at(std::size_t index) const noexcept { return first + static_cast<int>(index); }

  friend bool operator==(const YearRange&, const YearRange&) = default;
};

enum class DeviationMode { Absolute, Signed };

std::string_view to_string(DeviationMode mode) noexcept;
DeviationMode parse_deviation_mode(std::string_view text);  // "absolute" | "signed"

/// Reference-year spectrum of one segment. All vectors have range.size()
/// entries; ranks is a permutation of 1..n.
struct Spectrum {
  YearRange range;
  std::vector<std::int64_t> counts;
  std::vector<double> deviations;
  std::vector<int> ranks;

  friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

/// Number of cited references per reference year. References without a year
/// or outside `range` are ignored; repeated references each count.
std::vector<std::int64_t> year_histogram(const Segment& segment, YearRange range);

/// Deviation of each value from the median of the centred five-year window
/// {i-2, ..., i+2}. The window is truncated at both ends of the series; even
/// sized windows use the mean of the two middle values.
std::vector<double> median_deviation(std::span<const double> values, DeviationMode mode);
std::vector<double> median_deviation(std::span<const std::int64_t> counts, DeviationMode mode);

/// Ordinal ranks 1..n: the largest value gets n. Among equal values the
/// earlier index gets the larger rank. Throws Error{InvalidArgument} on NaN.
std::vector<int> rank_transform(std::span<const double> values);

Spectrum spectrum_from_counts(YearRange range, std::vector<std::int64_t> counts,
                              DeviationMode mode = DeviationMode::Absolute);

Spectrum rpys(const Segment& segment, YearRange range,
              DeviationMode mode = DeviationMode::Absolute);

}  // namespace rpys
