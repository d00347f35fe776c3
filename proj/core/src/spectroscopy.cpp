#include "rpys/spectroscopy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace rpys {

namespace {
constexpr std::size_t kHalfWindow = 2;
}

YearRange YearRange::make(int first, int last) {
  if (first > last) {
    throw Error(Errc::InvalidArgument, "year range " + std::to_string(first) + "-" +
                                           std::to_string(last) + " is empty");
  }
  return YearRange{first, last};
}

std::string_view to_string(DeviationMode mode) noexcept {
  return mode == DeviationMode::Absolute ? "absolute" : "signed";
}

DeviationMode parse_deviation_mode(std::string_view text) {
  if (text == "absolute") return DeviationMode::Absolute;
  if (text == "signed") return DeviationMode::Signed;
  throw Error(Errc::InvalidArgument, "unknown deviation mode '" + std::string(text) + "'");
}

std::vector<std::int64_t> year_histogram(const Segment& segment, YearRange range) {
  std::vector<std::int64_t> counts(range.size(), 0);
  for (const Record& record : segment.records()) {
    for (const auto& ref : record.cited_refs) {
      if (ref.year && range.contains(*ref.year)) ++counts[range.index_of(*ref.year)];
    }
  }
  return counts;
}

std::vector<double> median_deviation(std::span<const double> values, DeviationMode mode) {
  const std::size_t n = values.size();
  std::vector<double> out(n);
  std::array<double, 2 * kHalfWindow + 1> window{};
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= kHalfWindow ? i - kHalfWindow : 0;
    const std::size_t hi = std::min(n - 1, i + kHalfWindow);
    const std::size_t len = hi - lo + 1;
    std::copy(values.begin() + static_cast<std::ptrdiff_t>(lo),
              values.begin() + static_cast<std::ptrdiff_t>(hi + 1), window.begin());
    std::sort(window.begin(), window.begin() + static_cast<std::ptrdiff_t>(len));
    const double median =
        len % 2 == 1 ? window[len / 2] : (window[len / 2 - 1] + window[len / 2]) / 2.0;
    const double d = values[i] - median;
    out[i] = mode == DeviationMode::Absolute ? std::fabs(d) : d;
  }
  return out;
}

std::vector<double> median_deviation(std::span<const std::int64_t> counts, DeviationMode mode) {
  std::vector<double> values(counts.begin(), counts.end());
  return median_deviation(std::span<const double>(values), mode);
}

std::vector<int> rank_transform(std::span<const double> values) {
  if (std::any_of(values.begin(), values.end(), [](double v) { return std::isnan(v); })) {
    throw Error(Errc::InvalidArgument, "rank_transform input contains NaN");
  }
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Ascending by value; equal values put the later index first so that the
  // earlier index ends up with the larger rank.
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (values[a] != values[b]) return values[a] < values[b];
    return a > b;
  });
  std::vector<int> ranks(values.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) ranks[order[pos]] = static_cast<int>(pos + 1);
  return ranks;
}

Spectrum spectrum_from_counts(YearRange range, std::vector<std::int64_t> counts,
                              DeviationMode mode) {
  if (counts.size() != range.size()) {
    throw Error(Errc::InvalidArgument, "counts length does not match the year range");
  }
  Spectrum s;
  s.range = range;
  s.deviations = median_deviation(std::span<const std::int64_t>(counts), mode);
  s.ranks = rank_transform(s.deviations);
  s.counts = std::move(counts);
  return s;
}

Spectrum rpys(const Segment& segment, YearRange range, DeviationMode mode) {
  return spectrum_from_counts(range, year_histogram(segment, range), mode);
}

}  // namespace rpys
