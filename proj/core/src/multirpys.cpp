#include "rpys/multirpys.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <optional>
#include <thread>

#include "rpys/rng.hpp"

namespace rpys {

void RpysMatrix::check() const {
  const std::size_t n = cols();
  if (ranks.size() != rows() * n) throw InvariantViolation("rank grid does not match matrix shape");
  if (intervals && intervals->size() != rows()) {
    throw InvariantViolation("interval count does not match row count");
  }
  std::vector<char> seen(n);
  for (std::size_t r = 0; r < rows(); ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int v : row(r)) {
      if (v < 1 || static_cast<std::size_t>(v) > n || seen[static_cast<std::size_t>(v - 1)]) {
        throw InvariantViolation("row '" + labels[r] + "' is not a permutation of 1.." +
                                 std::to_string(n));
      }
      seen[static_cast<std::size_t>(v - 1)] = 1;
    }
  }
}

RpysMatrix multi_rpys(std::span<const Segment> segments, YearRange range, DeviationMode mode,
                      unsigned jobs) {
  std::vector<std::optional<std::vector<int>>> rows(segments.size());
  auto compute = [&](std::size_t i) {
    auto counts = year_histogram(segments[i], range);
    if (std::accumulate(counts.begin(), counts.end(), std::int64_t{0}) == 0) return;
    rows[i] = spectrum_from_counts(range, std::move(counts), mode).ranks;
  };

  const std::size_t workers = std::min<std::size_t>(std::max(1u, jobs), segments.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < segments.size(); ++i) compute(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < segments.size(); i = next++) compute(i);
      });
    }
  }

  RpysMatrix m;
  m.range = range;
  const bool timed = !segments.empty() && std::all_of(segments.begin(), segments.end(),
                                                      [](const Segment& s) { return s.interval(); });
  if (timed) m.intervals.emplace();
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (!rows[i]) {
      m.dropped.push_back(segments[i].label());
      continue;
    }
    m.labels.push_back(segments[i].label());
    if (timed) m.intervals->push_back(*segments[i].interval());
    m.ranks.insert(m.ranks.end(), rows[i]->begin(), rows[i]->end());
  }
  if (m.rows() == 0) throw Error(Errc::EmptyMatrix, "no segment has references in range");
  return m;
}

RpysMatrix random_matrix(std::size_t n_segments, YearRange range, std::uint64_t seed) {
  if (n_segments == 0) throw Error(Errc::InvalidArgument, "random matrix needs at least one row");
  RpysMatrix m;
  m.range = range;
  Rng rng(seed);
  const std::size_t n = range.size();
  std::vector<int> row(n);
  const int width = static_cast<int>(std::to_string(n_segments).size());
  for (std::size_t r = 0; r < n_segments; ++r) {
    std::iota(row.begin(), row.end(), 1);
    rng.shuffle(std::span<int>(row));
    m.ranks.insert(m.ranks.end(), row.begin(), row.end());
    auto number = std::to_string(r + 1);
    m.labels.push_back("RANDOM-" + std::string(static_cast<std::size_t>(width) - number.size(), '0') +
                       number);
  }
  return m;
}

std::string_view to_string(ClaimKind kind) noexcept {
  return kind == ClaimKind::Sticky ? "sticky" : "transient";
}

void StickyConfig::validate() const {
  if (!(high_threshold_pct > 0.0 && high_threshold_pct <= 100.0)) {
    throw Error(Errc::InvalidArgument, "high threshold percentile must lie in (0, 100]");
  }
  if (min_bins < 1) throw Error(Errc::InvalidArgument, "min_bins must be >= 1");
  if (min_span < 1) throw Error(Errc::InvalidArgument, "min_span must be >= 1");
  if (recency_window < 0) throw Error(Errc::InvalidArgument, "recency_window must be >= 0");
}

bool is_high_rank(int rank, std::size_t n_years, double high_threshold_pct) noexcept {
  // Percentile of the cells strictly below this one; exact for integer inputs.
  return 100.0 * static_cast<double>(rank - 1) >=
         high_threshold_pct * static_cast<double>(n_years);
}

std::vector<KnowledgeClaim> classify_claims(const RpysMatrix& matrix, const StickyConfig& config) {
  config.validate();
  if (!matrix.intervals) {
    throw Error(Errc::MissingIntervals, "claim classification needs a time-binned matrix");
  }
  const auto& bins = *matrix.intervals;
  const std::size_t n = matrix.cols();

  auto coverage = [&](const std::vector<std::size_t>& rows) {
    int first = bins[rows.front()].start, last = bins[rows.front()].end;
    for (auto r : rows) {
      first = std::min(first, bins[r].start);
      last = std::max(last, bins[r].end);
    }
    return last - first + 1;
  };

  std::vector<KnowledgeClaim> claims;
  std::vector<std::size_t> high, evidence;
  for (std::size_t col = 0; col < n; ++col) {
    const int year = matrix.range.year_at(col);
    high.clear();
    evidence.clear();
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
      if (!is_high_rank(matrix.at(r, col), n, config.high_threshold_pct)) continue;
      high.push_back(r);
      if (year < bins[r].start - config.recency_window) evidence.push_back(r);
    }
    if (high.empty()) continue;
    if (evidence.empty()) {
      claims.push_back({year, ClaimKind::Transient, high, coverage(high)});
    } else if (evidence.size() >= static_cast<std::size_t>(config.min_bins)) {
      const int span = coverage(evidence);
      if (span >= config.min_span) claims.push_back({year, ClaimKind::Sticky, evidence, span});
    }
  }
  return claims;
}

std::size_t count_band_years(const RpysMatrix& matrix, double high_threshold_pct,
                             std::size_t min_rows) {
  std::size_t bands = 0;
  for (std::size_t col = 0; col < matrix.cols(); ++col) {
    std::size_t high = 0;
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
      if (is_high_rank(matrix.at(r, col), matrix.cols(), high_threshold_pct)) ++high;
    }
    if (high >= min_rows) ++bands;
  }
  return bands;
}

}  // namespace rpys
