#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rpys/corpus.hpp"
#include "rpys/spectroscopy.hpp"

namespace rpys {

/// Segments x years grid of ranks. Row r is the rank spectrum of segment r.
struct RpysMatrix {
  std::vector<std::string> labels;
  std::optional<std::vector<YearBin>> intervals;  // time-binned analyses only
  YearRange range;
  std::vector<int> ranks;               // row-major, labels.size() x range.size()
  std::vector<std::string> dropped;     // segments left out for lack of references

  std::size_t rows() const noexcept { return labels.size(); }
  std::size_t cols() const noexcept { return range.size(); }
  int at(std::size_t row, std::size_t col) const { return ranks[row * cols() + col]; }
  std::span<const int> row(std::size_t r) const {
    return std::span<const int>(ranks).subspan(r * cols(), cols());
  }

  // Throws InvariantViolation if shapes disagree or a row is not a permutation.
  void check() const;

  friend bool operator==(const RpysMatrix&, const RpysMatrix&) = default;
};

/// Rank spectra of all segments. Segments with no in-range dated references
/// are dropped and listed in `dropped`. Rows are computed on up to `jobs`
/// threads; the result does not depend on `jobs`.
/// Throws Error{EmptyMatrix} when no row remains.
RpysMatrix multi_rpys(std::span<const Segment> segments, YearRange range,
                      DeviationMode mode = DeviationMode::Absolute, unsigned jobs = 1);

/// Every row an independent uniform permutation of 1..n drawn from Rng(seed).
RpysMatrix random_matrix(std::size_t n_segments, YearRange range, std::uint64_t seed);

enum class ClaimKind { Sticky, Transient };

std::string_view to_string(ClaimKind kind) noexcept;

struct KnowledgeClaim {
  int ref_year = 0;
  ClaimKind kind = ClaimKind::Transient;
  std::vector<std::size_t> high_bins;  // row indices
  int span_years = 0;

  friend bool operator==(const KnowledgeClaim&, const KnowledgeClaim&) = default;
};

struct StickyConfig {
  // A cell is high when 100 * (rank - 1) / n >= high_threshold_pct, i.e. the
  // default of 90 keeps the top decile of every row.
  double high_threshold_pct = 90.0;
  int min_bins = 3;
  int min_span = 10;
  // A high cell is self-referential when ref_year >= bin.start - recency_window.
  int recency_window = 7;

  void validate() const;  // throws Error{InvalidArgument}
};

bool is_high_rank(int rank, std::size_t n_years, double high_threshold_pct) noexcept;

/// Year-level sticky/transient classification over a time-binned matrix.
///
/// Sticky: at least `min_bins` high, non-self-referential cells whose bins
/// cover at least `min_span` calendar years. Transient: every high cell is
/// self-referential. Years that are neither are omitted.
/// Throws Error{MissingIntervals} for matrices without intervals.
std::vector<KnowledgeClaim> classify_claims(const RpysMatrix& matrix,
                                            const StickyConfig& config = {});

/// Number of years whose rank is high in at least `min_rows` rows.
std::size_t count_band_years(const RpysMatrix& matrix, double high_threshold_pct = 90.0,
                             std::size_t min_rows = 3);

}  // namespace rpys
