#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rpys/attribution.hpp"
#include "rpys/clustering.hpp"
#include "rpys/multirpys.hpp"
#include "rpys/spectroscopy.hpp"

namespace rpys {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct ColorStop {
  double at = 0.0;  // rank percentile in [0, 1]
  Rgb color;
};

struct HeatmapStyle {
  int cell_w = 6;
  int cell_h = 14;
  std::vector<ColorStop> ramp = {{0.0, {49, 54, 149}}, {0.5, {255, 255, 191}}, {1.0, {165, 0, 38}}};
  bool show_labels = true;

  // Throws Error{InvalidArgument}: ramp needs >= 2 ascending stops at 0 and 1.
  void validate() const;
  Rgb color_at(double t) const;
};

std::string hex_color(Rgb color);

/// One <rect> per cell coloured by ramp(rank / n_years). `row_order` lists row
/// indices top to bottom and must be a permutation of 0..rows-1
/// (Error{BadRowOrder} otherwise).
std::string emit_heatmap(const RpysMatrix& matrix, const HeatmapStyle& style = {},
                         std::optional<std::span<const std::size_t>> row_order = std::nullopt);

/// Right-angle dendrogram: leaves top to bottom in leaf_order, x proportional
/// to merge height, one <path class="bracket"> per merge.
std::string emit_dendrogram_svg(const Dendrogram& dendrogram);

/// Counts as bars, rank-transformed deviations as a line.
std::string emit_spectrum_svg(const Spectrum& spectrum);

// `year,count,deviation,rank`
std::string emit_spectrum_csv(const Spectrum& spectrum);

// `segment,<year>,...`
std::string emit_matrix_csv(const RpysMatrix& matrix);

/// Inverse of emit_matrix_csv. When every label looks like `YYYY-YYYY` the
/// labels are also read back as intervals. Throws Error{MalformedInput}.
RpysMatrix parse_matrix_csv(std::string_view text);

std::string emit_newick(const Dendrogram& dendrogram);
std::string emit_dendrogram_json(const Dendrogram& dendrogram);
std::string emit_claims_json(std::span<const KnowledgeClaim> claims, const RpysMatrix& matrix);

// `segment,cluster`
std::string emit_cut_csv(const Dendrogram& dendrogram, std::span<const int> labels);

// `band_year,<segment>,...`; cells are "Author: NN%" entries joined by "; ".
std::string emit_band_table_csv(const BandTable& table);

// Writes to the file, or to stdout when path is "-". Throws Error{Io}.
void write_output(const std::filesystem::path& path, std::string_view content);
std::string read_input(const std::filesystem::path& path);

}  // namespace rpys
