#include "rpys/emit.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "rpys/csv.hpp"
#include "rpys/text.hpp"

namespace rpys {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kLabelCharWidth = 7;
constexpr int kMargin = 10;
constexpr int kAxisHeight = 28;

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default:
        // Control characters other than tab/newline are not allowed in XML 1.0.
        if (static_cast<unsigned char>(c) < 0x20 && c != '\t' && c != '\n') {
          out.push_back(' ');
        } else {
          out.push_back(c);
        }
    }
  }
  return out;
}

int label_width(const std::vector<std::string>& labels) {
  std::size_t longest = 0;
  for (const auto& l : labels) longest = std::max(longest, l.size());
  return static_cast<int>(longest) * kLabelCharWidth + kMargin;
}

std::string svg_open(int width, int height) {
  return fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"10\">\n",
      width, height);
}

std::string dump_json(const ordered_json& j) {
  return j.dump(2, ' ', false, ordered_json::error_handler_t::replace) + "\n";
}

bool needs_newick_quotes(std::string_view label) {
  return label.empty() || label.find_first_of(" \t\n()[]':;,") != std::string_view::npos;
}

std::string newick_label(std::string_view label) {
  if (!needs_newick_quotes(label)) return std::string(label);
  std::string out = "'";
  for (char c : label) {
    if (c == '\'') out.push_back('\'');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

std::optional<YearBin> bin_from_label(std::string_view label) {
  const auto dash = label.find('-');
  if (label.size() != 9 || dash != 4) return std::nullopt;
  int start = 0, end = 0;
  if (!parse_int(label.substr(0, 4), start) || !parse_int(label.substr(5), end)) return std::nullopt;
  if (start > end) return std::nullopt;
  return YearBin{start, end, std::string(label)};
}

}  // namespace

void HeatmapStyle::validate() const {
  if (cell_w <= 0 || cell_h <= 0) throw Error(Errc::InvalidArgument, "cell size must be positive");
  if (ramp.size() < 2 || ramp.front().at != 0.0 || ramp.back().at != 1.0) {
    throw Error(Errc::InvalidArgument, "colour ramp needs at least two stops spanning 0..1");
  }
  for (std::size_t i = 1; i < ramp.size(); ++i) {
    if (!(ramp[i].at >= ramp[i - 1].at)) {
      throw Error(Errc::InvalidArgument, "colour ramp stops must be ascending");
    }
  }
}

Rgb HeatmapStyle::color_at(double t) const {
  t = std::clamp(t, 0.0, 1.0);
  std::size_t hi = 1;
  while (hi + 1 < ramp.size() && ramp[hi].at < t) ++hi;
  const auto& a = ramp[hi - 1];
  const auto& b = ramp[hi];
  const double span = b.at - a.at;
  const double f = span > 0.0 ? (t - a.at) / span : 1.0;
  auto mix = [f](std::uint8_t x, std::uint8_t y) {
    return static_cast<std::uint8_t>(std::lround(x + (static_cast<double>(y) - x) * f));
  };
  return {mix(a.color.r, b.color.r), mix(a.color.g, b.color.g), mix(a.color.b, b.color.b)};
}

std::string hex_color(Rgb color) { return fmt::format("#{:02x}{:02x}{:02x}", color.r, color.g, color.b); }

std::string emit_heatmap(const RpysMatrix& matrix, const HeatmapStyle& style,
                         std::optional<std::span<const std::size_t>> row_order) {
  style.validate();
  std::vector<std::size_t> order(matrix.rows());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (row_order) {
    if (row_order->size() != matrix.rows()) throw Error(Errc::BadRowOrder, "row order has wrong length");
    std::vector<char> seen(matrix.rows(), 0);
    for (auto r : *row_order) {
      if (r >= matrix.rows() || seen[r]) {
        throw Error(Errc::BadRowOrder, "row order is not a permutation of the matrix rows");
      }
      seen[r] = 1;
    }
    order.assign(row_order->begin(), row_order->end());
  }

  const int left = style.show_labels ? label_width(matrix.labels) : kMargin;
  const int top = kMargin;
  const int cols = static_cast<int>(matrix.cols());
  const int rows = static_cast<int>(matrix.rows());
  const int width = left + cols * style.cell_w + kMargin;
  const int height = top + rows * style.cell_h + (style.show_labels ? kAxisHeight : kMargin);
  const double n = static_cast<double>(matrix.cols());

  std::string out = svg_open(width, height);
  out += "<g class=\"cells\" shape-rendering=\"crispEdges\">\n";
  for (int y = 0; y < rows; ++y) {
    const auto r = order[static_cast<std::size_t>(y)];
    for (int x = 0; x < cols; ++x) {
      const int rank = matrix.at(r, static_cast<std::size_t>(x));
      fmt::format_to(std::back_inserter(out),
                     "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n",
                     left + x * style.cell_w, top + y * style.cell_h, style.cell_w, style.cell_h,
                     hex_color(style.color_at(rank / n)));
    }
  }
  out += "</g>\n";
  if (style.show_labels) {
    out += "<g class=\"labels\">\n";
    for (int y = 0; y < rows; ++y) {
      fmt::format_to(std::back_inserter(out),
                     "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" dominant-baseline=\"middle\">{}</text>\n",
                     left - 4, top + y * style.cell_h + style.cell_h / 2,
                     xml_escape(matrix.labels[order[static_cast<std::size_t>(y)]]));
    }
    for (int x = 0; x < cols; ++x) {
      const int year = matrix.range.year_at(static_cast<std::size_t>(x));
      if (year % 10 != 0 && x != 0) continue;
      fmt::format_to(std::back_inserter(out),
                     "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                     left + x * style.cell_w + style.cell_w / 2, top + rows * style.cell_h + 16, year);
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string emit_dendrogram_svg(const Dendrogram& dendrogram) {
  dendrogram.check();
  constexpr int kRow = 16;
  constexpr int kPlotWidth = 400;
  const std::size_t n = dendrogram.leaf_count();
  const int left = label_width(dendrogram.leaves);
  const int width = left + kPlotWidth + 2 * kMargin;
  const int height = static_cast<int>(n) * kRow + 2 * kMargin;

  double max_height = 0.0;
  for (const auto& m : dendrogram.merges) max_height = std::max(max_height, m.height);
  auto x_of = [&](double h) {
    return left + 4.0 + (max_height > 0.0 ? h / max_height * kPlotWidth : 0.0);
  };

  std::vector<double> y(n + dendrogram.merges.size());
  const auto order = leaf_order(dendrogram);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    y[order[pos]] = kMargin + (static_cast<double>(pos) + 0.5) * kRow;
  }
  for (std::size_t k = 0; k < dendrogram.merges.size(); ++k) {
    const auto& m = dendrogram.merges[k];
    y[n + k] = (y[m.left] + y[m.right]) / 2.0;
  }

  std::string out = svg_open(width, height);
  out += "<g class=\"leaves\">\n";
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    fmt::format_to(std::back_inserter(out),
                   "<text x=\"{}\" y=\"{:.2f}\" text-anchor=\"end\" dominant-baseline=\"middle\">{}</text>\n",
                   left, y[order[pos]], xml_escape(dendrogram.leaves[order[pos]]));
  }
  out += "</g>\n<g class=\"brackets\" fill=\"none\" stroke=\"black\">\n";
  for (std::size_t k = 0; k < dendrogram.merges.size(); ++k) {
    const auto& m = dendrogram.merges[k];
    fmt::format_to(std::back_inserter(out),
                   "<path class=\"bracket\" data-height=\"{}\" d=\"M{:.2f} {:.2f}H{:.2f}V{:.2f}H{:.2f}\"/>\n",
                   m.height, x_of(dendrogram.node_height(m.left)), y[m.left], x_of(m.height),
                   y[m.right], x_of(dendrogram.node_height(m.right)));
  }
  out += "</g>\n</svg>\n";
  return out;
}

std::string emit_spectrum_svg(const Spectrum& spectrum) {
  constexpr int kBar = 5;
  constexpr int kPlotHeight = 200;
  const int cols = static_cast<int>(spectrum.range.size());
  const int left = 40;
  const int width = left + cols * kBar + kMargin;
  const int height = kMargin + kPlotHeight + kAxisHeight;
  const auto max_count = std::max<std::int64_t>(
      1, *std::max_element(spectrum.counts.begin(), spectrum.counts.end()));
  const double n = static_cast<double>(spectrum.range.size());
  const double base = kMargin + kPlotHeight;

  std::string out = svg_open(width, height);
  out += "<g class=\"counts\" fill=\"#9ecae1\">\n";
  for (int x = 0; x < cols; ++x) {
    const double h = static_cast<double>(spectrum.counts[static_cast<std::size_t>(x)]) /
                     static_cast<double>(max_count) * kPlotHeight;
    fmt::format_to(std::back_inserter(out),
                   "<rect x=\"{}\" y=\"{:.2f}\" width=\"{}\" height=\"{:.2f}\"/>\n", left + x * kBar,
                   base - h, kBar, h);
  }
  out += "</g>\n<polyline class=\"ranks\" fill=\"none\" stroke=\"#a50026\" points=\"";
  for (int x = 0; x < cols; ++x) {
    const double r = spectrum.ranks[static_cast<std::size_t>(x)] / n * kPlotHeight;
    fmt::format_to(std::back_inserter(out), "{}{:.2f},{:.2f}", x ? " " : "",
                   left + x * kBar + kBar / 2.0, base - r);
  }
  out += "\"/>\n<g class=\"axis\">\n";
  for (int x = 0; x < cols; ++x) {
    const int year = spectrum.range.year_at(static_cast<std::size_t>(x));
    if (year % 10 != 0 && x != 0) continue;
    fmt::format_to(std::back_inserter(out), "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                   left + x * kBar + kBar / 2, static_cast<int>(base) + 16, year);
  }
  out += "</g>\n</svg>\n";
  return out;
}

std::string emit_spectrum_csv(const Spectrum& spectrum) {
  std::string out = "year,count,deviation,rank\n";
  for (std::size_t i = 0; i < spectrum.range.size(); ++i) {
    fmt::format_to(std::back_inserter(out), "{},{},{:.6f},{}\n", spectrum.range.year_at(i),
                   spectrum.counts[i], spectrum.deviations[i], spectrum.ranks[i]);
  }
  return out;
}

std::string emit_matrix_csv(const RpysMatrix& matrix) {
  std::string out = "segment";
  for (std::size_t c = 0; c < matrix.cols(); ++c) {
    fmt::format_to(std::back_inserter(out), ",{}", matrix.range.year_at(c));
  }
  out += '\n';
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    out += csv::escape(matrix.labels[r]);
    for (int v : matrix.row(r)) fmt::format_to(std::back_inserter(out), ",{}", v);
    out += '\n';
  }
  return out;
}

RpysMatrix parse_matrix_csv(std::string_view text) {
  const auto rows = csv::read(text);
  if (rows.empty() || rows.front().fields.size() < 2 || rows.front().fields.front() != "segment") {
    throw Error(Errc::MalformedInput, "matrix CSV must start with 'segment,<years>'");
  }
  const auto& header = rows.front().fields;
  std::vector<int> years;
  for (std::size_t c = 1; c < header.size(); ++c) {
    int y = 0;
    if (!parse_int(header[c], y) || (!years.empty() && y != years.back() + 1)) {
      throw Error(Errc::MalformedInput, "matrix CSV years must be consecutive integers");
    }
    years.push_back(y);
  }
  RpysMatrix m;
  m.range = YearRange{years.front(), years.back()};
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    if (f.size() != header.size()) {
      throw Error(Errc::MalformedInput,
                  "matrix CSV line " + std::to_string(rows[r].line) + ": wrong number of columns");
    }
    m.labels.push_back(f.front());
    for (std::size_t c = 1; c < f.size(); ++c) {
      int v = 0;
      if (!parse_int(f[c], v)) {
        throw Error(Errc::MalformedInput,
                    "matrix CSV line " + std::to_string(rows[r].line) + ": rank is not an integer");
      }
      m.ranks.push_back(v);
    }
  }
  if (m.rows() == 0) throw Error(Errc::EmptyMatrix, "matrix CSV has no rows");
  try {
    m.check();
  } catch (const InvariantViolation& e) {
    throw Error(Errc::MalformedInput, std::string("matrix CSV: ") + e.what());
  }

  std::vector<YearBin> bins;
  for (const auto& label : m.labels) {
    auto bin = bin_from_label(label);
    if (!bin) return m;
    bins.push_back(std::move(*bin));
  }
  try {
    validate_bins(bins);
    m.intervals = std::move(bins);
  } catch (const Error&) {
    // Labels only look like bins.
  }
  return m;
}

std::string emit_newick(const Dendrogram& dendrogram) {
  dendrogram.check();
  const std::size_t n = dendrogram.leaf_count();
  std::string out;
  // Iterative post-order to build the string without recursion.
  struct Frame {
    std::size_t node;
    int stage;
  };
  std::vector<Frame> stack{{dendrogram.root(), 0}};
  if (n == 1) return newick_label(dendrogram.leaves.front()) + ";\n";
  while (!stack.empty()) {
    auto& frame = stack.back();
    const std::size_t node = frame.node;
    if (dendrogram.is_leaf(node)) {
      out += newick_label(dendrogram.leaves[node]);
      stack.pop_back();
    } else {
      const auto& m = dendrogram.merges[node - n];
      if (frame.stage == 0) {
        out += '(';
        frame.stage = 1;
        stack.push_back({m.left, 0});
        continue;
      }
      if (frame.stage == 1) {
        fmt::format_to(std::back_inserter(out), ":{},", m.height - dendrogram.node_height(m.left));
        frame.stage = 2;
        stack.push_back({m.right, 0});
        continue;
      }
      fmt::format_to(std::back_inserter(out), ":{})", m.height - dendrogram.node_height(m.right));
      stack.pop_back();
    }
  }
  out += ";\n";
  return out;
}

std::string emit_dendrogram_json(const Dendrogram& dendrogram) {
  dendrogram.check();
  const std::size_t n = dendrogram.leaf_count();
  std::vector<ordered_json> nodes(n + dendrogram.merges.size());
  for (std::size_t i = 0; i < n; ++i) {
    nodes[i] = ordered_json{{"label", dendrogram.leaves[i]}, {"index", i}};
  }
  for (std::size_t k = 0; k < dendrogram.merges.size(); ++k) {
    const auto& m = dendrogram.merges[k];
    nodes[n + k] = ordered_json{{"left", std::move(nodes[m.left])},
                                {"right", std::move(nodes[m.right])},
                                {"height", m.height},
                                {"size", m.size}};
  }
  ordered_json doc{{"height_units", "ward_ess_increase"},
                   {"leaves", dendrogram.leaves},
                   {"root", std::move(nodes[dendrogram.root()])}};
  return dump_json(doc);
}

std::string emit_claims_json(std::span<const KnowledgeClaim> claims, const RpysMatrix& matrix) {
  ordered_json array = ordered_json::array();
  for (const auto& c : claims) {
    ordered_json bins = ordered_json::array();
    for (auto r : c.high_bins) bins.push_back(matrix.labels.at(r));
    array.push_back(ordered_json{{"ref_year", c.ref_year},
                                 {"kind", std::string(to_string(c.kind))},
                                 {"high_bins", std::move(bins)},
                                 {"span_years", c.span_years}});
  }
  return dump_json(array);
}

std::string emit_cut_csv(const Dendrogram& dendrogram, std::span<const int> labels) {
  if (labels.size() != dendrogram.leaf_count()) {
    throw Error(Errc::InvalidArgument, "cut labels do not match the dendrogram");
  }
  std::string out = "segment,cluster\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out += csv::escape(dendrogram.leaves[i]) + "," + std::to_string(labels[i]) + "\n";
  }
  return out;
}

std::string emit_band_table_csv(const BandTable& table) {
  std::vector<std::string> header{"band_year"};
  header.insert(header.end(), table.segment_labels.begin(), table.segment_labels.end());
  std::string out = csv::join(header) + "\n";
  for (std::size_t y = 0; y < table.band_years.size(); ++y) {
    std::vector<std::string> row{std::to_string(table.band_years[y])};
    for (const auto& cell : table.cells[y]) {
      std::string joined;
      for (const auto& entry : cell) {
        if (!joined.empty()) joined += "; ";
        joined += render_entry(entry);
      }
      row.push_back(std::move(joined));
    }
    out += csv::join(row) + "\n";
  }
  return out;
}

void write_output(const std::filesystem::path& path, std::string_view content) {
  if (path == "-") {
    std::cout.write(content.data(), static_cast<std::streamsize>(content.size()));
    std::cout.flush();
    if (!std::cout) throw Error(Errc::Io, "cannot write to stdout");
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(Errc::Io, "cannot open '" + path.string() + "' for writing: " + std::strerror(errno));
  file.write(content.data(), static_cast<std::streamsize>(content.size()));
  file.close();
  if (!file) throw Error(Errc::Io, "failed writing '" + path.string() + "'");
}

std::string read_input(const std::filesystem::path& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(Errc::Io, "cannot open '" + path.string() + "': " + std::strerror(errno));
  std::ostringstream buffer;
  buffer << file.rdbuf();
  if (file.bad()) throw Error(Errc::Io, "failed reading '" + path.string() + "'");
  return std::move(buffer).str();
}

}  // namespace rpys
