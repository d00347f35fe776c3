#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rpys/attribution.hpp"
#include "rpys/clustering.hpp"
#include "rpys/corpus.hpp"
#include "rpys/emit.hpp"
#include "rpys/ingest.hpp"
#include "rpys/multirpys.hpp"
#include "rpys/spectroscopy.hpp"
#include "rpys/synth.hpp"

namespace rpys::cli {

namespace {

namespace fs = std::filesystem;

struct InputOptions {
  std::vector<std::string> paths;
  std::string format = "auto";
  std::string doc_type;
  std::string aliases;
};

struct RangeOptions {
  int from = 1900;
  int to = 2015;
  std::string deviation = "absolute";

  YearRange range() const { return YearRange::make(from, to); }
  DeviationMode mode() const { return parse_deviation_mode(deviation); }
};

enum class Strategy { None, Bins, Venue, Random };

// Everything one invocation needs, filled in by CLI11 and then validated.
struct RunConfig {
  InputOptions input;
  RangeOptions range;
  std::string bins;
  std::string segment_by;
  bool random = false;
  std::size_t segments = 40;
  std::uint64_t seed = 42;
  StickyConfig sticky;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  std::string out;
  std::string svg;
  std::string heatmap;
  std::string claims;

  std::string matrix;
  std::string json;
  std::string newick;
  std::size_t cut = 0;
  std::string cut_out;

  std::vector<int> years;
  std::string grouping = "author-year";
  std::size_t top_k = 5;

  std::string spec;
  std::optional<std::uint64_t> synth_seed;
  std::string synth_format = "wos";

  Strategy strategy() const {
    const int chosen = (!bins.empty()) + (!segment_by.empty()) + (random ? 1 : 0);
    if (chosen > 1) throw CLI::ValidationError("choose one of --bins, --segment-by, --random");
    if (!bins.empty()) return Strategy::Bins;
    if (!segment_by.empty()) return Strategy::Venue;
    if (random) return Strategy::Random;
    return Strategy::None;
  }
};

class Reporter {
public:
  explicit Reporter(std::ostream& err) : err_(err) {}

  void warnings(const std::string& source, const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags) {
      err_ << "warning: " << source << ": " << to_string(d.kind) << ": " << d.message << '\n';
    }
  }
  void note(const std::string& message) { err_ << message << '\n'; }

private:
  std::ostream& err_;
};

std::string detect_format(const std::string& path, const std::string& requested) {
  if (requested != "auto") return requested;
  const auto ext = fs::path(path).extension().string();
  if (ext == ".csv") return "csv";
  if (ext == ".json") return "json";
  return "wos";
}

std::vector<Record> load_records(const InputOptions& in, Reporter& report) {
  if (in.paths.empty()) throw CLI::ValidationError("--in", "at least one input file is required");
  std::vector<Record> all;
  for (std::size_t i = 0; i < in.paths.size(); ++i) {
    const auto& path = in.paths[i];
    const auto text = read_input(path);
    const auto format = detect_format(path, in.format);
    std::vector<Record> records;
    if (format == "json") {
      records = records_from_json(text);
    } else {
      const std::string prefix = in.paths.size() > 1 ? "F" + std::to_string(i + 1) + ":" : "";
      auto parsed = format == "csv" ? parse_csv(text) : parse_wos(text, prefix);
      report.warnings(path, parsed.warnings);
      records = std::move(parsed.records);
    }
    std::move(records.begin(), records.end(), std::back_inserter(all));
  }
  return all;
}

Corpus load_corpus(const InputOptions& in, Reporter& report) {
  auto records = load_records(in, report);
  AliasMap aliases;
  if (!in.aliases.empty()) aliases = AliasMap::from_csv(read_input(in.aliases));
  std::optional<std::string> filter;
  if (!in.doc_type.empty()) filter = in.doc_type;
  auto corpus = build_corpus(std::move(records), filter, aliases);
  report.warnings("corpus", corpus.warnings());
  const auto& s = corpus.summary();
  if (s.dropped_doc_type > 0) {
    report.note("corpus: " + std::to_string(s.dropped_doc_type) + " record(s) removed by the document-type filter");
  }
  return corpus;
}

std::vector<Segment> segments_for(const Corpus& corpus, const RunConfig& cfg, Strategy strategy,
                                  Reporter& report) {
  if (strategy == Strategy::Venue) return segment_by_venue(corpus);
  if (strategy == Strategy::Bins) {
    auto seg = segment_by_bins(corpus, parse_bin_spec(cfg.bins));
    if (seg.excluded_records > 0) {
      report.note("segments: " + std::to_string(seg.excluded_records) + " record(s) outside all bins excluded");
    }
    for (const auto& label : seg.dropped_empty) {
      report.warnings("segments", {{DiagnosticKind::EmptySegment, 0, "bin '" + label + "' has no records; dropped"}});
    }
    return std::move(seg.segments);
  }
  return {whole_corpus(corpus)};
}

void require_output(const std::string& value, const char* flag) {
  if (value.empty()) throw CLI::ValidationError(flag, "an output path is required");
}

void add_input_options(CLI::App* cmd, RunConfig& cfg, bool required) {
  auto* in = cmd->add_option("--in", cfg.input.paths, "Input file(s): WoS export, CSV or corpus cache JSON");
  if (required) in->required();
  cmd->add_option("--format", cfg.input.format, "Input format")
      ->check(CLI::IsMember({"auto", "wos", "csv", "json"}));
  cmd->add_option("--doc-type", cfg.input.doc_type, "Keep only records of this document type (e.g. Article)");
  cmd->add_option("--aliases", cfg.input.aliases, "Venue alias map CSV (from,to)");
}

void add_range_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--from", cfg.range.from, "First reference year")->capture_default_str();
  cmd->add_option("--to", cfg.range.to, "Last reference year")->capture_default_str();
  cmd->add_option("--deviation", cfg.range.deviation, "Median deviation mode")
      ->check(CLI::IsMember({"absolute", "signed"}))
      ->capture_default_str();
}

void add_segmentation_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--bins", cfg.bins, "Citing-year bins, e.g. 1978-1985,1986-1990")
      ->check([](const std::string& spec) {
        try {
          parse_bin_spec(spec);
        } catch (const Error& e) {
          return std::string(e.what());
        }
        return std::string{};
      });
  cmd->add_option("--segment-by", cfg.segment_by, "Segment by venue")->check(CLI::IsMember({"venue"}));
}

// --- commands ---------------------------------------------------------------

int cmd_parse(const RunConfig& cfg, Reporter& report) {
  require_output(cfg.out, "--out");
  const auto corpus = load_corpus(cfg.input, report);
  std::size_t refs = 0;
  for (const auto& r : corpus.records()) refs += r.cited_refs.size();
  write_output(cfg.out, records_to_json(corpus.records()));
  report.note("parsed " + std::to_string(corpus.size()) + " record(s), " + std::to_string(refs) +
              " cited reference(s)");
  return kSuccess;
}

int cmd_spectrum(const RunConfig& cfg, Reporter& report) {
  require_output(cfg.out, "--out");
  const auto range = cfg.range.range();
  const auto corpus = load_corpus(cfg.input, report);
  const auto spectrum = rpys(whole_corpus(corpus), range, cfg.range.mode());
  write_output(cfg.out, emit_spectrum_csv(spectrum));
  if (!cfg.svg.empty()) write_output(cfg.svg, emit_spectrum_svg(spectrum));
  return kSuccess;
}

int cmd_multi(const RunConfig& cfg, Reporter& report) {
  require_output(cfg.out, "--out");
  const auto range = cfg.range.range();
  const auto strategy = cfg.strategy();
  if (!cfg.claims.empty() && strategy != Strategy::Bins) {
    throw CLI::ValidationError("--claims", "claim classification needs --bins");
  }
  cfg.sticky.validate();

  RpysMatrix matrix;
  if (strategy == Strategy::Random) {
    matrix = random_matrix(cfg.segments, range, cfg.seed);
  } else {
    if (strategy == Strategy::None) {
      throw CLI::ValidationError("choose one of --bins, --segment-by venue, --random");
    }
    const auto corpus = load_corpus(cfg.input, report);
    const auto segments = segments_for(corpus, cfg, strategy, report);
    matrix = multi_rpys(segments, range, cfg.range.mode(), cfg.jobs);
    for (const auto& label : matrix.dropped) {
      report.warnings("multi", {{DiagnosticKind::EmptySegment, 0,
                                 "segment '" + label + "' has no references in range; row dropped"}});
    }
  }
  matrix.check();
  write_output(cfg.out, emit_matrix_csv(matrix));
  if (!cfg.heatmap.empty()) write_output(cfg.heatmap, emit_heatmap(matrix));
  if (!cfg.claims.empty()) {
    const auto claims = classify_claims(matrix, cfg.sticky);
    write_output(cfg.claims, emit_claims_json(claims, matrix));
  }
  return kSuccess;
}

int cmd_cluster(const RunConfig& cfg, Reporter&) {
  if (cfg.json.empty() && cfg.newick.empty() && cfg.svg.empty() && cfg.cut == 0 && cfg.heatmap.empty()) {
    throw CLI::ValidationError("cluster needs at least one of --json, --newick, --svg, --cut, --heatmap");
  }
  if (!cfg.cut_out.empty() && cfg.cut == 0) throw CLI::ValidationError("--cut-out", "requires --cut");
  const auto matrix = parse_matrix_csv(read_input(cfg.matrix));
  const auto tree = ward_cluster(matrix);
  tree.check();
  if (!cfg.json.empty()) write_output(cfg.json, emit_dendrogram_json(tree));
  if (!cfg.newick.empty()) write_output(cfg.newick, emit_newick(tree));
  if (!cfg.svg.empty()) write_output(cfg.svg, emit_dendrogram_svg(tree));
  if (cfg.cut > 0) {
    const auto labels = cut(tree, cfg.cut);
    write_output(cfg.cut_out.empty() ? "-" : cfg.cut_out, emit_cut_csv(tree, labels));
  }
  if (!cfg.heatmap.empty()) {
    const auto order = leaf_order(tree);
    write_output(cfg.heatmap, emit_heatmap(matrix, {}, std::span<const std::size_t>(order)));
  }
  return kSuccess;
}

int cmd_attribute(const RunConfig& cfg, Reporter& report) {
  require_output(cfg.out, "--out");
  const auto corpus = load_corpus(cfg.input, report);
  const auto segments = segments_for(corpus, cfg, cfg.strategy(), report);
  const auto table = band_table(segments, cfg.years, parse_grouping(cfg.grouping), cfg.top_k);
  write_output(cfg.out, emit_band_table_csv(table));
  return kSuccess;
}

int cmd_random_matrix(const RunConfig& cfg, Reporter&) {
  require_output(cfg.out, "--out");
  const auto matrix = random_matrix(cfg.segments, cfg.range.range(), cfg.seed);
  matrix.check();
  write_output(cfg.out, emit_matrix_csv(matrix));
  if (!cfg.heatmap.empty()) write_output(cfg.heatmap, emit_heatmap(matrix));
  return kSuccess;
}

int cmd_synth(const RunConfig& cfg, Reporter& report) {
  require_output(cfg.out, "--out");
  SynthSpec spec = cfg.spec.empty() ? default_synth_spec() : synth_spec_from_json(read_input(cfg.spec));
  if (cfg.synth_seed) spec.seed = *cfg.synth_seed;
  const auto records = synthesize(spec);
  write_output(cfg.out, cfg.synth_format == "csv" ? write_csv(records) : write_wos(records));
  std::size_t refs = 0;
  for (const auto& r : records) refs += r.cited_refs.size();
  report.note("synthesized " + std::to_string(records.size()) + " record(s), " + std::to_string(refs) +
              " cited reference(s)");
  return kSuccess;
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

}  // namespace

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
    }
  }
  if (config_path.empty()) return out;

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_input(config_path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::MalformedInput, "config '" + config_path + "': " + e.what());
  }
  if (!doc.is_object()) throw Error(Errc::MalformedInput, "config '" + config_path + "' must be a JSON object");

  auto scalar = [](const nlohmann::json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  for (const auto& [key, value] : doc.items()) {
    const std::string flag = "--" + key;
    if (has_flag(out, flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) out.push_back(flag);
    } else if (value.is_array()) {
      for (const auto& item : value) {
        out.push_back(flag);
        out.push_back(scalar(item));
      }
    } else if (!value.is_null()) {
      out.push_back(flag);
      out.push_back(scalar(value));
    }
  }
  return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& err) {
  Reporter report(err);
  RunConfig cfg;

  CLI::App app{"Reference publication year spectroscopy toolkit", "rpys"};
  app.require_subcommand(1);

  auto* parse = app.add_subcommand("parse", "Parse inputs into a corpus cache JSON");
  add_input_options(parse, cfg, true);
  parse->add_option("--out", cfg.out, "Corpus cache output (JSON)");

  auto* spectrum = app.add_subcommand("spectrum", "Single RPYS spectrum of the whole corpus");
  add_input_options(spectrum, cfg, true);
  add_range_options(spectrum, cfg);
  spectrum->add_option("--out", cfg.out, "Spectrum CSV output");
  spectrum->add_option("--svg", cfg.svg, "Optional spectrum SVG");

  auto* multi = app.add_subcommand("multi", "Multi-RPYS rank matrix, heatmap and claims");
  add_input_options(multi, cfg, false);
  add_range_options(multi, cfg);
  add_segmentation_options(multi, cfg);
  multi->add_flag("--random", cfg.random, "Emit the random baseline matrix instead");
  multi->add_option("--segments", cfg.segments, "Rows of the random baseline")->capture_default_str();
  multi->add_option("--seed", cfg.seed, "Seed of the random baseline")->capture_default_str();
  multi->add_option("--out", cfg.out, "Matrix CSV output");
  multi->add_option("--heatmap", cfg.heatmap, "Heatmap SVG output");
  multi->add_option("--claims", cfg.claims, "Knowledge-claim JSON output (needs --bins)");
  multi->add_option("--high-pct", cfg.sticky.high_threshold_pct, "Rank percentile counted as high")
      ->capture_default_str();
  multi->add_option("--min-bins", cfg.sticky.min_bins, "Bins needed for a sticky claim")->capture_default_str();
  multi->add_option("--min-span", cfg.sticky.min_span, "Years a sticky claim must span")->capture_default_str();
  multi->add_option("--recency-window", cfg.sticky.recency_window, "Self-citation recency window in years")
      ->capture_default_str();
  multi->add_option("--jobs", cfg.jobs, "Worker threads for per-segment spectra")->check(CLI::PositiveNumber);

  auto* cluster_cmd = app.add_subcommand("cluster", "Ward clustering of a matrix CSV");
  cluster_cmd->add_option("--matrix", cfg.matrix, "Matrix CSV from `multi`")->required();
  cluster_cmd->add_option("--json", cfg.json, "Dendrogram JSON output");
  cluster_cmd->add_option("--newick", cfg.newick, "Newick output");
  cluster_cmd->add_option("--svg", cfg.svg, "Dendrogram SVG output");
  cluster_cmd->add_option("--cut", cfg.cut, "Number of flat clusters");
  cluster_cmd->add_option("--cut-out", cfg.cut_out, "Cluster label CSV output (stdout if omitted)");
  cluster_cmd->add_option("--heatmap", cfg.heatmap, "Heatmap SVG with rows in dendrogram order");

  auto* attribute = app.add_subcommand("attribute", "Band table of works behind reference years");
  add_input_options(attribute, cfg, true);
  add_segmentation_options(attribute, cfg);
  attribute->add_option("--years", cfg.years, "Band years")->required()->delimiter(',');
  attribute->add_option("--grouping", cfg.grouping, "Work grouping")
      ->check(CLI::IsMember({"author-year", "author-year-source"}))
      ->capture_default_str();
  attribute->add_option("--top-k", cfg.top_k, "Works per cell")->capture_default_str();
  attribute->add_option("--out", cfg.out, "Band table CSV output");

  auto* random_cmd = app.add_subcommand("random-matrix", "Random baseline rank matrix");
  random_cmd->add_option("--segments", cfg.segments, "Rows")->capture_default_str();
  random_cmd->add_option("--from", cfg.range.from, "First year");
  random_cmd->add_option("--to", cfg.range.to, "Last year");
  random_cmd->add_option("--seed", cfg.seed, "Seed")->capture_default_str();
  random_cmd->add_option("--out", cfg.out, "Matrix CSV output");
  random_cmd->add_option("--heatmap", cfg.heatmap, "Heatmap SVG output");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic WoS corpus");
  synth->add_option("--spec", cfg.spec, "Synthesis spec JSON (default: seven-bin demo corpus)");
  synth->add_option("--seed", cfg.synth_seed, "Override the spec seed");
  synth->add_option("--format", cfg.synth_format, "Output format")->check(CLI::IsMember({"wos", "csv"}));
  synth->add_option("--out", cfg.out, "Output file");

  std::vector<std::string> args;
  try {
    args = expand_config(raw_args);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  // The random baseline defaults to the twentieth century.
  if (!args.empty() && args.front() == "random-matrix") {
    if (!has_flag(args, "--from")) cfg.range.from = 1900;
    if (!has_flag(args, "--to")) cfg.range.to = 1999;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    err << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << "run `rpys " << sub->get_name() << " --help` for usage\n";
    }
    return kUsageError;
  }

  try {
    if (parse->parsed()) return cmd_parse(cfg, report);
    if (spectrum->parsed()) return cmd_spectrum(cfg, report);
    if (multi->parsed()) return cmd_multi(cfg, report);
    if (cluster_cmd->parsed()) return cmd_cluster(cfg, report);
    if (attribute->parsed()) return cmd_attribute(cfg, report);
    if (random_cmd->parsed()) return cmd_random_matrix(cfg, report);
    if (synth->parsed()) return cmd_synth(cfg, report);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kUsageError;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cerr);
}

}  // namespace rpys::cli
