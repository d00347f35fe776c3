#include "rpys/ingest.hpp"

#include <algorithm>
#include <unordered_map>

#include "rpys/csv.hpp"
#include "rpys/text.hpp"

namespace rpys {

namespace {

bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }
bool is_alnum(char c) noexcept {
  return is_digit(c) || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}
bool is_tag_char(char c) noexcept { return is_digit(c) || (c >= 'A' && c <= 'Z'); }

std::optional<int> year_token(std::string_view token) {
  if (token.size() != 4 || !std::all_of(token.begin(), token.end(), is_digit)) return std::nullopt;
  const int year = (token[0] - '0') * 1000 + (token[1] - '0') * 100 + (token[2] - '0') * 10 +
                   (token[3] - '0');
  if (year < kMinRefYear || year > kMaxRefYear) return std::nullopt;
  return year;
}

// "V16" -> "16"
std::optional<std::string> volume_token(std::string_view token) {
  if (token.size() < 2 || token[0] != 'V') return std::nullopt;
  if (!std::all_of(token.begin() + 1, token.end(), is_digit)) return std::nullopt;
  return std::string(token.substr(1));
}

// "P317" -> "317"
std::optional<std::string> page_token(std::string_view token) {
  if (token.size() < 2 || token[0] != 'P') return std::nullopt;
  if (!std::all_of(token.begin() + 1, token.end(), is_alnum)) return std::nullopt;
  return std::string(token.substr(1));
}

constexpr std::size_t kYearSearchTokens = 3;

struct Block {
  std::size_t start_line = 0;
  std::vector<RawField> fields;
};

class WosParser {
public:
  WosParser(std::string_view text, std::string_view id_prefix)
      : text_(sanitize_utf8(text)), id_prefix_(id_prefix) {}

  ParseResult run() {
    std::string_view rest = text_;
    std::size_t line_no = 0;
    while (!rest.empty()) {
      const auto eol = rest.find('\n');
      std::string_view line = rest.substr(0, eol);
      rest = eol == std::string_view::npos ? std::string_view{} : rest.substr(eol + 1);
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!consume(line, line_no)) break;
    }
    if (open_) {
      warn(DiagnosticKind::MalformedRecord, block_.start_line,
           "record starting here has no ER before end of file; skipped");
    }
    if (blocks_seen_ == 0) throw Error(Errc::EmptyFile, "no records in Web of Science input");
    return std::move(result_);
  }

private:
  // Returns false once EF is seen.
  bool consume(std::string_view line, std::size_t line_no) {
    if (!line.empty() && line.front() == '\t') {
      throw Error(Errc::MalformedInput,
                  "line " + std::to_string(line_no) + ": tab indentation is not allowed");
    }
    if (trim(line).empty()) return true;

    if (line.front() == ' ') {
      const bool continuation = line.size() > 3 && line.substr(0, 3) == "   " && line[3] != ' ' &&
                                line[3] != '\t';
      if (!continuation || !open_ || block_.fields.empty()) {
        warn(DiagnosticKind::UnrecognizedLine, line_no, "unexpected indented line ignored");
        return true;
      }
      block_.fields.back().lines.emplace_back(trim(line.substr(3)));
      return true;
    }

    if (line.size() < 2 || !is_tag_char(line[0]) || !is_tag_char(line[1]) ||
        (line.size() > 2 && line[2] != ' ')) {
      warn(DiagnosticKind::UnrecognizedLine, line_no, "line is neither a tag nor a continuation");
      return true;
    }
    const std::string_view tag = line.substr(0, 2);
    const std::string_view value = line.size() > 3 ? trim(line.substr(3)) : std::string_view{};

    if (tag == "EF") {
      if (open_) {
        warn(DiagnosticKind::MalformedRecord, block_.start_line,
             "record starting here has no ER before EF; skipped");
        open_ = false;
      }
      return false;
    }
    if (tag == "ER") {
      if (!open_) {
        warn(DiagnosticKind::UnrecognizedLine, line_no, "ER outside of a record");
        return true;
      }
      finish_block();
      return true;
    }
    if (!open_ && (tag == "FN" || tag == "VR")) return true;

    if (open_ && tag == "PT" && has_tag("PT")) {
      warn(DiagnosticKind::MalformedRecord, block_.start_line,
           "record starting here has no ER before the next PT; skipped");
      open_ = false;
    }
    if (!open_) {
      open_ = true;
      ++blocks_seen_;
      block_ = Block{line_no, {}};
    }
    block_.fields.push_back(RawField{std::string(tag), {std::string(value)}});
    return true;
  }

  bool has_tag(std::string_view tag) const {
    return std::any_of(block_.fields.begin(), block_.fields.end(),
                       [&](const RawField& f) { return f.tag == tag; });
  }

  const RawField* find(std::string_view tag) const {
    for (const auto& f : block_.fields) {
      if (f.tag == tag) return &f;
    }
    return nullptr;
  }

  void finish_block() {
    open_ = false;
    Record record;
    const RawField* py = find("PY");
    int year = 0;
    if (py == nullptr || !parse_int(py->lines.front(), year) || year < kMinPubYear ||
        year > kMaxPubYear) {
      warn(DiagnosticKind::MalformedRecord, block_.start_line,
           "record starting here has no parseable PY; skipped");
      return;
    }
    record.pub_year = year;

    bool seen_py = false, seen_ut = false, seen_so = false, seen_dt = false;
    for (auto& field : block_.fields) {
      if (field.tag == "CR") {
        for (const auto& line : field.lines) {
          if (!line.empty()) record.cited_refs.push_back(parse_cited_ref(line));
        }
      } else if (field.tag == "PY" && !seen_py) {
        seen_py = true;
      } else if (field.tag == "UT" && !seen_ut) {
        seen_ut = true;
        record.id = field.lines.front();
      } else if (field.tag == "SO" && !seen_so) {
        seen_so = true;
        std::string joined;
        for (const auto& l : field.lines) joined += l + ' ';
        record.venue = normalize_field(joined);
      } else if (field.tag == "DT" && !seen_dt) {
        seen_dt = true;
        record.doc_type = field.lines.front();
      } else {
        record.extra_fields.push_back(std::move(field));
      }
    }
    if (record.id.empty()) record.id = id_prefix_ + "R" + std::to_string(blocks_seen_);
    result_.records.push_back(std::move(record));
  }

  void warn(DiagnosticKind kind, std::size_t line, std::string message) {
    result_.warnings.push_back(Diagnostic{kind, line, "line " + std::to_string(line) + ": " +
                                                          std::move(message)});
  }

  std::string text_;
  std::string id_prefix_;
  ParseResult result_;
  Block block_;
  bool open_ = false;
  std::size_t blocks_seen_ = 0;
};

void append_field(std::string& out, std::string_view tag, const std::vector<std::string>& lines) {
  for (std::size_t i = 0; i < lines.size(); ++i) {
    out += i == 0 ? std::string(tag) : std::string("  ");
    out += ' ';
    out += lines[i];
    out += '\n';
  }
}

}  // namespace

CitedRef parse_cited_ref(std::string_view raw) {
  CitedRef ref;
  ref.raw = std::string(raw);

  auto tokens = split(trim(raw), ", ");
  for (auto& t : tokens) t = trim(t);

  std::size_t year_at = tokens.size();
  for (std::size_t i = 0; i < std::min(tokens.size(), kYearSearchTokens); ++i) {
    if (auto year = year_token(tokens[i])) {
      ref.year = *year;
      year_at = i;
      break;
    }
  }
  if (!ref.year) return ref;

  if (year_at > 0) {
    auto author = normalize_field(tokens[0]);
    if (!author.empty()) ref.first_author = std::move(author);
  }
  if (year_at + 1 < tokens.size()) {
    const auto candidate = tokens[year_at + 1];
    if (!volume_token(candidate) && !page_token(candidate) && !candidate.starts_with("DOI ")) {
      auto source = normalize_field(candidate);
      if (!source.empty()) ref.source = std::move(source);
    }
  }
  for (std::size_t i = year_at + 1; i < tokens.size(); ++i) {
    if (!ref.volume) {
      if (auto v = volume_token(tokens[i])) {
        ref.volume = std::move(v);
        continue;
      }
    }
    if (!ref.page) {
      if (auto p = page_token(tokens[i])) ref.page = std::move(p);
    }
  }
  return ref;
}

ParseResult parse_wos(std::string_view text, std::string_view id_prefix) {
  return WosParser(text, id_prefix).run();
}

ParseResult parse_csv(std::string_view text) {
  static constexpr std::string_view kColumns[] = {"citing_id", "citing_year", "venue", "doc_type",
                                                  "cited_ref"};
  const auto rows = csv::read(sanitize_utf8(text));
  if (rows.empty()) throw Error(Errc::MissingColumn, "CSV input has no header row");

  std::size_t column[5];
  const auto& header = rows.front().fields;
  for (std::size_t c = 0; c < 5; ++c) {
    auto it = std::find_if(header.begin(), header.end(), [&](const std::string& h) {
      return to_lower(trim(h)) == kColumns[c];
    });
    if (it == header.end()) {
      throw Error(Errc::MissingColumn, "CSV header lacks column '" + std::string(kColumns[c]) + "'");
    }
    column[c] = static_cast<std::size_t>(it - header.begin());
  }
  const std::size_t needed = *std::max_element(std::begin(column), std::end(column)) + 1;

  ParseResult result;
  std::unordered_map<std::string, std::size_t> index_of;
  auto warn = [&](DiagnosticKind kind, std::size_t line, const std::string& message) {
    result.warnings.push_back({kind, line, "line " + std::to_string(line) + ": " + message});
  };

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() < needed) {
      warn(DiagnosticKind::InconsistentRow, row.line, "row has too few columns; skipped");
      continue;
    }
    const std::string id(trim(row.fields[column[0]]));
    int year = 0;
    if (!parse_int(row.fields[column[1]], year) || year < kMinPubYear || year > kMaxPubYear) {
      warn(DiagnosticKind::BadYear, row.line,
           "unusable citing_year '" + row.fields[column[1]] + "'; row skipped");
      continue;
    }
    if (id.empty()) {
      warn(DiagnosticKind::InconsistentRow, row.line, "empty citing_id; row skipped");
      continue;
    }
    auto venue = normalize_field(row.fields[column[2]]);
    const std::string doc_type(trim(row.fields[column[3]]));

    auto [it, inserted] = index_of.try_emplace(id, result.records.size());
    if (inserted) {
      Record record;
      record.id = id;
      record.pub_year = year;
      record.venue = std::move(venue);
      record.doc_type = doc_type;
      result.records.push_back(std::move(record));
    } else {
      const auto& existing = result.records[it->second];
      if (existing.pub_year != year || existing.venue != venue || existing.doc_type != doc_type) {
        warn(DiagnosticKind::InconsistentRow, row.line,
             "record fields differ from the first row of '" + id + "'; first row kept");
      }
    }
    const auto cited = trim(row.fields[column[4]]);
    if (!cited.empty()) result.records[it->second].cited_refs.push_back(parse_cited_ref(cited));
  }
  return result;
}

std::string write_wos(std::span<const Record> records) {
  std::string out = "FN Clarivate Analytics Web of Science\nVR 1.0\n";
  for (const auto& r : records) {
    for (const auto& f : r.extra_fields) append_field(out, f.tag, f.lines);
    if (!r.venue.empty()) append_field(out, "SO", {r.venue});
    if (!r.doc_type.empty()) append_field(out, "DT", {r.doc_type});
    for (std::size_t i = 0; i < r.cited_refs.size(); ++i) {
      out += i == 0 ? "CR " : "   ";
      out += r.cited_refs[i].raw;
      out += '\n';
    }
    out += "PY " + std::to_string(r.pub_year) + '\n';
    out += "UT " + r.id + '\n';
    out += "ER\n\n";
  }
  out += "EF\n";
  return out;
}

std::string write_csv(std::span<const Record> records) {
  std::string out = "citing_id,citing_year,venue,doc_type,cited_ref\n";
  for (const auto& r : records) {
    const std::string prefix =
        csv::join({r.id, std::to_string(r.pub_year), r.venue, r.doc_type}) + ',';
    if (r.cited_refs.empty()) out += prefix + '\n';
    for (const auto& ref : r.cited_refs) out += prefix + csv::escape(ref.raw) + '\n';
  }
  return out;
}

}  // namespace rpys
