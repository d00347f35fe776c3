#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rpys/error.hpp"

namespace rpys {

// Smallest and largest accepted years for citing records and cited references.
inline constexpr int kMinPubYear = 1500;
inline constexpr int kMaxPubYear = 2100;
inline constexpr int kMinRefYear = 1000;
inline constexpr int kMaxRefYear = 2100;

/// One tagged field of a Web of Science record: the two-character tag and its
/// first line followed by any continuation lines.
struct RawField {
  std::string tag;
  std::vector<std::string> lines;

  friend bool operator==(const RawField&, const RawField&) = default;
};

/// One cited reference. `raw` is the verbatim string; the optional fields are
/// filled in on a best-effort basis and stay empty when the string does not
/// carry a recognizable year.
struct CitedRef {
  std::string raw;
  std::optional<int> year;
  std::optional<std::string> first_author;
  std::optional<std::string> source;
  std::optional<std::string> volume;
  std::optional<std::string> page;

  friend bool operator==(const CitedRef&, const CitedRef&) = default;
};

/// One citing publication.
struct Record {
  std::string id;
  int pub_year = 0;
  std::string venue;     // normalized source title
  std::string doc_type;  // as exported, e.g. "Article"; empty when missing
  std::vector<CitedRef> cited_refs;
  std::vector<RawField> extra_fields;  // tags not mapped onto the fields above

  friend bool operator==(const Record&, const Record&) = default;
};

struct ParseResult {
  std::vector<Record> records;
  std::vector<Diagnostic> warnings;
};

/// Parses a cited-reference string of the form
/// `AUTHOR, YEAR, SOURCE, V<volume>, P<page>[, DOI ...]`.
///
/// The year is the first 4-digit token in [1000, 2100] among the first three
/// comma tokens. A reference without such a year keeps only `raw`. Never
/// throws on arbitrary input.
CitedRef parse_cited_ref(std::string_view raw);

/// Parses a plain-text Web of Science export.
///
/// Records are blocks of tagged lines closed by `ER`; continuation lines are
/// indented by exactly three spaces. A block missing `ER` or a usable `PY` is
/// skipped and reported in `warnings`. Records without a `UT` get the id
/// `<id_prefix>R<ordinal>`.
///
/// Throws Error{EmptyFile} when the text holds no record blocks, and
/// Error{MalformedInput} on tab-indented lines.
ParseResult parse_wos(std::string_view text, std::string_view id_prefix = {});

/// Parses the flat CSV format
/// `citing_id,citing_year,venue,doc_type,cited_ref`, one row per
/// (record, cited reference) pair. Rows sharing a citing_id form one Record.
/// Rows with an unusable year are skipped with a warning. An empty cited_ref
/// cell yields a record without that reference.
///
/// Throws Error{MissingColumn} when the header lacks a required column.
ParseResult parse_csv(std::string_view text);

std::string write_wos(std::span<const Record> records);
std::string write_csv(std::span<const Record> records);

}  // namespace rpys
