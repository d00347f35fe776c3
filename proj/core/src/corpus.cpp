#include "rpys/corpus.hpp"

#include <algorithm>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "rpys/csv.hpp"
#include "rpys/text.hpp"

namespace rpys {

void AliasMap::add(std::string_view from, std::string_view to) {
  map_.insert_or_assign(normalize_field(from), normalize_field(to));
}

std::string AliasMap::canonical(std::string_view venue) const {
  auto key = normalize_field(venue);
  if (auto it = map_.find(key); it != map_.end()) return it->second;
  return key;
}

AliasMap AliasMap::from_csv(std::string_view text) {
  AliasMap aliases;
  const auto rows = csv::read(sanitize_utf8(text));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& f = rows[i].fields;
    if (i == 0 && f.size() == 2 && to_lower(trim(f[0])) == "from" && to_lower(trim(f[1])) == "to") {
      continue;
    }
    if (f.size() != 2 || trim(f[0]).empty() || trim(f[1]).empty()) {
      throw Error(Errc::MalformedInput,
                  "alias map line " + std::to_string(rows[i].line) + ": expected 'from,to'");
    }
    aliases.add(f[0], f[1]);
  }
  return aliases;
}

Corpus build_corpus(std::vector<Record> records, const std::optional<std::string>& doc_type_filter,
                    const AliasMap& aliases) {
  Corpus corpus;
  corpus.summary_.input_records = records.size();

  std::vector<Record> kept;
  kept.reserve(records.size());
  std::unordered_set<std::string> ids;
  for (auto& r : records) {
    if (doc_type_filter) {
      if (trim(r.doc_type).empty()) {
        ++corpus.summary_.missing_doc_type;
        continue;
      }
      if (!iequals(trim(r.doc_type), trim(*doc_type_filter))) {
        ++corpus.summary_.dropped_doc_type;
        continue;
      }
    }
    if (!ids.insert(r.id).second) {
      ++corpus.summary_.duplicate_ids;
      corpus.warnings_.push_back(
          {DiagnosticKind::DuplicateId, 0, "duplicate record id '" + r.id + "'; later copy dropped"});
      continue;
    }
    r.venue = aliases.canonical(r.venue);
    kept.push_back(std::move(r));
  }
  if (corpus.summary_.missing_doc_type > 0) {
    corpus.warnings_.push_back({DiagnosticKind::MissingDocType, 0,
                                std::to_string(corpus.summary_.missing_doc_type) +
                                    " record(s) without a document type excluded by the filter"});
  }
  if (kept.empty()) throw Error(Errc::EmptyCorpus, "no record survives filtering");
  corpus.records_ = std::make_shared<const std::vector<Record>>(std::move(kept));
  return corpus;
}

YearBin make_bin(int start, int end) {
  return YearBin{start, end, std::to_string(start) + "-" + std::to_string(end)};
}

std::vector<YearBin> parse_bin_spec(std::string_view spec) {
  std::vector<YearBin> bins;
  for (auto piece : split(spec, ",")) {
    piece = trim(piece);
    const auto dash = piece.find('-');
    int start = 0, end = 0;
    if (dash == std::string_view::npos) {
      if (!parse_int(piece, start)) {
        throw Error(Errc::InvalidBins, "bad bin '" + std::string(piece) + "'");
      }
      end = start;
    } else if (!parse_int(piece.substr(0, dash), start) || !parse_int(piece.substr(dash + 1), end)) {
      throw Error(Errc::InvalidBins, "bad bin '" + std::string(piece) + "'");
    }
    bins.push_back(make_bin(start, end));
  }
  validate_bins(bins);
  return bins;
}

void validate_bins(std::span<const YearBin> bins) {
  if (bins.empty()) throw Error(Errc::InvalidBins, "no bins given");
  for (std::size_t i = 0; i < bins.size(); ++i) {
    if (bins[i].start > bins[i].end) {
      throw Error(Errc::InvalidBins, "bin '" + bins[i].label + "' ends before it starts");
    }
    if (i > 0 && bins[i].start <= bins[i - 1].end) {
      throw Error(Errc::OverlappingBins,
                  "bin '" + bins[i].label + "' overlaps or precedes '" + bins[i - 1].label + "'");
    }
  }
}

Segment::Segment(std::string label, Corpus::Storage storage, std::vector<std::size_t> members,
                 std::optional<YearBin> interval)
    : label_(std::move(label)),
      storage_(std::move(storage)),
      members_(std::move(members)),
      interval_(std::move(interval)) {}

Segment Segment::from_records(std::string label, std::vector<Record> records,
                              std::optional<YearBin> interval) {
  std::vector<std::size_t> members(records.size());
  for (std::size_t i = 0; i < members.size(); ++i) members[i] = i;
  return Segment(std::move(label), std::make_shared<const std::vector<Record>>(std::move(records)),
                 std::move(members), std::move(interval));
}

Segmentation segment_by_bins(const Corpus& corpus, std::span<const YearBin> bins) {
  validate_bins(bins);
  std::vector<std::vector<std::size_t>> members(bins.size());
  Segmentation out;
  const auto& records = corpus.records();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const int year = records[i].pub_year;
    auto it = std::lower_bound(bins.begin(), bins.end(), year,
                               [](const YearBin& b, int y) { return b.end < y; });
    if (it != bins.end() && it->contains(year)) {
      members[static_cast<std::size_t>(it - bins.begin())].push_back(i);
    } else {
      ++out.excluded_records;
    }
  }
  for (std::size_t b = 0; b < bins.size(); ++b) {
    if (members[b].empty()) {
      out.dropped_empty.push_back(bins[b].label);
      continue;
    }
    out.segments.emplace_back(bins[b].label, corpus.storage(), std::move(members[b]), bins[b]);
  }
  return out;
}

std::vector<Segment> segment_by_venue(const Corpus& corpus) {
  std::map<std::string, std::vector<std::size_t>> by_venue;
  const auto& records = corpus.records();
  for (std::size_t i = 0; i < records.size(); ++i) by_venue[records[i].venue].push_back(i);
  std::vector<Segment> segments;
  segments.reserve(by_venue.size());
  for (auto& [venue, members] : by_venue) {
    segments.emplace_back(venue, corpus.storage(), std::move(members));
  }
  return segments;
}

Segment whole_corpus(const Corpus& corpus, std::string label) {
  std::vector<std::size_t> members(corpus.size());
  for (std::size_t i = 0; i < members.size(); ++i) members[i] = i;
  return Segment(std::move(label), corpus.storage(), std::move(members));
}

namespace {

using nlohmann::json;

template <typename T>
json optional_json(const std::optional<T>& value) {
  return value ? json(*value) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

}  // namespace

std::string records_to_json(std::span<const Record> records) {
  json array = json::array();
  for (const auto& r : records) {
    json refs = json::array();
    for (const auto& c : r.cited_refs) {
      refs.push_back({{"raw", c.raw},
                      {"year", optional_json(c.year)},
                      {"first_author", optional_json(c.first_author)},
                      {"source", optional_json(c.source)},
                      {"volume", optional_json(c.volume)},
                      {"page", optional_json(c.page)}});
    }
    json extra = json::array();
    for (const auto& f : r.extra_fields) extra.push_back({{"tag", f.tag}, {"lines", f.lines}});
    array.push_back({{"id", r.id},
                     {"pub_year", r.pub_year},
                     {"venue", r.venue},
                     {"doc_type", r.doc_type},
                     {"cited_refs", std::move(refs)},
                     {"extra_fields", std::move(extra)}});
  }
  return json{{"records", std::move(array)}}.dump(-1, ' ', false, json::error_handler_t::replace) +
         "\n";
}

std::vector<Record> records_from_json(std::string_view text) {
  std::vector<Record> records;
  try {
    const auto doc = json::parse(text);
    for (const auto& r : doc.at("records")) {
      Record record;
      record.id = r.at("id").get<std::string>();
      record.pub_year = r.at("pub_year").get<int>();
      record.venue = r.value("venue", std::string{});
      record.doc_type = r.value("doc_type", std::string{});
      for (const auto& c : r.at("cited_refs")) {
        CitedRef ref;
        ref.raw = c.at("raw").get<std::string>();
        ref.year = optional_from<int>(c, "year");
        ref.first_author = optional_from<std::string>(c, "first_author");
        ref.source = optional_from<std::string>(c, "source");
        ref.volume = optional_from<std::string>(c, "volume");
        ref.page = optional_from<std::string>(c, "page");
        record.cited_refs.push_back(std::move(ref));
      }
      if (auto it = r.find("extra_fields"); it != r.end()) {
        for (const auto& f : *it) {
          record.extra_fields.push_back(
              {f.at("tag").get<std::string>(), f.at("lines").get<std::vector<std::string>>()});
        }
      }
      records.push_back(std::move(record));
    }
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedInput, std::string("corpus cache: ") + e.what());
  }
  return records;
}

}  // namespace rpys
