#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace rpys::csv {

struct Row {
  std::size_t line = 0;  // line on which the row starts
  std::vector<std::string> fields;
};

// RFC-4180 reader: comma separated, double-quoted fields may contain commas,
// newlines and doubled quotes. Accepts LF or CRLF. Blank lines are skipped.
std::vector<Row> read(std::string_view text);

std::string escape(std::string_view field);

// Joins already-formatted fields with commas and escapes each one.
std::string join(const std::vector<std::string>& fields);

}  // namespace rpys::csv
