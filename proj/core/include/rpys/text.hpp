#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rpys {

// Uppercase ASCII letters, drop . , ; : ' " and collapse whitespace runs to a
// single space. Idempotent.
std::string normalize_field(std::string_view text);

// Replace every invalid UTF-8 sequence with U+FFFD. A leading BOM is dropped.
std::string sanitize_utf8(std::string_view bytes);

std::string_view trim(std::string_view text) noexcept;

// Splits on the exact separator; empty pieces are kept.
std::vector<std::string_view> split(std::string_view text, std::string_view separator);

std::string to_upper(std::string_view text);
std::string to_lower(std::string_view text);
bool iequals(std::string_view a, std::string_view b) noexcept;

// Strict base-10 integer parse of the whole (trimmed) string.
bool parse_int(std::string_view text, int& out) noexcept;

}  // namespace rpys
