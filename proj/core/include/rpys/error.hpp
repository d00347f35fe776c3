#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rpys {

enum class Errc {
  EmptyFile,
  MalformedInput,
  MissingColumn,
  EmptyCorpus,
  OverlappingBins,
  InvalidBins,
  MissingIntervals,
  EmptyMatrix,
  TooFewRows,
  BadK,
  BadRowOrder,
  InvalidArgument,
  Io,
};

std::string_view to_string(Errc code) noexcept;

// Recoverable errors caused by bad input, bad arguments or the filesystem.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

// Raised when an internal invariant does not hold. Always a bug.
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// Non-fatal problem found while reading input. Parsing continues.
enum class DiagnosticKind {
  MalformedRecord,
  UnrecognizedLine,
  BadYear,
  InconsistentRow,
  MissingDocType,
  DuplicateId,
  EmptySegment,
};

std::string_view to_string(DiagnosticKind kind) noexcept;

struct Diagnostic {
  DiagnosticKind kind;
  std::size_t line = 0;  // 1-based; 0 when not tied to a line
  std::string message;
};

}  // namespace rpys
