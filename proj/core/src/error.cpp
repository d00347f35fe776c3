#include "rpys/error.hpp"

namespace rpys {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::EmptyFile: return "EmptyFile";
    case Errc::MalformedInput: return "MalformedInput";
    case Errc::MissingColumn: return "MissingColumn";
    case Errc::EmptyCorpus: return "EmptyCorpus";
    case Errc::OverlappingBins: return "OverlappingBins";
    case Errc::InvalidBins: return "InvalidBins";
    case Errc::MissingIntervals: return "MissingIntervals";
    case Errc::EmptyMatrix: return "EmptyMatrix";
    case Errc::TooFewRows: return "TooFewRows";
    case Errc::BadK: return "BadK";
    case Errc::BadRowOrder: return "BadRowOrder";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

std::string_view to_string(DiagnosticKind kind) noexcept {
  switch (kind) {
    case DiagnosticKind::MalformedRecord: return "MalformedRecord";
    case DiagnosticKind::UnrecognizedLine: return "UnrecognizedLine";
    case DiagnosticKind::BadYear: return "BadYear";
    case DiagnosticKind::InconsistentRow: return "InconsistentRow";
    case DiagnosticKind::MissingDocType: return "MissingDocType";
    case DiagnosticKind::DuplicateId: return "DuplicateId";
    case DiagnosticKind::EmptySegment: return "EmptySegment";
  }
  return "Unknown";
}

}  // namespace rpys
