#include "wls/error.hpp"

namespace wls {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::InvalidRank: return "InvalidRank";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::InvalidSpectrum: return "InvalidSpectrum";
    case ErrorKind::InvalidSliceCount: return "InvalidSliceCount";
    case ErrorKind::DegenerateScores: return "DegenerateScores";
    case ErrorKind::DegenerateResponse: return "DegenerateResponse";
    case ErrorKind::InvalidProfile: return "InvalidProfile";
    case ErrorKind::ColumnNotFound: return "ColumnNotFound";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::FormatError: return "FormatError";
    case ErrorKind::UsageError: return "UsageError";
  }
  return "Unknown";
}

}  // namespace wls
