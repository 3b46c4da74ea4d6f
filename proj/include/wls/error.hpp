#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wls {

// Failure categories. The CLI maps these onto process exit codes.
enum class ErrorKind {
  InvalidInput,
  TooFewSamples,
  InvalidRank,
  NumericalFailure,
  InvalidSpectrum,
  InvalidSliceCount,
  DegenerateScores,
  DegenerateResponse,
  InvalidProfile,
  ColumnNotFound,
  ParseError,
  FormatError,
  UsageError,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_{kind} {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace wls
