#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quadrm {

enum class ErrorCode {
  NonPrime,
  FieldTooLarge,
  InverseOfZero,
  EvenCharacteristic,
  OddCharacteristic,
  FieldMismatch,
  DimensionMismatch,
  BudgetExceeded,
  InconsistentRankType,
  ZeroCoefficient,
  SingularSubstitution,
  OutOfRange,
  InexactDivision,
  InconsistentQuery,
  UnsupportedForBinary,
  UnsupportedParameters,
  NonDivisibleWeight,
  ResidualMismatch,
  InternalInvariant,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for codes that indicate a bug or a transcription error in a closed
  /// formula rather than bad input.
  bool is_internal() const noexcept {
    return code_ == ErrorCode::InexactDivision || code_ == ErrorCode::NonDivisibleWeight ||
           code_ == ErrorCode::ResidualMismatch || code_ == ErrorCode::InternalInvariant;
  }

 private:
  ErrorCode code_;
};

}  // namespace quadrm
