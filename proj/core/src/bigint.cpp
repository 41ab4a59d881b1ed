#include "quadrm/bigint.hpp"

#include "quadrm/error.hpp"

namespace quadrm {

BigInt ipow(std::uint64_t base, unsigned exp) {
  return boost::multiprecision::pow(BigInt(base), exp);
}

BigInt exact_div(const BigInt& numerator, const BigInt& denominator, const char* context) {
  if (denominator == 0) {
    throw Error(ErrorCode::InexactDivision, std::string(context) + ": division by zero");
  }
  BigInt quotient;
  BigInt remainder;
  boost::multiprecision::divide_qr(numerator, denominator, quotient, remainder);
  if (remainder != 0) {
    throw Error(ErrorCode::InexactDivision, std::string(context) + ": " + numerator.str() +
                                                " is not divisible by " + denominator.str());
  }
  return quotient;
}

BigInt parse_decimal(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorCode::ParseError, "not a decimal integer: '" + text + "'");
  }
  return BigInt(text);
}

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPrime: return "NonPrime";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::InverseOfZero: return "InverseOfZero";
    case ErrorCode::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorCode::OddCharacteristic: return "OddCharacteristic";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InconsistentRankType: return "InconsistentRankType";
    case ErrorCode::ZeroCoefficient: return "ZeroCoefficient";
    case ErrorCode::SingularSubstitution: return "SingularSubstitution";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InexactDivision: return "InexactDivision";
    case ErrorCode::InconsistentQuery: return "InconsistentQuery";
    case ErrorCode::UnsupportedForBinary: return "UnsupportedForBinary";
    case ErrorCode::UnsupportedParameters: return "UnsupportedParameters";
    case ErrorCode::NonDivisibleWeight: return "NonDivisibleWeight";
    case ErrorCode::ResidualMismatch: return "ResidualMismatch";
    case ErrorCode::InternalInvariant: return "InternalInvariant";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace quadrm
