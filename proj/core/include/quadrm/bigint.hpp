#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace quadrm {

using BigInt = boost::multiprecision::cpp_int;

/// base^exp in exact arithmetic.
BigInt ipow(std::uint64_t base, unsigned exp);

/// numerator / denominator, throwing InexactDivision when the remainder is
/// nonzero. `context` names the formula for the error message.
BigInt exact_div(const BigInt& numerator, const BigInt& denominator, const char* context);

inline std::string to_decimal(const BigInt& value) { return value.str(); }

BigInt parse_decimal(const std::string& text);

}  // namespace quadrm
