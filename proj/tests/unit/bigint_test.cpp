#include <gtest/gtest.h>

#include "quadrm/bigint.hpp"
#include "quadrm/error.hpp"

namespace quadrm {
namespace {

TEST(BigInt, PowersAreExact) {
  EXPECT_EQ(ipow(2, 0), 1);
  EXPECT_EQ(ipow(3, 4), 81);
  EXPECT_EQ(to_decimal(ipow(2, 100)), "1267650600228229401496703205376");
  EXPECT_EQ(to_decimal(ipow(9, 45)), to_decimal(ipow(3, 90)));
}

TEST(BigInt, ExactDivision) {
  EXPECT_EQ(exact_div(ipow(10, 30), ipow(10, 12), "test"), ipow(10, 18));
  try {
    exact_div(BigInt(7), BigInt(2), "seven halves");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InexactDivision);
    EXPECT_TRUE(e.is_internal());
    EXPECT_NE(std::string(e.what()).find("seven halves"), std::string::npos);
  }
}

TEST(BigInt, DecimalRoundTrip) {
  const BigInt big = ipow(7, 77) - 1;
  EXPECT_EQ(parse_decimal(to_decimal(big)), big);
  EXPECT_EQ(parse_decimal("0"), 0);
  EXPECT_THROW(parse_decimal(""), Error);
  EXPECT_THROW(parse_decimal("12a"), Error);
  EXPECT_THROW(parse_decimal("-"), Error);
}

TEST(ErrorCodes, InternalClassification) {
  EXPECT_FALSE(Error(ErrorCode::UnsupportedParameters, "x").is_internal());
  EXPECT_FALSE(Error(ErrorCode::BudgetExceeded, "x").is_internal());
  EXPECT_TRUE(Error(ErrorCode::ResidualMismatch, "x").is_internal());
  EXPECT_EQ(to_string(ErrorCode::NonPrime), "NonPrime");
}

}  // namespace
}  // namespace quadrm
