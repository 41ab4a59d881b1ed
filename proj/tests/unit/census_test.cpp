#include <gtest/gtest.h>

#include "oracles.hpp"
#include "quadrm/census.hpp"
#include "quadrm/error.hpp"

namespace quadrm {
namespace {

using oracle::NaiveField;

TEST(CensusCounts, SpotValues) {
  for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u}) {
    for (unsigned m = 1; m <= 5; ++m) EXPECT_EQ(count_odd_rank(q, m, 1), ipow(q, m) - 1);
  }
  EXPECT_EQ(count_odd_rank(2, 3, 3), 28);
  EXPECT_EQ(count_odd_rank(3, 3, 3), 468);
  EXPECT_EQ(count_even_rank(2, 2, 2, 1), 3);
  EXPECT_EQ(count_even_rank(2, 2, 2, -1), 1);
  EXPECT_EQ(count_even_rank(3, 2, 2, 1), 12);
  EXPECT_EQ(count_even_rank(3, 2, 2, -1), 6);
  EXPECT_EQ(count_forms(3, 4, {1, FormType::Plus}), 80);
  EXPECT_EQ(count_forms(3, 4, {0, FormType::Plus}), 1);
}

TEST(CensusCounts, PreconditionsAreChecked) {
  EXPECT_THROW(count_odd_rank(3, 3, 2), Error);
  EXPECT_THROW(count_odd_rank(3, 3, 5), Error);
  EXPECT_THROW(count_even_rank(3, 3, 3, 1), Error);
  EXPECT_THROW(count_even_rank(3, 3, 2, 0), Error);
  EXPECT_THROW(count_even_rank(3, 3, 4, 1), Error);
  try {
    count_forms(2, 3, {3, FormType::Plus});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InconsistentRankType);
  }
}

TEST(CensusTable, SmallTables) {
  const CensusTable empty = census_formula(5, 0);
  EXPECT_EQ(empty.entries.size(), 1u);
  EXPECT_EQ(empty.count({0, CensusKind::Plus}), 1);

  const CensusTable t22 = census_formula(2, 2);
  EXPECT_EQ(t22.count({0, CensusKind::Plus}), 1);
  EXPECT_EQ(t22.count({1, CensusKind::Untyped}), 3);
  EXPECT_EQ(t22.count({2, CensusKind::Plus}), 3);
  EXPECT_EQ(t22.count({2, CensusKind::Minus}), 1);
  EXPECT_EQ(t22.total(), 8);

  const CensusTable t32 = census_formula(3, 2);
  EXPECT_EQ(t32.count({1, CensusKind::OddTotal}), 8);
  EXPECT_EQ(t32.count({2, CensusKind::Plus}), 12);
  EXPECT_EQ(t32.count({2, CensusKind::Minus}), 6);
  EXPECT_EQ(t32.total(), 27);
}

// Every division is exact, every count positive, and the classes partition
// all q^(m(m+1)/2) forms.
TEST(CensusTable, TotalsAndPositivityAcrossSweep) {
  for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    for (unsigned m = 0; m <= 8; ++m) {
      const CensusTable table = census_formula(q, m);
      EXPECT_EQ(table.total(), ipow(q, m * (m + 1) / 2)) << "q=" << q << " m=" << m;
      for (const auto& [key, count] : table.entries) EXPECT_GT(count, 0);
    }
  }
}

TEST(CensusExhaustive, MatchesFormulaWithinBudget) {
  for (auto [q, m] : std::vector<std::pair<std::uint32_t, unsigned>>{
           {2, 0}, {2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {3, 3}, {4, 1}, {4, 2}, {5, 1}, {5, 2}}) {
    const CensusTable oracle = census_exhaustive(FiniteField::of_order(q), m);
    EXPECT_EQ(oracle, census_formula(q, m)) << "q=" << q << " m=" << m;
  }
}

TEST(CensusExhaustive, OddRankSplitSumsToTotal) {
  const CensusTable t = census_exhaustive(FiniteField(3, 1), 3);
  for (unsigned r : {1u, 3u}) {
    EXPECT_EQ(t.odd_rank_split.at({r, 1}) + t.odd_rank_split.at({r, -1}), t.count({r, CensusKind::OddTotal}));
  }
  EXPECT_TRUE(census_exhaustive(FiniteField(2, 1), 3).odd_rank_split.empty());
}

TEST(CensusExhaustive, WorkersDoNotChangeResult) {
  CensusOptions one;
  CensusOptions many;
  many.workers = 4;
  const FiniteField f(2, 1);
  const CensusTable a = census_exhaustive(f, 4, one);
  const CensusTable b = census_exhaustive(f, 4, many);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.odd_rank_split, b.odd_rank_split);
}

TEST(CensusExhaustive, BudgetIsEnforced) {
  CensusOptions tight;
  tight.max_forms = 100;
  try {
    census_exhaustive(FiniteField(3, 1), 3, tight);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

// Census by point-counting classification, independent of the library's
// radical and diagonalization code.
TEST(CensusFormula, MatchesCountingOracle) {
  for (auto [q, m] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 3}, {3, 2}, {3, 3}, {4, 2}, {5, 2}}) {
    const FiniteField f = FiniteField::of_order(q);
    const NaiveField g = NaiveField::of_order(q);
    std::map<CensusKey, BigInt> tally;
    const unsigned slots = m * (m + 1) / 2;
    QuadraticForm form(f, m);
    for (std::uint64_t code = 0; code < oracle::ipow64(q, slots); ++code) {
      std::uint64_t rest = code;
      for (unsigned i = 0; i < m; ++i) {
        for (unsigned j = i; j < m; ++j) {
          form.set_coefficient(i, j, {static_cast<std::uint32_t>(rest % q)});
          rest /= q;
        }
      }
      tally[census_key(q, oracle::classify_by_counting(g, form))] += 1;
    }
    EXPECT_EQ(tally, census_formula(q, m).entries) << "q=" << q << " m=" << m;
  }
}

}  // namespace
}  // namespace quadrm
