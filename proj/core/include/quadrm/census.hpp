#pragma once

#include <cstdint>
#include <map>
#include <string_view>
#include <utility>

#include "quadrm/bigint.hpp"
#include "quadrm/quadratic_form.hpp"

namespace quadrm {

/// Census bucket. Odd ranks over odd q are merged into one OddTotal bucket
/// per rank because the closed formulas only give the total.
enum class CensusKind { Plus, Minus, Untyped, OddTotal };

std::string_view to_string(CensusKind kind) noexcept;

struct CensusKey {
  unsigned rank = 0;
  CensusKind kind = CensusKind::Plus;

  friend auto operator<=>(const CensusKey&, const CensusKey&) = default;
};

/// The census key a classified form falls into.
CensusKey census_key(std::uint64_t q, RankType rt);

struct CensusTable {
  std::uint64_t q = 0;
  unsigned m = 0;
  std::map<CensusKey, BigInt> entries;
  /// Odd q only, filled by the exhaustive census: (rank, +1/-1) -> count,
  /// the per-type split of the odd-rank totals. Informational; never
  /// compared against a formula.
  std::map<std::pair<unsigned, int>, BigInt> odd_rank_split;

  BigInt total() const;
  /// Entry count or 0 when absent.
  BigInt count(CensusKey key) const;

  /// Compares only `entries`.
  friend bool operator==(const CensusTable& a, const CensusTable& b) {
    return a.q == b.q && a.m == b.m && a.entries == b.entries;
  }
};

/// v_1 = q^m - 1 and v_{2j+1} = q^{j^2+j} prod_{i=m-2j}^{m}(q^i-1) / prod_{i=1}^{j}(q^{2i}-1).
BigInt count_odd_rank(std::uint64_t q, unsigned m, unsigned rank);

/// v_{2j,tau} = q^{j^2}(q^j+tau)/2 prod_{i=m-2j+1}^{m}(q^i-1) / prod_{i=1}^{j}(q^{2i}-1).
BigInt count_even_rank(std::uint64_t q, unsigned m, unsigned rank, int tau);

/// Count for one admissible (rank, type); odd rank over odd q returns the
/// merged total regardless of type.
BigInt count_forms(std::uint64_t q, unsigned m, RankType rt);

CensusTable census_formula(std::uint64_t q, unsigned m);

struct CensusOptions {
  std::uint64_t max_forms = std::uint64_t{1} << 26;
  std::uint64_t max_points = kDefaultMaxPoints;
  unsigned workers = 1;
};

/// Classifies every coefficient table on GF(q)^m and tallies.
CensusTable census_exhaustive(const FiniteField& field, unsigned m, const CensusOptions& options = {});

}  // namespace quadrm
