#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "quadrm/bigint.hpp"
#include "quadrm/field.hpp"
#include "quadrm/linalg.hpp"

namespace quadrm {

/// Second-order Reed-Muller (RM2), homogeneous Reed-Muller (HRM2) and
/// projective Reed-Muller (PRM2) codes over GF(q).
enum class CodeFamily { RM2, HRM2, PRM2 };

std::string_view to_string(CodeFamily family) noexcept;
CodeFamily parse_code_family(std::string_view text);

struct CodeParameters {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::uint64_t d = 0;

  friend bool operator==(const CodeParameters&, const CodeParameters&) = default;
};

/// [n, k, d] of the family. RM2 needs m >= 2 when q = 2 and m >= 1
/// otherwise; HRM2 and PRM2 need m >= 1. HRM2 over GF(2) with m = 1 is the
/// [2, 1, 1] code {00, 01}. Throws UnsupportedParameters.
CodeParameters code_parameters(CodeFamily family, std::uint64_t q, unsigned m);

struct WeightDistribution {
  CodeFamily family = CodeFamily::RM2;
  std::uint64_t q = 0;
  unsigned m = 0;
  CodeParameters params;
  std::map<std::uint64_t, BigInt> entries;  // weight -> frequency, no zeros

  BigInt total() const;
  BigInt frequency(std::uint64_t weight) const;

  /// Throws InternalInvariant unless A_0 = 1, the frequencies sum to q^k, no
  /// weight exceeds n and the smallest positive weight is d.
  void check_invariants() const;

  friend bool operator==(const WeightDistribution&, const WeightDistribution&) = default;
};

/// Closed form (binary table for q = 2, general table for q > 2). The
/// residual frequency at weight q^m - q^(m-1) is computed both from its
/// explicit expression and as q^k minus every other row; disagreement throws
/// ResidualMismatch.
WeightDistribution rm2_distribution(std::uint64_t q, unsigned m);
WeightDistribution hrm2_distribution(std::uint64_t q, unsigned m);
/// Closed form, cross-checked against hrm2_distribution(q, m + 1) with
/// weights divided by q - 1.
WeightDistribution prm2_distribution(std::uint64_t q, unsigned m);

/// Divides every weight of an HRM2(q, m + 1) distribution by q - 1, giving
/// the PRM2(q, m) distribution. Throws NonDivisibleWeight.
WeightDistribution hrm_to_prm(const WeightDistribution& hrm);

/// RM2 for q > 2 as the census-weighted sum of coset weight multisets.
WeightDistribution coset_assembled_distribution(std::uint64_t q, unsigned m);

struct BruteForceOptions {
  std::uint64_t max_symbol_evaluations = std::uint64_t{1} << 34;
  unsigned workers = 1;
};

/// Enumerates every codeword by its polynomial coefficients and tallies
/// Hamming weights. Throws BudgetExceeded when q^k * n is over budget.
WeightDistribution brute_force_distribution(CodeFamily family, std::uint64_t q, unsigned m,
                                            const BruteForceOptions& options = {});

/// Nonzero vectors of GF(q)^dim whose first nonzero coordinate is 1, in
/// index order.
std::vector<FieldVector> projective_representatives(const FiniteField& field, unsigned dim);

/// Coordinate points of the code: GF(q)^m in index order (zero vector first)
/// for RM2/HRM2, projective representatives of GF(q)^(m+1) for PRM2.
std::vector<FieldVector> evaluation_domain(CodeFamily family, const FiniteField& field, unsigned m);

/// "1 + A*Z^w + ..." in ascending weight order; a coefficient of 1 prints
/// as "Z^w".
std::string weight_enumerator_text(const WeightDistribution& wd);

}  // namespace quadrm
