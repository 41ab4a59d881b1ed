#pragma once

#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include "quadrm/bigint.hpp"
#include "quadrm/quadratic_form.hpp"

namespace quadrm {

/// Exact multiset of big-integer values, kept sorted by value. Zero
/// multiplicities are never stored.
class SpectrumMultiset {
 public:
  /// Adds `multiplicity` copies of `value`; a negative multiplicity is an
  /// InternalInvariant error (it means a frequency formula went wrong).
  void add(const BigInt& value, const BigInt& multiplicity);

  const std::map<BigInt, BigInt>& entries() const noexcept { return entries_; }
  BigInt population() const;
  BigInt multiplicity(const BigInt& value) const;

  SpectrumMultiset& operator+=(const SpectrumMultiset& other);
  SpectrumMultiset scaled(const BigInt& factor) const;

  friend bool operator==(const SpectrumMultiset&, const SpectrumMultiset&) = default;

 private:
  std::map<BigInt, BigInt> entries_;
};

/// Which constants c the family {Q + L + c} ranges over. Each class
/// aggregates every c it contains: Zero is {0}, Square and NonSquare hold
/// (q-1)/2 constants each, AnyNonzero holds q-1.
enum class CosetClass { Zero, Square, NonSquare, AnyNonzero };

std::string_view to_string(CosetClass c) noexcept;
CosetClass parse_coset_class(std::string_view text);
std::uint64_t class_size(std::uint64_t q, CosetClass c);

struct CosetQuery {
  std::uint64_t q = 0;
  unsigned m = 0;
  RankType rank_type;
  CosetClass c_class = CosetClass::Zero;
};

/// Throws InconsistentQuery: Square/NonSquare need odd q and odd rank;
/// AnyNonzero is for even q, or odd q with even rank; m >= 1.
void validate_query(const CosetQuery& query);

/// The classes a query with this rank may use, in a fixed order.
std::vector<CosetClass> coset_classes(std::uint64_t q, unsigned rank);

/// Zero counts N(Q + L + c) over all linear L and c in the class, even q.
SpectrumMultiset spectrum_even_q(const CosetQuery& query);
/// Same for odd q.
SpectrumMultiset spectrum_odd_q(const CosetQuery& query);
/// Dispatches on the parity of q.
SpectrumMultiset spectrum_for(const CosetQuery& query);

/// Zero counts over all L and all c in GF(q); population q^(m+1).
SpectrumMultiset spectrum_merged(std::uint64_t q, unsigned m, RankType rt);

/// Weights q^m - N of the coset Q + RM_q(1, m). Throws UnsupportedForBinary
/// for q = 2.
SpectrumMultiset coset_weight_multiset(std::uint64_t q, unsigned m, RankType rt);

struct OracleOptions {
  std::uint64_t max_evaluations = std::uint64_t{1} << 28;
  unsigned workers = 1;
};

/// Brute force: enumerates every linear functional and every c in the class
/// and counts zeros point by point.
SpectrumMultiset spectrum_oracle(const QuadraticForm& form, CosetClass c_class, const OracleOptions& options = {});
/// Brute force over every c in GF(q).
SpectrumMultiset spectrum_oracle_all(const QuadraticForm& form, const OracleOptions& options = {});

}  // namespace quadrm
