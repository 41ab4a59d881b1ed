#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "quadrm/code_distributions.hpp"
#include "quadrm/coset_spectra.hpp"
#include "quadrm/field.hpp"
#include "quadrm/linalg.hpp"
#include "quadrm/quadratic_form.hpp"

// Brute-force reference implementations used only by the tests. Nothing here
// calls into the library's arithmetic: elements are plain indices and all
// operations go through schoolbook polynomial arithmetic.
namespace quadrm::oracle {

using Poly = std::vector<std::uint32_t>;  // constant term first

/// Polynomial remainder over GF(p); `mod` need not be monic-normalised.
Poly poly_mod(Poly a, const Poly& mod, std::uint32_t p);

/// Irreducibility by trial division against every monic polynomial of
/// degree 1..deg/2.
bool irreducible_by_trial_division(const Poly& f, std::uint32_t p);

/// First monic irreducible of degree e in base-p digit order.
Poly smallest_irreducible(std::uint32_t p, unsigned e);

class NaiveField {
 public:
  NaiveField(std::uint32_t p, unsigned e);
  static NaiveField of_order(std::uint64_t q);

  std::uint32_t p() const { return p_; }
  unsigned e() const { return e_; }
  std::uint32_t q() const { return q_; }
  const Poly& modulus() const { return modulus_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * q_ + b]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * q_ + b]; }
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t pow(std::uint32_t a, std::uint64_t k) const;
  std::uint32_t trace(std::uint32_t a) const;
  /// +1 nonzero square, -1 nonsquare, 0 for zero (by search for a root).
  int character(std::uint32_t a) const;

 private:
  std::uint32_t p_;
  unsigned e_;
  std::uint32_t q_;
  Poly modulus_;
  std::vector<std::uint32_t> add_;
  std::vector<std::uint32_t> mul_;
};

/// Digits of `index` in base q, leftmost coordinate most significant.
std::vector<std::uint32_t> point(std::uint32_t q, unsigned m, std::uint64_t index);
std::uint64_t ipow64(std::uint64_t base, unsigned exp);

/// Sum over i <= j of the monomial coefficients times x_i x_j.
std::uint32_t evaluate(const NaiveField& f, const QuadraticForm& form, const std::vector<std::uint32_t>& x);

/// All values Q(x) in point order.
std::vector<std::uint32_t> value_table(const NaiveField& f, const QuadraticForm& form);

/// m minus log_q of #{y : Q(y) = 0 and Q(x+y) = Q(x) for every x}.
unsigned rank_by_counting(const NaiveField& f, const QuadraticForm& form);

/// Rank and type from point counts: even rank compares the zero count with
/// q^(m-1); odd rank over odd q compares #{Q = 1} with q^(m-1).
RankType classify_by_counting(const NaiveField& f, const QuadraticForm& form);

/// zeros -> multiplicity over every linear L and every c in `constants`.
std::map<std::uint64_t, std::uint64_t> spectrum_by_counting(const NaiveField& f, const QuadraticForm& form,
                                                            const std::vector<std::uint32_t>& constants);

/// Constants of a coset class, found by squaring every element.
std::vector<std::uint32_t> class_members(const NaiveField& f, CosetClass c);

/// Weight -> frequency by evaluating every polynomial of the code at every
/// coordinate point.
std::map<std::uint64_t, std::uint64_t> code_distribution_by_counting(CodeFamily family, std::uint64_t q, unsigned m);

/// Product of random elementary operations, so invertible by construction.
Matrix random_invertible(const FiniteField& field, unsigned m, std::mt19937_64& rng);

QuadraticForm random_form(const FiniteField& field, unsigned m, std::mt19937_64& rng);

}  // namespace quadrm::oracle
