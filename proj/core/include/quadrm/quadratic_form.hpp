#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quadrm/bigint.hpp"
#include "quadrm/field.hpp"
#include "quadrm/linalg.hpp"

namespace quadrm {

/// Type label of a quadratic form: Plus is "type 1", Minus is "type -1".
/// Even q with odd rank has no type.
enum class FormType { Plus, Minus, Untyped };

std::string_view to_string(FormType type) noexcept;
/// +1, -1, or 0 for Untyped.
int sign(FormType type) noexcept;
FormType parse_form_type(std::string_view text);

struct RankType {
  unsigned rank = 0;
  FormType type = FormType::Plus;

  friend bool operator==(const RankType&, const RankType&) = default;
};

/// Throws InconsistentRankType unless (rank, type) is admissible on GF(q)^m:
/// rank 0 is Plus, odd rank over even q is Untyped, everything else is signed.
void validate_rank_type(std::uint64_t q, unsigned m, RankType rt);

/// Every admissible (rank, type) pair on GF(q)^m, ordered by rank then Plus
/// before Minus.
std::vector<RankType> admissible_rank_types(std::uint64_t q, unsigned m);

/// Coefficient of x_i * x_j (0-based, i <= j) in the expanded polynomial.
struct Monomial {
  unsigned i = 0;
  unsigned j = 0;
  FieldElement coeff;
};

/// A quadratic form on GF(q)^m stored in its unique coefficient
/// representation: the upper triangle c_ij (i <= j) for even q, a symmetric
/// table with Q = sum_{i,j} c_ij x_i x_j for odd q.
class QuadraticForm {
 public:
  /// The zero form.
  QuadraticForm(FiniteField field, unsigned m);

  /// Builds the form whose expanded polynomial is the sum of the monomials
  /// (repeated monomials accumulate). Odd q halves off-diagonal coefficients.
  static QuadraticForm from_monomials(FiniteField field, unsigned m, std::span<const Monomial> terms);

  const FiniteField& field() const noexcept { return field_; }
  unsigned m() const noexcept { return m_; }

  /// Stored c_ij. For even q the lower triangle is zero.
  FieldElement coefficient(unsigned i, unsigned j) const;
  /// Sets c_ij; for odd q also c_ji. For even q requires i <= j.
  void set_coefficient(unsigned i, unsigned j, FieldElement value);

  /// Coefficient of x_i x_j (i <= j) in the expanded polynomial.
  FieldElement monomial(unsigned i, unsigned j) const { return monomials_[i * m_ + j]; }

  FieldElement evaluate(std::span<const FieldElement> x) const;
  bool is_zero() const noexcept;

  friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) {
    return a.field_ == b.field_ && a.m_ == b.m_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void refresh_monomial(unsigned i, unsigned j);

  FiniteField field_;
  unsigned m_;
  std::vector<FieldElement> coeffs_;     // m x m
  std::vector<FieldElement> monomials_;  // m x m, upper triangle used
};

struct BilinearForm {
  FiniteField field;
  unsigned m;
  Matrix gram;

  FieldElement evaluate(std::span<const FieldElement> x, std::span<const FieldElement> y) const;
};

/// An invertible change of variables x -> A x.
struct Substitution {
  FiniteField field;
  Matrix matrix;

  static Substitution identity(const FiniteField& field, unsigned m);
};

/// gram[i][j] = Q(e_i + e_j) - Q(e_i) - Q(e_j), gram[i][i] = Q(2e_i) - 2Q(e_i).
BilinearForm bilinear_of(const QuadraticForm& form);

std::vector<FieldVector> radical_bilinear(const BilinearForm& b);

/// Basis of Rad Q = Q^{-1}(0) intersected with Rad B_Q.
std::vector<FieldVector> radical_form(const QuadraticForm& form);

unsigned rank_of(const QuadraticForm& form);

/// Number of zeros of a form with the given rank and type on GF(q)^m.
BigInt zero_count_formula(RankType rt, std::uint64_t q, unsigned m);

inline constexpr std::uint64_t kDefaultMaxPoints = std::uint64_t{1} << 24;

/// Counts zeros by evaluating every vector; BudgetExceeded if q^m > max_points.
BigInt zero_count_exhaustive(const QuadraticForm& form, std::uint64_t max_points = kDefaultMaxPoints);

struct Diagonalization {
  std::vector<FieldElement> diagonal;  // a_1..a_r, all nonzero
  Substitution substitution;           // Q(A x) = sum a_i x_i^2
};

/// Congruence reduction of the symmetric coefficient table. Odd q only.
Diagonalization diagonalize(const QuadraticForm& form);

/// Type of sum a_i x_i^2 from delta = eta(prod a_i): tau = -delta when
/// q = 3 mod 4 and r = 2,3 mod 4, tau = delta otherwise.
FormType type_from_diagonal(const FiniteField& field, std::span<const FieldElement> diagonal);

RankType classify(const QuadraticForm& form, std::uint64_t max_points = kDefaultMaxPoints);

/// The fixed representative of the (rank, type) class. The free parameter
/// lambda is the smallest trace-one element (even q) or the smallest nonsquare
/// (odd q).
QuadraticForm canonical_form(const FiniteField& field, unsigned m, RankType rt);

/// Q'(x) = Q(A x). Throws SingularSubstitution or DimensionMismatch.
QuadraticForm substitute(const QuadraticForm& form, const Substitution& s);

/// For nonzero lambda over odd q, a 2x2 substitution with x1 = l1 y1 + l2 y2,
/// x2 = -l2 y1 + l1 y2 where l1^2 + l2^2 = lambda and l1 != l2, taking
/// x1^2 + x2^2 to lambda (y1^2 + y2^2).
Substitution two_squares_substitution(const FiniteField& field, FieldElement lambda);

/// Text form: "q=<q> m=<m>; c[i][j]=<index>; ..." with 1-based i <= j and
/// only nonzero entries listed.
std::string format_form(const QuadraticForm& form);
QuadraticForm parse_form(std::string_view text);
/// Parses just the "c[i][j]=<index>" entries for a known field and m.
QuadraticForm parse_coefficients(const FiniteField& field, unsigned m, std::string_view text);

}  // namespace quadrm
