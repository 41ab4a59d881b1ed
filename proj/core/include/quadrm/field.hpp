#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace quadrm {

/// An element of GF(p^e) identified by its polynomial-basis coordinates read
/// as base-p digits, constant term least significant. Index 0 is zero and
/// index 1 is one; the prime subfield is {0, ..., p-1}.
struct FieldElement {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

bool is_prime(std::uint64_t n);

/// Splits q into (p, e) with q = p^e, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint32_t, unsigned>> prime_power(std::uint64_t q);

/// GF(p^e) with a deterministic modulus: the smallest monic irreducible
/// polynomial of degree e when polynomials are ordered by their base-p digit
/// encoding. Cheap to copy; the arithmetic tables are shared and immutable.
class FiniteField {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 20;

  /// Throws NonPrime, FieldTooLarge (q > 2^20) or OutOfRange (e == 0).
  FiniteField(std::uint32_t p, unsigned e);

  /// Convenience for a prime power q; throws NonPrime when q is not one.
  static FiniteField of_order(std::uint64_t q);

  std::uint32_t p() const noexcept;
  unsigned e() const noexcept;
  std::uint32_t q() const noexcept;
  bool is_even() const noexcept { return p() == 2; }

  /// Modulus coefficients, constant term first; length e + 1, last entry 1.
  std::span<const std::uint32_t> modulus() const noexcept;

  FieldElement zero() const noexcept { return FieldElement{0}; }
  FieldElement one() const noexcept { return FieldElement{1}; }
  /// Throws OutOfRange unless index < q.
  FieldElement element(std::uint32_t index) const;
  /// The image of an integer in the prime subfield.
  FieldElement from_int(std::int64_t value) const noexcept;

  FieldElement add(FieldElement a, FieldElement b) const noexcept;
  FieldElement sub(FieldElement a, FieldElement b) const noexcept;
  FieldElement neg(FieldElement a) const noexcept;
  FieldElement mul(FieldElement a, FieldElement b) const noexcept;
  /// Throws InverseOfZero.
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }
  FieldElement pow(FieldElement a, std::uint64_t exponent) const noexcept;

  /// Absolute trace a + a^p + ... + a^(p^(e-1)); the result lies in GF(p).
  FieldElement trace(FieldElement a) const noexcept;

  /// +1 for nonzero squares, -1 for nonsquares, 0 for zero, computed as
  /// a^((q-1)/2). Throws EvenCharacteristic.
  int quadratic_character(FieldElement a) const;

  /// Throws EvenCharacteristic.
  FieldElement smallest_nonsquare() const;
  /// Throws OddCharacteristic.
  FieldElement smallest_trace_one() const;
  /// The unique b with b^2 = a in characteristic 2. Throws OddCharacteristic.
  FieldElement square_root_even(FieldElement a) const;

  /// Generator of the multiplicative group used for the log tables.
  FieldElement primitive_element() const noexcept;

  std::string describe() const;

  friend bool operator==(const FiniteField& a, const FiniteField& b) noexcept {
    return a.p() == b.p() && a.e() == b.e();
  }

 private:
  struct Tables;
  std::shared_ptr<const Tables> tables_;
};

}  // namespace quadrm
