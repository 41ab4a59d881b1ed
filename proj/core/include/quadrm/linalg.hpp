#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "quadrm/field.hpp"

namespace quadrm {

using FieldVector = std::vector<FieldElement>;

/// q^m, or BudgetExceeded when it is larger than `budget`.
std::uint64_t checked_power(std::uint64_t q, unsigned m, std::uint64_t budget, const char* what);

/// The index-th vector of GF(q)^m. Leftmost coordinate is the most
/// significant base-q digit of the element indices, so index 0 is the zero
/// vector and enumeration order is lexicographic.
FieldVector unrank_vector(const FiniteField& field, unsigned m, std::uint64_t index);
std::uint64_t rank_vector(const FiniteField& field, std::span<const FieldElement> v);

/// Steps through GF(q)^m in unrank_vector order without re-deriving digits.
class VectorOdometer {
 public:
  VectorOdometer(std::uint32_t q, unsigned m) : q_(q), digits_(m, FieldElement{0}) {}

  const FieldVector& current() const noexcept { return digits_; }

  /// Advances to the next vector; returns false after wrapping to zero.
  bool next() noexcept {
    for (std::size_t i = digits_.size(); i-- > 0;) {
      if (++digits_[i].index < q_) return true;
      digits_[i].index = 0;
    }
    return false;
  }

 private:
  std::uint32_t q_;
  FieldVector digits_;
};

/// Dense row-major matrix over a finite field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  FieldElement& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  FieldElement operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElement> data_;
};

Matrix multiply(const FiniteField& field, const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
FieldVector apply(const FiniteField& field, const Matrix& a, std::span<const FieldElement> x);

/// Reduced row echelon form, pivoting on the smallest available column.
/// Returns the pivot columns in order.
std::vector<std::size_t> row_reduce(const FiniteField& field, Matrix& a);

/// Null space basis {v : a v = 0}: one vector per free column, with a 1 in
/// that column.
std::vector<FieldVector> null_space(const FiniteField& field, Matrix a);
std::size_t matrix_rank(const FiniteField& field, Matrix a);
FieldElement determinant(const FiniteField& field, Matrix a);

}  // namespace quadrm
