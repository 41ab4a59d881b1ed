#include "quadrm/linalg.hpp"

#include <string>
#include <utility>

#include "quadrm/error.hpp"

namespace quadrm {

std::uint64_t checked_power(std::uint64_t q, unsigned m, std::uint64_t budget, const char* what) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < m; ++i) {
    if (result > budget / q) {
      throw Error(ErrorCode::BudgetExceeded, std::string(what) + ": " + std::to_string(q) + "^" +
                                                 std::to_string(m) + " exceeds budget " +
                                                 std::to_string(budget));
    }
    result *= q;
  }
  if (result > budget) {
    throw Error(ErrorCode::BudgetExceeded, std::string(what) + ": exceeds budget " + std::to_string(budget));
  }
  return result;
}

FieldVector unrank_vector(const FiniteField& field, unsigned m, std::uint64_t index) {
  FieldVector v(m);
  for (std::size_t i = m; i-- > 0;) {
    v[i] = FieldElement{static_cast<std::uint32_t>(index % field.q())};
    index /= field.q();
  }
  return v;
}

std::uint64_t rank_vector(const FiniteField& field, std::span<const FieldElement> v) {
  std::uint64_t index = 0;
  for (FieldElement x : v) index = index * field.q() + x.index;
  return index;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = FieldElement{1};
  return m;
}

Matrix multiply(const FiniteField& field, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const FieldElement aik = a(i, k);
      if (aik.index == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out(i, j) = field.add(out(i, j), field.mul(aik, b(k, j)));
      }
    }
  }
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  }
  return out;
}

FieldVector apply(const FiniteField& field, const Matrix& a, std::span<const FieldElement> x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
  FieldVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    FieldElement acc{0};
    for (std::size_t j = 0; j < a.cols(); ++j) acc = field.add(acc, field.mul(a(i, j), x[j]));
    out[i] = acc;
  }
  return out;
}

std::vector<std::size_t> row_reduce(const FiniteField& field, Matrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.rows() && a(pivot, col).index == 0) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != row) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(pivot, j), a(row, j));
    }
    const FieldElement scale = field.inv(a(row, col));
    for (std::size_t j = 0; j < a.cols(); ++j) a(row, j) = field.mul(a(row, j), scale);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col).index == 0) continue;
      const FieldElement factor = a(r, col);
      for (std::size_t j = 0; j < a.cols(); ++j) {
        a(r, j) = field.sub(a(r, j), field.mul(factor, a(row, j)));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<FieldVector> null_space(const FiniteField& field, Matrix a) {
  const auto pivots = row_reduce(field, a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<FieldVector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    FieldVector v(a.cols(), FieldElement{0});
    v[free] = field.one();
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = field.neg(a(k, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t matrix_rank(const FiniteField& field, Matrix a) { return row_reduce(field, a).size(); }

FieldElement determinant(const FiniteField& field, Matrix a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = a.rows();
  FieldElement det = field.one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col).index == 0) ++pivot;
    if (pivot == n) return field.zero();
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      det = field.neg(det);
    }
    det = field.mul(det, a(col, col));
    const FieldElement inv = field.inv(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col).index == 0) continue;
      const FieldElement factor = field.mul(a(r, col), inv);
      for (std::size_t j = col; j < n; ++j) a(r, j) = field.sub(a(r, j), field.mul(factor, a(col, j)));
    }
  }
  return det;
}

}  // namespace quadrm
