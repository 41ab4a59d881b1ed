#include "quadrm/quadratic_form.hpp"

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>

#include "quadrm/error.hpp"

namespace quadrm {

std::string_view to_string(FormType type) noexcept {
  switch (type) {
    case FormType::Plus: return "plus";
    case FormType::Minus: return "minus";
    case FormType::Untyped: return "untyped";
  }
  return "untyped";
}

int sign(FormType type) noexcept {
  switch (type) {
    case FormType::Plus: return 1;
    case FormType::Minus: return -1;
    case FormType::Untyped: return 0;
  }
  return 0;
}

FormType parse_form_type(std::string_view text) {
  if (text == "plus" || text == "+1" || text == "1" || text == "+") return FormType::Plus;
  if (text == "minus" || text == "-1" || text == "-") return FormType::Minus;
  if (text == "untyped" || text == "none") return FormType::Untyped;
  throw Error(ErrorCode::ParseError, "unknown form type '" + std::string(text) + "'");
}

void validate_rank_type(std::uint64_t q, unsigned m, RankType rt) {
  const bool even_q = q % 2 == 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::InconsistentRankType, "rank " + std::to_string(rt.rank) + " type " +
                                                     std::string(to_string(rt.type)) + " on GF(" +
                                                     std::to_string(q) + ")^" + std::to_string(m) + ": " + why);
  };
  if (rt.rank > m) fail("rank exceeds the number of variables");
  if (rt.rank == 0) {
    if (rt.type != FormType::Plus) fail("the zero form has type plus");
    return;
  }
  if (even_q && rt.rank % 2 == 1) {
    if (rt.type != FormType::Untyped) fail("odd rank over even q carries no type");
    return;
  }
  if (rt.type == FormType::Untyped) fail("a type (plus or minus) is required");
}

std::vector<RankType> admissible_rank_types(std::uint64_t q, unsigned m) {
  std::vector<RankType> out{{0, FormType::Plus}};
  for (unsigned r = 1; r <= m; ++r) {
    if (q % 2 == 0 && r % 2 == 1) {
      out.push_back({r, FormType::Untyped});
    } else {
      out.push_back({r, FormType::Plus});
      out.push_back({r, FormType::Minus});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// QuadraticForm

QuadraticForm::QuadraticForm(FiniteField field, unsigned m)
    : field_(std::move(field)),
      m_(m),
      coeffs_(static_cast<std::size_t>(m) * m, FieldElement{0}),
      monomials_(static_cast<std::size_t>(m) * m, FieldElement{0}) {}

QuadraticForm QuadraticForm::from_monomials(FiniteField field, unsigned m, std::span<const Monomial> terms) {
  std::vector<FieldElement> upper(static_cast<std::size_t>(m) * m, FieldElement{0});
  for (const Monomial& t : terms) {
    unsigned i = std::min(t.i, t.j);
    unsigned j = std::max(t.i, t.j);
    if (j >= m) throw Error(ErrorCode::DimensionMismatch, "monomial index outside the form");
    upper[i * m + j] = field.add(upper[i * m + j], t.coeff);
  }
  QuadraticForm form(field, m);
  const FieldElement half = field.is_even() ? field.zero() : field.inv(field.from_int(2));
  for (unsigned i = 0; i < m; ++i) {
    for (unsigned j = i; j < m; ++j) {
      const FieldElement u = upper[i * m + j];
      form.set_coefficient(i, j, (i == j || field.is_even()) ? u : field.mul(u, half));
    }
  }
  return form;
}

FieldElement QuadraticForm::coefficient(unsigned i, unsigned j) const {
  if (i >= m_ || j >= m_) throw Error(ErrorCode::DimensionMismatch, "coefficient index outside the form");
  return coeffs_[i * m_ + j];
}

void QuadraticForm::set_coefficient(unsigned i, unsigned j, FieldElement value) {
  if (i >= m_ || j >= m_) throw Error(ErrorCode::DimensionMismatch, "coefficient index outside the form");
  if (value.index >= field_.q()) throw Error(ErrorCode::OutOfRange, "coefficient outside the field");
  if (field_.is_even()) {
    if (i > j) throw Error(ErrorCode::OutOfRange, "even-q forms store only c_ij with i <= j");
    coeffs_[i * m_ + j] = value;
  } else {
    coeffs_[i * m_ + j] = value;
    coeffs_[j * m_ + i] = value;
  }
  refresh_monomial(std::min(i, j), std::max(i, j));
}

void QuadraticForm::refresh_monomial(unsigned i, unsigned j) {
  const FieldElement c = coeffs_[i * m_ + j];
  monomials_[i * m_ + j] = (i == j || field_.is_even()) ? c : field_.add(c, c);
}

FieldElement QuadraticForm::evaluate(std::span<const FieldElement> x) const {
  if (x.size() != m_) {
    throw Error(ErrorCode::DimensionMismatch,
                "point has " + std::to_string(x.size()) + " coordinates, form has " + std::to_string(m_));
  }
  FieldElement total{0};
  for (unsigned i = 0; i < m_; ++i) {
    if (x[i].index == 0) continue;
    FieldElement row{0};
    for (unsigned j = i; j < m_; ++j) row = field_.add(row, field_.mul(monomials_[i * m_ + j], x[j]));
    total = field_.add(total, field_.mul(x[i], row));
  }
  return total;
}

bool QuadraticForm::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](FieldElement c) { return c.index == 0; });
}

FieldElement BilinearForm::evaluate(std::span<const FieldElement> x, std::span<const FieldElement> y) const {
  if (x.size() != m || y.size() != m) throw Error(ErrorCode::DimensionMismatch, "bilinear form arity");
  FieldElement total{0};
  for (unsigned i = 0; i < m; ++i) {
    for (unsigned j = 0; j < m; ++j) total = field.add(total, field.mul(x[i], field.mul(gram(i, j), y[j])));
  }
  return total;
}

Substitution Substitution::identity(const FiniteField& field, unsigned m) {
  return Substitution{field, Matrix::identity(m)};
}

// ---------------------------------------------------------------------------
// Radicals and rank

BilinearForm bilinear_of(const QuadraticForm& form) {
  const FiniteField& f = form.field();
  const unsigned m = form.m();
  Matrix gram(m, m);
  FieldVector point(m, f.zero());
  auto value_at = [&](std::initializer_list<std::pair<unsigned, FieldElement>> coords) {
    std::fill(point.begin(), point.end(), f.zero());
    for (auto [idx, val] : coords) point[idx] = f.add(point[idx], val);
    return form.evaluate(point);
  };
  const FieldElement two = f.from_int(2);
  for (unsigned i = 0; i < m; ++i) {
    const FieldElement qi = value_at({{i, f.one()}});
    gram(i, i) = f.sub(value_at({{i, two}}), f.mul(two, qi));
    for (unsigned j = i + 1; j < m; ++j) {
      const FieldElement qj = value_at({{j, f.one()}});
      const FieldElement qij = value_at({{i, f.one()}, {j, f.one()}});
      gram(i, j) = f.sub(f.sub(qij, qi), qj);
      gram(j, i) = gram(i, j);
    }
  }
  return BilinearForm{f, m, std::move(gram)};
}

std::vector<FieldVector> radical_bilinear(const BilinearForm& b) { return null_space(b.field, b.gram); }

std::vector<FieldVector> radical_form(const QuadraticForm& form) {
  auto basis = radical_bilinear(bilinear_of(form));
  const FiniteField& f = form.field();
  if (!f.is_even() || basis.empty()) return basis;

  // On Rad B_Q the form is Q(sum t_i r_i) = (sum t_i sqrt(Q(r_i)))^2, so its
  // zero set is the kernel of a linear functional.
  std::vector<FieldElement> roots;
  roots.reserve(basis.size());
  for (const auto& r : basis) roots.push_back(f.square_root_even(form.evaluate(r)));
  const auto pivot = std::find_if(roots.begin(), roots.end(), [](FieldElement x) { return x.index != 0; });
  if (pivot == roots.end()) return basis;
  const std::size_t k = static_cast<std::size_t>(pivot - roots.begin());
  const FieldElement pivot_inv = f.inv(roots[k]);

  std::vector<FieldVector> kernel;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (i == k) continue;
    const FieldElement factor = f.mul(roots[i], pivot_inv);
    FieldVector v = basis[i];
    for (std::size_t c = 0; c < v.size(); ++c) v[c] = f.sub(v[c], f.mul(factor, basis[k][c]));
    kernel.push_back(std::move(v));
  }
  return kernel;
}

unsigned rank_of(const QuadraticForm& form) {
  return form.m() - static_cast<unsigned>(radical_form(form).size());
}

// ---------------------------------------------------------------------------
// Zero counts

BigInt zero_count_formula(RankType rt, std::uint64_t q, unsigned m) {
  validate_rank_type(q, m, rt);
  if (m == 0) return 1;
  const BigInt base = ipow(q, m - 1);
  if (rt.rank % 2 == 1) return base;
  const BigInt delta = ipow(q, m - (rt.rank + 2) / 2) * (q - 1);
  return rt.type == FormType::Plus ? BigInt(base + delta) : BigInt(base - delta);
}

BigInt zero_count_exhaustive(const QuadraticForm& form, std::uint64_t max_points) {
  checked_power(form.field().q(), form.m(), max_points, "zero count");
  std::uint64_t zeros = 0;
  VectorOdometer it(form.field().q(), form.m());
  do {
    if (form.evaluate(it.current()).index == 0) ++zeros;
  } while (it.next());
  return BigInt(zeros);
}

// ---------------------------------------------------------------------------
// Diagonalization and classification

namespace {

// Congruence step on the symmetric table plus the matching column operation
// on the accumulated substitution: column dst += s * column src.
void add_multiple(const FiniteField& f, Matrix& sym, Matrix& sub, unsigned src, unsigned dst, FieldElement s) {
  const std::size_t n = sym.rows();
  for (std::size_t r = 0; r < n; ++r) sym(r, dst) = f.add(sym(r, dst), f.mul(s, sym(r, src)));
  for (std::size_t c = 0; c < n; ++c) sym(dst, c) = f.add(sym(dst, c), f.mul(s, sym(src, c)));
  for (std::size_t r = 0; r < n; ++r) sub(r, dst) = f.add(sub(r, dst), f.mul(s, sub(r, src)));
}

void swap_variables(Matrix& sym, Matrix& sub, unsigned a, unsigned b) {
  if (a == b) return;
  const std::size_t n = sym.rows();
  for (std::size_t r = 0; r < n; ++r) std::swap(sym(r, a), sym(r, b));
  for (std::size_t c = 0; c < n; ++c) std::swap(sym(a, c), sym(b, c));
  for (std::size_t r = 0; r < n; ++r) std::swap(sub(r, a), sub(r, b));
}

}  // namespace

Diagonalization diagonalize(const QuadraticForm& form) {
  const FiniteField& f = form.field();
  if (f.is_even()) throw Error(ErrorCode::EvenCharacteristic, "diagonalization needs odd q");
  const unsigned m = form.m();
  Matrix sym(m, m);
  for (unsigned i = 0; i < m; ++i) {
    for (unsigned j = 0; j < m; ++j) sym(i, j) = form.coefficient(i, j);
  }
  Matrix sub = Matrix::identity(m);

  unsigned k = 0;
  for (; k < m; ++k) {
    unsigned pivot = k;
    while (pivot < m && sym(pivot, pivot).index == 0) ++pivot;
    if (pivot == m) {
      // No diagonal pivot left: replace x_j by x_j + x_i for the first
      // nonzero off-diagonal entry, which makes the (i, i) entry 2 c_ij.
      bool found = false;
      for (unsigned i = k; i < m && !found; ++i) {
        for (unsigned j = i + 1; j < m && !found; ++j) {
          if (sym(i, j).index != 0) {
            add_multiple(f, sym, sub, j, i, f.one());
            pivot = i;
            found = true;
          }
        }
      }
      if (!found) break;
    }
    swap_variables(sym, sub, k, pivot);
    const FieldElement inv = f.inv(sym(k, k));
    for (unsigned l = k + 1; l < m; ++l) {
      if (sym(k, l).index == 0) continue;
      add_multiple(f, sym, sub, k, l, f.neg(f.mul(sym(k, l), inv)));
    }
  }

  Diagonalization out{{}, Substitution{f, std::move(sub)}};
  for (unsigned i = 0; i < k; ++i) out.diagonal.push_back(sym(i, i));
  return out;
}

FormType type_from_diagonal(const FiniteField& field, std::span<const FieldElement> diagonal) {
  if (field.is_even()) throw Error(ErrorCode::EvenCharacteristic, "type from diagonal needs odd q");
  FieldElement product = field.one();
  for (FieldElement a : diagonal) {
    if (a.index == 0) throw Error(ErrorCode::ZeroCoefficient, "diagonal coefficients must be nonzero");
    product = field.mul(product, a);
  }
  const std::size_t r = diagonal.size();
  if (r == 0) return FormType::Plus;
  int tau = field.quadratic_character(product);
  if (field.q() % 4 == 3 && (r % 4 == 2 || r % 4 == 3)) tau = -tau;
  return tau > 0 ? FormType::Plus : FormType::Minus;
}

RankType classify(const QuadraticForm& form, std::uint64_t max_points) {
  const FiniteField& f = form.field();
  if (!f.is_even()) {
    const Diagonalization d = diagonalize(form);
    const auto r = static_cast<unsigned>(d.diagonal.size());
    return {r, r == 0 ? FormType::Plus : type_from_diagonal(f, d.diagonal)};
  }
  const unsigned r = rank_of(form);
  if (r == 0) return {0, FormType::Plus};
  if (r % 2 == 1) return {r, FormType::Untyped};
  const BigInt zeros = zero_count_exhaustive(form, max_points);
  if (zeros == zero_count_formula({r, FormType::Plus}, f.q(), form.m())) return {r, FormType::Plus};
  if (zeros == zero_count_formula({r, FormType::Minus}, f.q(), form.m())) return {r, FormType::Minus};
  throw Error(ErrorCode::InternalInvariant, "zero count " + zeros.str() + " matches neither type at rank " +
                                                std::to_string(r));
}

QuadraticForm canonical_form(const FiniteField& field, unsigned m, RankType rt) {
  validate_rank_type(field.q(), m, rt);
  std::vector<Monomial> terms;
  const unsigned r = rt.rank;
  if (r == 0) return QuadraticForm(field, m);
  const FieldElement one = field.one();

  // Hyperbolic pairs x_{2i-1} x_{2i} (0-based: x_{2i} x_{2i+1}).
  const unsigned pairs = (r % 2 == 1) ? (r - 1) / 2 : r / 2 - 1;
  for (unsigned i = 0; i < pairs; ++i) terms.push_back({2 * i, 2 * i + 1, one});

  if (field.is_even()) {
    if (r % 2 == 1) {
      terms.push_back({r - 1, r - 1, one});
    } else if (rt.type == FormType::Plus) {
      terms.push_back({r - 2, r - 1, one});
    } else {
      terms.push_back({r - 2, r - 2, one});
      terms.push_back({r - 2, r - 1, one});
      terms.push_back({r - 1, r - 1, field.smallest_trace_one()});
    }
  } else {
    const FieldElement tail = rt.type == FormType::Plus ? one : field.smallest_nonsquare();
    if (r % 2 == 1) {
      terms.push_back({r - 1, r - 1, tail});
    } else {
      terms.push_back({r - 2, r - 2, one});
      terms.push_back({r - 1, r - 1, field.neg(tail)});
    }
  }
  return QuadraticForm::from_monomials(field, m, terms);
}

QuadraticForm substitute(const QuadraticForm& form, const Substitution& s) {
  const FiniteField& f = form.field();
  const unsigned m = form.m();
  if (!(s.field == f)) throw Error(ErrorCode::FieldMismatch, "substitution over a different field");
  if (s.matrix.rows() != m || s.matrix.cols() != m) {
    throw Error(ErrorCode::DimensionMismatch, "substitution must be " + std::to_string(m) + "x" + std::to_string(m));
  }
  if (determinant(f, s.matrix).index == 0) throw Error(ErrorCode::SingularSubstitution, "matrix is singular");

  // Q(Ax) = sum_{i<=j} u_ij (Ax)_i (Ax)_j; collect x_k x_l into t(k, l).
  Matrix t(m, m);
  for (unsigned i = 0; i < m; ++i) {
    for (unsigned j = i; j < m; ++j) {
      const FieldElement u = form.monomial(i, j);
      if (u.index == 0) continue;
      for (unsigned k = 0; k < m; ++k) {
        const FieldElement uk = f.mul(u, s.matrix(i, k));
        if (uk.index == 0) continue;
        for (unsigned l = 0; l < m; ++l) t(k, l) = f.add(t(k, l), f.mul(uk, s.matrix(j, l)));
      }
    }
  }
  std::vector<Monomial> terms;
  for (unsigned k = 0; k < m; ++k) {
    terms.push_back({k, k, t(k, k)});
    for (unsigned l = k + 1; l < m; ++l) terms.push_back({k, l, f.add(t(k, l), t(l, k))});
  }
  return QuadraticForm::from_monomials(f, m, terms);
}

Substitution two_squares_substitution(const FiniteField& field, FieldElement lambda) {
  if (field.is_even()) throw Error(ErrorCode::EvenCharacteristic, "two-squares substitution needs odd q");
  if (lambda.index == 0) throw Error(ErrorCode::ZeroCoefficient, "lambda must be nonzero");
  for (std::uint32_t a = 0; a < field.q(); ++a) {
    const FieldElement l1{a};
    for (std::uint32_t b = 0; b < field.q(); ++b) {
      const FieldElement l2{b};
      if (l1 == l2) continue;
      if (field.add(field.mul(l1, l1), field.mul(l2, l2)) != lambda) continue;
      Matrix a2(2, 2);
      a2(0, 0) = l1;
      a2(0, 1) = l2;
      a2(1, 0) = field.neg(l2);
      a2(1, 1) = l1;
      return Substitution{field, std::move(a2)};
    }
  }
  throw Error(ErrorCode::InternalInvariant, "no representation as a sum of two distinct squares");
}

// ---------------------------------------------------------------------------
// Text format

std::string format_form(const QuadraticForm& form) {
  std::ostringstream os;
  os << "q=" << form.field().q() << " m=" << form.m();
  for (unsigned i = 0; i < form.m(); ++i) {
    for (unsigned j = i; j < form.m(); ++j) {
      const FieldElement c = form.coefficient(i, j);
      if (c.index != 0) os << "; c[" << i + 1 << "][" << j + 1 << "]=" << c.index;
    }
  }
  return os.str();
}

namespace {

std::vector<std::string> split_entries(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (char ch : text) {
    if (ch == ';' || ch == '\n' || ch == ',') {
      out.push_back(current);
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  out.push_back(current);
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }),
            out.end());
  return out;
}

void apply_entries(QuadraticForm& form, const std::vector<std::string>& entries, std::size_t first) {
  static const std::regex entry_re(R"(^\s*c\s*\[\s*(\d+)\s*\]\s*\[\s*(\d+)\s*\]\s*=\s*(\d+)\s*$)");
  std::set<std::pair<unsigned, unsigned>> seen;
  for (std::size_t k = first; k < entries.size(); ++k) {
    std::smatch match;
    if (!std::regex_match(entries[k], match, entry_re)) {
      throw Error(ErrorCode::ParseError, "expected c[i][j]=<index>, got '" + entries[k] + "'");
    }
    const unsigned long i = std::stoul(match[1]);
    const unsigned long j = std::stoul(match[2]);
    const unsigned long value = std::stoul(match[3]);
    if (i < 1 || j < 1 || i > form.m() || j > form.m()) {
      throw Error(ErrorCode::DimensionMismatch, "entry '" + entries[k] + "' outside 1.." + std::to_string(form.m()));
    }
    if (i > j) throw Error(ErrorCode::ParseError, "entries must satisfy i <= j: '" + entries[k] + "'");
    if (value >= form.field().q()) throw Error(ErrorCode::ParseError, "coefficient index out of range: '" + entries[k] + "'");
    if (!seen.insert({i, j}).second) throw Error(ErrorCode::ParseError, "duplicate entry '" + entries[k] + "'");
    form.set_coefficient(static_cast<unsigned>(i - 1), static_cast<unsigned>(j - 1),
                         FieldElement{static_cast<std::uint32_t>(value)});
  }
}

}  // namespace

QuadraticForm parse_coefficients(const FiniteField& field, unsigned m, std::string_view text) {
  QuadraticForm form(field, m);
  apply_entries(form, split_entries(text), 0);
  return form;
}

QuadraticForm parse_form(std::string_view text) {
  static const std::regex header_re(R"(^\s*q\s*=\s*(\d+)\s+m\s*=\s*(\d+)\s*$)");
  const auto entries = split_entries(text);
  std::smatch match;
  if (entries.empty() || !std::regex_match(entries.front(), match, header_re)) {
    throw Error(ErrorCode::ParseError, "form text must start with 'q=<q> m=<m>'");
  }
  const std::uint64_t q = std::stoull(match[1]);
  const unsigned long m = std::stoul(match[2]);
  if (m > 64) throw Error(ErrorCode::ParseError, "m too large");
  QuadraticForm form(FiniteField::of_order(q), static_cast<unsigned>(m));
  apply_entries(form, entries, 1);
  return form;
}

}  // namespace quadrm
