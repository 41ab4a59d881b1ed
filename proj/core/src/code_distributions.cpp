#include "quadrm/code_distributions.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "parallel.hpp"
#include "quadrm/census.hpp"
#include "quadrm/coset_spectra.hpp"
#include "quadrm/error.hpp"

namespace quadrm {

std::string_view to_string(CodeFamily family) noexcept {
  switch (family) {
    case CodeFamily::RM2: return "rm2";
    case CodeFamily::HRM2: return "hrm2";
    case CodeFamily::PRM2: return "prm2";
  }
  return "rm2";
}

CodeFamily parse_code_family(std::string_view text) {
  if (text == "rm2") return CodeFamily::RM2;
  if (text == "hrm2") return CodeFamily::HRM2;
  if (text == "prm2") return CodeFamily::PRM2;
  throw Error(ErrorCode::ParseError, "unknown code family '" + std::string(text) + "'");
}

namespace {

std::uint64_t to_u64(const BigInt& value, const char* what) {
  if (value < 0 || value > std::numeric_limits<std::uint64_t>::max()) {
    throw Error(ErrorCode::UnsupportedParameters, std::string(what) + " does not fit in 64 bits");
  }
  return static_cast<std::uint64_t>(value);
}

std::string label(CodeFamily family, std::uint64_t q, unsigned m) {
  return std::string(to_string(family)) + "(q=" + std::to_string(q) + ", m=" + std::to_string(m) + ")";
}

void require_field_order(std::uint64_t q) {
  const auto pe = prime_power(q);
  if (!pe || q > FiniteField::kMaxOrder) {
    throw Error(ErrorCode::UnsupportedParameters, std::to_string(q) + " is not a supported prime power");
  }
}

// Adds a table row; rows may land on the same weight, so frequencies add.
void add_row(WeightDistribution& wd, const BigInt& weight, const BigInt& frequency) {
  if (frequency < 0 || weight < 0) {
    throw Error(ErrorCode::InternalInvariant, "negative weight or frequency in " +
                                                  label(wd.family, wd.q, wd.m) + ": weight " + weight.str() +
                                                  " frequency " + frequency.str());
  }
  if (frequency == 0) return;
  wd.entries[to_u64(weight, "weight")] += frequency;
}

WeightDistribution empty_distribution(CodeFamily family, std::uint64_t q, unsigned m) {
  WeightDistribution wd;
  wd.family = family;
  wd.q = q;
  wd.m = m;
  wd.params = code_parameters(family, q, m);
  return wd;
}

BigInt falling_product(std::uint64_t q, unsigned lo, unsigned hi) {
  BigInt out = 1;
  for (unsigned i = lo; i <= hi; ++i) out *= ipow(q, i) - 1;
  return out;
}

BigInt even_power_product(std::uint64_t q, unsigned j) {
  BigInt out = 1;
  for (unsigned i = 1; i <= j; ++i) out *= ipow(q, 2 * i) - 1;
  return out;
}

// v_{2j+1}(q, m) with the convention v_{2j+1} = 0 when 2j + 1 > m.
BigInt odd_count_or_zero(std::uint64_t q, unsigned m, unsigned j) {
  return 2 * j + 1 > m ? BigInt(0) : count_odd_rank(q, m, 2 * j + 1);
}

}  // namespace

CodeParameters code_parameters(CodeFamily family, std::uint64_t q, unsigned m) {
  require_field_order(q);
  auto unsupported = [&](const char* why) {
    throw Error(ErrorCode::UnsupportedParameters, label(family, q, m) + ": " + why);
  };
  if (m == 0) unsupported("m must be at least 1");
  const BigInt qm = ipow(q, m);
  switch (family) {
    case CodeFamily::RM2:
      if (q == 2) {
        if (m < 2) unsupported("binary RM(2,m) needs m >= 2");
        return {to_u64(qm, "n"), (m * m + m + 2) / 2ull, to_u64(ipow(2, m - 2), "d")};
      }
      return {to_u64(qm, "n"), (m * m + 3ull * m + 2) / 2, to_u64((q - 2) * ipow(q, m - 1), "d")};
    case CodeFamily::HRM2:
      if (m == 1) return {q, 1, q == 2 ? 1 : q - 1};
      return {to_u64(qm, "n"), m * (m + 1ull) / 2, to_u64(BigInt(q - 1) * (q - 1) * ipow(q, m - 2), "d")};
    case CodeFamily::PRM2:
      return {to_u64(exact_div(ipow(q, m + 1) - 1, BigInt(q - 1), "PRM length"), "n"), (m + 1ull) * (m + 2) / 2,
              to_u64(BigInt(q - 1) * ipow(q, m - 1), "d")};
  }
  unsupported("unknown family");
  return {};
}

BigInt WeightDistribution::total() const {
  BigInt sum = 0;
  for (const auto& [w, a] : entries) sum += a;
  return sum;
}

BigInt WeightDistribution::frequency(std::uint64_t weight) const {
  const auto it = entries.find(weight);
  return it == entries.end() ? BigInt(0) : it->second;
}

void WeightDistribution::check_invariants() const {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::InternalInvariant, label(family, q, m) + ": " + why);
  };
  if (frequency(0) != 1) fail("A_0 is " + frequency(0).str() + ", expected 1");
  const BigInt expected = ipow(q, static_cast<unsigned>(params.k));
  if (total() != expected) fail("frequencies sum to " + total().str() + ", expected q^k = " + expected.str());
  for (const auto& [w, a] : entries) {
    if (a <= 0) fail("nonpositive frequency at weight " + std::to_string(w));
    if (w > params.n) fail("weight " + std::to_string(w) + " exceeds length " + std::to_string(params.n));
  }
  const auto first_positive = entries.upper_bound(0);
  if (first_positive == entries.end() || first_positive->first != params.d) {
    fail("minimum positive weight differs from d = " + std::to_string(params.d));
  }
}

// ---------------------------------------------------------------------------
// Closed forms

WeightDistribution rm2_distribution(std::uint64_t q, unsigned m) {
  WeightDistribution wd = empty_distribution(CodeFamily::RM2, q, m);
  add_row(wd, 0, 1);

  if (q == 2) {
    BigInt middle = ipow(2, m) - 1;
    for (unsigned j = 1; j <= (m - 1) / 2; ++j) middle += count_odd_rank(2, m, 2 * j + 1);
    add_row(wd, ipow(2, m - 1), 2 * middle);
    for (unsigned j = 1; j <= m / 2; ++j) {
      const BigInt freq = exact_div(ipow(2, j * j + j) * falling_product(2, m - 2 * j + 1, m),
                                    even_power_product(2, j), "binary RM row");
      add_row(wd, ipow(2, m - 1) + ipow(2, m - j - 1), freq);
      add_row(wd, ipow(2, m - 1) - ipow(2, m - j - 1), freq);
    }
    add_row(wd, ipow(2, m), 1);
    return wd;
  }

  const BigInt Q = q;
  const BigInt qm = ipow(q, m);
  const BigInt base = qm - ipow(q, m - 1);
  for (unsigned j = 1; j <= m / 2; ++j) {
    for (int tau : {1, -1}) {
      const BigInt row1 = exact_div(ipow(q, j * j + 2 * j) * (ipow(q, j) + tau) * falling_product(q, m - 2 * j + 1, m),
                                    2 * even_power_product(q, j), "RM row q^(j^2+2j)");
      add_row(wd, base - tau * ipow(q, m - j - 1) * (Q - 1), row1);
      const BigInt row2 = (Q - 1) * ipow(q, 2 * j) * count_even_rank(q, m, 2 * j, tau) +
                          exact_div((Q - 1) * ipow(q, 2 * j + 1) * odd_count_or_zero(q, m, j), 2, "RM odd-rank row");
      add_row(wd, base + tau * ipow(q, m - j - 1), row2);
    }
  }
  const BigInt rank_one = exact_div(Q * (Q - 1) * (qm - 1), 2, "RM rank-one row");
  add_row(wd, qm - 2 * ipow(q, m - 1), rank_one);
  add_row(wd, qm, rank_one + Q - 1);

  BigInt residual = ipow(q, (m * m + 3 * m + 2) / 2);
  for (unsigned j = 1; j <= m / 2; ++j) {
    residual -= ipow(q, 2 * j + 1) * (count_even_rank(q, m, 2 * j, 1) + count_even_rank(q, m, 2 * j, -1));
  }
  for (unsigned j = 0; j <= m / 2; ++j) residual -= (Q - 1) * ipow(q, 2 * j + 1) * odd_count_or_zero(q, m, j);
  residual -= Q;

  const BigInt by_difference = ipow(q, static_cast<unsigned>(wd.params.k)) - wd.total();
  if (residual != by_difference) {
    throw Error(ErrorCode::ResidualMismatch, label(CodeFamily::RM2, q, m) + ": residual row " + residual.str() +
                                                 " but q^k minus other rows is " + by_difference.str());
  }
  add_row(wd, base, residual);
  return wd;
}

WeightDistribution hrm2_distribution(std::uint64_t q, unsigned m) {
  WeightDistribution wd = empty_distribution(CodeFamily::HRM2, q, m);
  add_row(wd, 0, 1);
  const BigInt Q = q;
  const BigInt base = ipow(q, m) - ipow(q, m - 1);
  BigInt odd = ipow(q, m) - 1;
  for (unsigned j = 1; j <= (m - 1) / 2; ++j) {
    odd += exact_div(ipow(q, j * j + j) * falling_product(q, m - 2 * j, m), even_power_product(q, j), "HRM odd row");
  }
  add_row(wd, base, odd);
  for (unsigned j = 1; j <= m / 2; ++j) {
    for (int tau : {1, -1}) {
      const BigInt freq = exact_div(ipow(q, j * j) * (ipow(q, j) + tau) * falling_product(q, m - 2 * j + 1, m),
                                    2 * even_power_product(q, j), "HRM even row");
      add_row(wd, base - tau * ipow(q, m - j - 1) * (Q - 1), freq);
    }
  }
  return wd;
}

WeightDistribution hrm_to_prm(const WeightDistribution& hrm) {
  if (hrm.family != CodeFamily::HRM2 || hrm.m < 2) {
    throw Error(ErrorCode::UnsupportedParameters, "hrm_to_prm needs an HRM2 distribution with m >= 2");
  }
  WeightDistribution prm = empty_distribution(CodeFamily::PRM2, hrm.q, hrm.m - 1);
  for (const auto& [w, a] : hrm.entries) {
    if (w % (hrm.q - 1) != 0) {
      throw Error(ErrorCode::NonDivisibleWeight,
                  "HRM weight " + std::to_string(w) + " not divisible by q-1 = " + std::to_string(hrm.q - 1));
    }
    prm.entries[w / (hrm.q - 1)] += a;
  }
  return prm;
}

WeightDistribution prm2_distribution(std::uint64_t q, unsigned m) {
  WeightDistribution wd = empty_distribution(CodeFamily::PRM2, q, m);
  add_row(wd, 0, 1);
  BigInt odd = ipow(q, m + 1) - 1;
  for (unsigned j = 1; j <= m / 2; ++j) {
    odd += exact_div(ipow(q, j * j + j) * falling_product(q, m - 2 * j + 1, m + 1), even_power_product(q, j),
                     "PRM odd row");
  }
  add_row(wd, ipow(q, m), odd);
  for (unsigned j = 1; j <= (m + 1) / 2; ++j) {
    for (int tau : {1, -1}) {
      const BigInt freq = exact_div(ipow(q, j * j) * (ipow(q, j) + tau) * falling_product(q, m - 2 * j + 2, m + 1),
                                    2 * even_power_product(q, j), "PRM even row");
      add_row(wd, ipow(q, m) - tau * ipow(q, m - j), freq);
    }
  }
  if (hrm_to_prm(hrm2_distribution(q, m + 1)) != wd) {
    throw Error(ErrorCode::InternalInvariant, label(CodeFamily::PRM2, q, m) + ": table disagrees with HRM2(q, m+1)");
  }
  return wd;
}

WeightDistribution coset_assembled_distribution(std::uint64_t q, unsigned m) {
  if (q == 2) throw Error(ErrorCode::UnsupportedParameters, "coset assembly needs q > 2; use the binary table");
  WeightDistribution wd = empty_distribution(CodeFamily::RM2, q, m);
  for (const RankType& rt : admissible_rank_types(q, m)) {
    // Odd ranks: the census only has the total and the coset multiset does
    // not depend on the type, so take the total once with the Plus multiset.
    if (rt.rank % 2 == 1 && rt.type == FormType::Minus) continue;
    const BigInt forms = count_forms(q, m, rt);
    const SpectrumMultiset weights = coset_weight_multiset(q, m, rt);
    for (const auto& [weight, mult] : weights.entries()) add_row(wd, weight, forms * mult);
  }
  return wd;
}

// ---------------------------------------------------------------------------
// Brute force

std::vector<FieldVector> projective_representatives(const FiniteField& field, unsigned dim) {
  std::vector<FieldVector> out;
  VectorOdometer it(field.q(), dim);
  while (it.next()) {
    const FieldVector& v = it.current();
    const auto lead = std::find_if(v.begin(), v.end(), [](FieldElement x) { return x.index != 0; });
    if (lead != v.end() && lead->index == 1) out.push_back(v);
  }
  return out;
}

std::vector<FieldVector> evaluation_domain(CodeFamily family, const FiniteField& field, unsigned m) {
  if (family == CodeFamily::PRM2) return projective_representatives(field, m + 1);
  std::vector<FieldVector> out;
  VectorOdometer it(field.q(), m);
  do {
    out.push_back(it.current());
  } while (it.next());
  return out;
}

namespace {

// Value vectors of the spanning monomials over the domain; codewords are all
// GF(q)-combinations of these rows.
std::vector<FieldVector> generator_rows(CodeFamily family, const FiniteField& f, unsigned vars,
                                        const std::vector<FieldVector>& domain) {
  std::vector<FieldVector> rows;
  for (unsigned i = 0; i < vars; ++i) {
    for (unsigned j = i; j < vars; ++j) {
      FieldVector row;
      row.reserve(domain.size());
      for (const auto& x : domain) row.push_back(f.mul(x[i], x[j]));
      rows.push_back(std::move(row));
    }
  }
  if (family == CodeFamily::RM2) {
    // Over GF(2) the linear monomials coincide with the squares x_i^2.
    if (f.q() > 2) {
      for (unsigned i = 0; i < vars; ++i) {
        FieldVector row;
        for (const auto& x : domain) row.push_back(x[i]);
        rows.push_back(std::move(row));
      }
    }
    rows.emplace_back(domain.size(), f.one());
  }
  return rows;
}

}  // namespace

WeightDistribution brute_force_distribution(CodeFamily family, std::uint64_t q, unsigned m,
                                            const BruteForceOptions& options) {
  WeightDistribution wd = empty_distribution(family, q, m);
  const FiniteField f = FiniteField::of_order(q);
  const std::uint64_t n = wd.params.n;
  const auto k = static_cast<unsigned>(wd.params.k);
  const std::uint64_t codewords = checked_power(q, k, options.max_symbol_evaluations / n, "brute-force codewords");

  const auto domain = evaluation_domain(family, f, m);
  const unsigned vars = family == CodeFamily::PRM2 ? m + 1 : m;
  const auto rows = generator_rows(family, f, vars, domain);
  if (rows.size() != k || domain.size() != n) {
    throw Error(ErrorCode::InternalInvariant, label(family, q, m) + ": generator shape disagrees with [n, k]");
  }

  auto tally = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<std::uint64_t> counts(n + 1, 0);
    if (begin >= end) return counts;
    // digits[0] is the most significant coefficient; partial[t] holds the
    // sum of rows 0..t weighted by their digits.
    std::vector<std::uint32_t> digits(k);
    std::uint64_t rest = begin;
    for (std::size_t t = k; t-- > 0;) {
      digits[t] = static_cast<std::uint32_t>(rest % q);
      rest /= q;
    }
    std::vector<FieldVector> partial(k, FieldVector(n));
    auto recompute_from = [&](std::size_t t0) {
      for (std::size_t t = t0; t < k; ++t) {
        const FieldElement c{digits[t]};
        for (std::uint64_t i = 0; i < n; ++i) {
          const FieldElement prev = t == 0 ? f.zero() : partial[t - 1][i];
          partial[t][i] = f.add(prev, f.mul(c, rows[t][i]));
        }
      }
    };
    recompute_from(0);
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      const FieldVector& word = partial[k - 1];
      const auto weight = static_cast<std::uint64_t>(
          std::count_if(word.begin(), word.end(), [](FieldElement x) { return x.index != 0; }));
      ++counts[weight];
      if (idx + 1 == end) break;
      std::size_t t = k - 1;
      while (++digits[t] == q) {
        digits[t] = 0;
        --t;
      }
      recompute_from(t);
    }
    return counts;
  };

  for (const auto& part : detail::run_partitioned(codewords, options.workers, tally)) {
    for (std::uint64_t w = 0; w <= n; ++w) {
      if (part[w] != 0) wd.entries[w] += part[w];
    }
  }
  return wd;
}

std::string weight_enumerator_text(const WeightDistribution& wd) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, a] : wd.entries) {
    if (!first) os << " + ";
    first = false;
    if (w == 0) {
      os << a;
    } else if (a == 1) {
      os << "Z^" << w;
    } else {
      os << a << "*Z^" << w;
    }
  }
  return first ? std::string("0") : os.str();
}

}  // namespace quadrm
