#include "quadrm/coset_spectra.hpp"

#include <string>

#include "parallel.hpp"
#include "quadrm/error.hpp"

namespace quadrm {

void SpectrumMultiset::add(const BigInt& value, const BigInt& multiplicity) {
  if (multiplicity < 0) {
    throw Error(ErrorCode::InternalInvariant,
                "negative multiplicity " + multiplicity.str() + " for value " + value.str());
  }
  if (multiplicity == 0) return;
  entries_[value] += multiplicity;
}

BigInt SpectrumMultiset::population() const {
  BigInt sum = 0;
  for (const auto& [value, mult] : entries_) sum += mult;
  return sum;
}

BigInt SpectrumMultiset::multiplicity(const BigInt& value) const {
  const auto it = entries_.find(value);
  return it == entries_.end() ? BigInt(0) : it->second;
}

SpectrumMultiset& SpectrumMultiset::operator+=(const SpectrumMultiset& other) {
  for (const auto& [value, mult] : other.entries_) add(value, mult);
  return *this;
}

SpectrumMultiset SpectrumMultiset::scaled(const BigInt& factor) const {
  SpectrumMultiset out;
  for (const auto& [value, mult] : entries_) out.add(value, mult * factor);
  return out;
}

std::string_view to_string(CosetClass c) noexcept {
  switch (c) {
    case CosetClass::Zero: return "zero";
    case CosetClass::Square: return "square";
    case CosetClass::NonSquare: return "nonsquare";
    case CosetClass::AnyNonzero: return "nonzero";
  }
  return "zero";
}

CosetClass parse_coset_class(std::string_view text) {
  if (text == "zero") return CosetClass::Zero;
  if (text == "square") return CosetClass::Square;
  if (text == "nonsquare") return CosetClass::NonSquare;
  if (text == "nonzero") return CosetClass::AnyNonzero;
  throw Error(ErrorCode::ParseError, "unknown c-class '" + std::string(text) + "'");
}

std::uint64_t class_size(std::uint64_t q, CosetClass c) {
  switch (c) {
    case CosetClass::Zero: return 1;
    case CosetClass::Square:
    case CosetClass::NonSquare: return (q - 1) / 2;
    case CosetClass::AnyNonzero: return q - 1;
  }
  return 0;
}

void validate_query(const CosetQuery& query) {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::InconsistentQuery, "c-class " + std::string(to_string(query.c_class)) + " at rank " +
                                                  std::to_string(query.rank_type.rank) + " over GF(" +
                                                  std::to_string(query.q) + "): " + why);
  };
  if (query.m == 0) fail("m must be at least 1");
  try {
    validate_rank_type(query.q, query.m, query.rank_type);
  } catch (const Error& e) {
    fail(e.what());
  }
  const bool even_q = query.q % 2 == 0;
  const bool odd_rank = query.rank_type.rank % 2 == 1;
  switch (query.c_class) {
    case CosetClass::Zero: break;
    case CosetClass::Square:
    case CosetClass::NonSquare:
      if (even_q || !odd_rank) fail("square/nonsquare split exists only for odd q and odd rank");
      break;
    case CosetClass::AnyNonzero:
      if (!even_q && odd_rank) fail("odd q with odd rank splits c into square and nonsquare");
      break;
  }
}

std::vector<CosetClass> coset_classes(std::uint64_t q, unsigned rank) {
  if (q % 2 == 1 && rank % 2 == 1) return {CosetClass::Zero, CosetClass::Square, CosetClass::NonSquare};
  return {CosetClass::Zero, CosetClass::AnyNonzero};
}

namespace {

struct Powers {
  std::uint64_t q;
  unsigned m;
  BigInt pow(unsigned e) const { return ipow(q, e); }
};

// Per single constant c; the caller scales by the class size.
SpectrumMultiset rank_zero_per_c(const Powers& P, bool c_is_zero) {
  SpectrumMultiset s;
  s.add(c_is_zero ? P.pow(P.m) : BigInt(0), 1);
  s.add(P.pow(P.m - 1), P.pow(P.m) - 1);
  return s;
}

SpectrumMultiset even_rank_per_c(const Powers& P, unsigned r, int tau, bool c_is_zero) {
  const BigInt base = P.pow(P.m - 1);
  const BigInt shift = P.pow(P.m - (r + 2) / 2);
  const BigInt small = P.pow((r - 2) / 2);
  const BigInt q = P.q;
  SpectrumMultiset s;
  s.add(base, P.pow(P.m) - P.pow(r));
  if (c_is_zero) {
    s.add(base + tau * shift * (q - 1), P.pow(r - 1) + tau * small * (q - 1));
    s.add(base - tau * shift, (q - 1) * (P.pow(r - 1) - tau * small));
  } else {
    s.add(base + tau * shift * (q - 1), P.pow(r - 1) - tau * small);
    s.add(base - tau * shift, (q - 1) * P.pow(r - 1) + tau * small);
  }
  return s;
}

}  // namespace

SpectrumMultiset spectrum_even_q(const CosetQuery& query) {
  if (query.q % 2 != 0) throw Error(ErrorCode::OddCharacteristic, "spectrum_even_q needs even q");
  validate_query(query);
  const Powers P{query.q, query.m};
  const unsigned r = query.rank_type.rank;
  const bool c_zero = query.c_class == CosetClass::Zero;
  SpectrumMultiset s;
  if (r == 0) {
    s = rank_zero_per_c(P, c_zero);
  } else if (r % 2 == 0) {
    s = even_rank_per_c(P, r, sign(query.rank_type.type), c_zero);
  } else {
    const BigInt q = query.q;
    const BigInt base = P.pow(P.m - 1);
    const BigInt shift = P.pow(P.m - (r + 1) / 2);
    const BigInt half = P.pow((r - 1) / 2);
    s.add(base, P.pow(P.m) - P.pow(r) + P.pow(r - 1));
    if (c_zero) {
      s.add(base + shift, exact_div((q - 1) * (P.pow(r - 1) + half), 2, "diseven c=0"));
      s.add(base - shift, exact_div((q - 1) * (P.pow(r - 1) - half), 2, "diseven c=0"));
    } else {
      s.add(base + shift, exact_div(P.pow(r) - P.pow(r - 1) - half, 2, "diseven c!=0"));
      s.add(base - shift, exact_div(P.pow(r) - P.pow(r - 1) + half, 2, "diseven c!=0"));
    }
  }
  return s.scaled(class_size(query.q, query.c_class));
}

SpectrumMultiset spectrum_odd_q(const CosetQuery& query) {
  if (query.q % 2 == 0) throw Error(ErrorCode::EvenCharacteristic, "spectrum_odd_q needs odd q");
  validate_query(query);
  const Powers P{query.q, query.m};
  const unsigned r = query.rank_type.rank;
  const int tau = sign(query.rank_type.type);
  SpectrumMultiset s;
  if (r == 0) {
    s = rank_zero_per_c(P, query.c_class == CosetClass::Zero);
  } else if (r % 2 == 0) {
    s = even_rank_per_c(P, r, tau, query.c_class == CosetClass::Zero);
  } else {
    const BigInt half_q = (query.q - 1) / 2;
    const BigInt base = P.pow(P.m - 1);
    const BigInt shift = P.pow(P.m - (r + 1) / 2);
    const BigInt small = P.pow((r - 1) / 2);
    const BigInt flat = P.pow(P.m) - P.pow(r) + P.pow(r - 1);
    switch (query.c_class) {
      case CosetClass::Zero:
        s.add(base, flat);
        s.add(base + tau * shift, half_q * (P.pow(r - 1) + tau * small));
        s.add(base - tau * shift, half_q * (P.pow(r - 1) - tau * small));
        break;
      case CosetClass::Square:
        // The tau-term sits outside the (q-1)/2 factor; the brute-force
        // oracle confirms this reading.
        s.add(base, flat + tau * small);
        s.add(base + tau * shift, half_q * P.pow(r - 1) - tau * small);
        s.add(base - tau * shift, half_q * P.pow(r - 1));
        break;
      case CosetClass::NonSquare:
        s.add(base, flat - tau * small);
        s.add(base + tau * shift, half_q * P.pow(r - 1));
        s.add(base - tau * shift, half_q * P.pow(r - 1) + tau * small);
        break;
      case CosetClass::AnyNonzero: break;  // rejected by validate_query
    }
  }
  return s.scaled(class_size(query.q, query.c_class));
}

SpectrumMultiset spectrum_for(const CosetQuery& query) {
  return query.q % 2 == 0 ? spectrum_even_q(query) : spectrum_odd_q(query);
}

SpectrumMultiset spectrum_merged(std::uint64_t q, unsigned m, RankType rt) {
  validate_rank_type(q, m, rt);
  if (m == 0) throw Error(ErrorCode::InconsistentRankType, "merged spectrum needs m >= 1");
  const Powers P{q, m};
  const unsigned r = rt.rank;
  const BigInt base = P.pow(m - 1);
  SpectrumMultiset s;
  if (r == 0) {
    s.add(P.pow(m), 1);
    s.add(0, BigInt(q - 1));
    s.add(base, P.pow(m + 1) - q);
  } else if (r % 2 == 1) {
    const BigInt shift = P.pow(m - (r + 1) / 2);
    const BigInt side = exact_div(BigInt(q - 1) * P.pow(r), 2, "cosetzero odd rank");
    s.add(base, P.pow(m + 1) - P.pow(r + 1) + P.pow(r));
    s.add(base + shift, side);
    s.add(base - shift, side);
  } else {
    const int tau = sign(rt.type);
    const BigInt shift = P.pow(m - (r + 2) / 2);
    s.add(base, P.pow(m + 1) - P.pow(r + 1));
    s.add(base + tau * shift * (q - 1), P.pow(r));
    s.add(base - tau * shift, BigInt(q - 1) * P.pow(r));
  }
  return s;
}

SpectrumMultiset coset_weight_multiset(std::uint64_t q, unsigned m, RankType rt) {
  if (q == 2) {
    throw Error(ErrorCode::UnsupportedForBinary, "binary RM(2,m) decomposes into {0,1} cosets, not RM(1,m) cosets");
  }
  const BigInt length = ipow(q, m);
  SpectrumMultiset weights;
  const SpectrumMultiset merged = spectrum_merged(q, m, rt);
  for (const auto& [zeros, mult] : merged.entries()) weights.add(length - zeros, mult);
  return weights;
}

namespace {

SpectrumMultiset oracle_impl(const QuadraticForm& form, const std::vector<FieldElement>& constants,
                             const OracleOptions& options) {
  const FiniteField& f = form.field();
  const unsigned m = form.m();
  const std::uint32_t q = f.q();
  const std::uint64_t points = checked_power(q, m, options.max_evaluations, "spectrum oracle");
  if (points > options.max_evaluations / points ||
      points * points > options.max_evaluations / std::max<std::uint64_t>(1, constants.size())) {
    throw Error(ErrorCode::BudgetExceeded, "spectrum oracle: q^(2m) * |c| exceeds budget " +
                                               std::to_string(options.max_evaluations));
  }

  std::vector<FieldVector> coords(points);
  std::vector<FieldElement> q_values(points);
  {
    VectorOdometer it(q, m);
    std::uint64_t idx = 0;
    do {
      coords[idx] = it.current();
      q_values[idx] = form.evaluate(it.current());
      ++idx;
    } while (it.next());
  }

  auto tally = [&](std::uint64_t begin, std::uint64_t end) {
    std::map<std::uint64_t, std::uint64_t> counts;
    std::vector<std::uint64_t> histogram(q);
    for (std::uint64_t l = begin; l < end; ++l) {
      const FieldVector lin = unrank_vector(f, m, l);
      std::fill(histogram.begin(), histogram.end(), 0);
      for (std::uint64_t x = 0; x < points; ++x) {
        FieldElement value = q_values[x];
        for (unsigned i = 0; i < m; ++i) value = f.add(value, f.mul(lin[i], coords[x][i]));
        ++histogram[value.index];
      }
      // Q(x) + L(x) + c = 0 exactly when Q(x) + L(x) = -c.
      for (FieldElement c : constants) ++counts[histogram[f.neg(c).index]];
    }
    return counts;
  };

  SpectrumMultiset out;
  for (const auto& part : detail::run_partitioned(points, options.workers, tally)) {
    for (const auto& [zeros, mult] : part) out.add(BigInt(zeros), BigInt(mult));
  }
  return out;
}

std::vector<FieldElement> constants_in(const FiniteField& f, CosetClass c_class) {
  if ((c_class == CosetClass::Square || c_class == CosetClass::NonSquare) && f.is_even()) {
    throw Error(ErrorCode::EvenCharacteristic, "square classes need odd q");
  }
  std::vector<FieldElement> out;
  for (std::uint32_t i = 0; i < f.q(); ++i) {
    const FieldElement c{i};
    switch (c_class) {
      case CosetClass::Zero:
        if (i == 0) out.push_back(c);
        break;
      case CosetClass::Square:
        if (i != 0 && f.quadratic_character(c) == 1) out.push_back(c);
        break;
      case CosetClass::NonSquare:
        if (i != 0 && f.quadratic_character(c) == -1) out.push_back(c);
        break;
      case CosetClass::AnyNonzero:
        if (i != 0) out.push_back(c);
        break;
    }
  }
  return out;
}

}  // namespace

SpectrumMultiset spectrum_oracle(const QuadraticForm& form, CosetClass c_class, const OracleOptions& options) {
  return oracle_impl(form, constants_in(form.field(), c_class), options);
}

SpectrumMultiset spectrum_oracle_all(const QuadraticForm& form, const OracleOptions& options) {
  std::vector<FieldElement> all;
  for (std::uint32_t i = 0; i < form.field().q(); ++i) all.push_back(FieldElement{i});
  return oracle_impl(form, all, options);
}

}  // namespace quadrm
