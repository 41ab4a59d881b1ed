#include "quadrm/census.hpp"

#include <string>

#include "parallel.hpp"
#include "quadrm/error.hpp"

namespace quadrm {

std::string_view to_string(CensusKind kind) noexcept {
  switch (kind) {
    case CensusKind::Plus: return "plus";
    case CensusKind::Minus: return "minus";
    case CensusKind::Untyped: return "untyped";
    case CensusKind::OddTotal: return "odd_total";
  }
  return "untyped";
}

CensusKey census_key(std::uint64_t q, RankType rt) {
  if (rt.rank % 2 == 1) return {rt.rank, q % 2 == 0 ? CensusKind::Untyped : CensusKind::OddTotal};
  return {rt.rank, rt.type == FormType::Minus ? CensusKind::Minus : CensusKind::Plus};
}

BigInt CensusTable::total() const {
  BigInt sum = 0;
  for (const auto& [key, count] : entries) sum += count;
  return sum;
}

BigInt CensusTable::count(CensusKey key) const {
  const auto it = entries.find(key);
  return it == entries.end() ? BigInt(0) : it->second;
}

namespace {

// prod_{i=lo}^{hi} (q^i - 1)
BigInt falling_product(std::uint64_t q, unsigned lo, unsigned hi) {
  BigInt out = 1;
  for (unsigned i = lo; i <= hi; ++i) out *= ipow(q, i) - 1;
  return out;
}

// prod_{i=1}^{j} (q^{2i} - 1)
BigInt even_power_product(std::uint64_t q, unsigned j) {
  BigInt out = 1;
  for (unsigned i = 1; i <= j; ++i) out *= ipow(q, 2 * i) - 1;
  return out;
}

}  // namespace

BigInt count_odd_rank(std::uint64_t q, unsigned m, unsigned rank) {
  if (rank % 2 == 0 || rank < 1 || rank > m) {
    throw Error(ErrorCode::OutOfRange, "odd-rank count needs odd 1 <= r <= m, got r=" + std::to_string(rank) +
                                           " m=" + std::to_string(m));
  }
  if (rank == 1) return ipow(q, m) - 1;
  const unsigned j = (rank - 1) / 2;
  const BigInt numerator = ipow(q, j * j + j) * falling_product(q, m - 2 * j, m);
  return exact_div(numerator, even_power_product(q, j), "v_{2j+1}");
}

BigInt count_even_rank(std::uint64_t q, unsigned m, unsigned rank, int tau) {
  if (rank % 2 == 1 || rank < 2 || rank > m) {
    throw Error(ErrorCode::OutOfRange, "even-rank count needs even 2 <= r <= m, got r=" + std::to_string(rank) +
                                           " m=" + std::to_string(m));
  }
  if (tau != 1 && tau != -1) throw Error(ErrorCode::OutOfRange, "tau must be +1 or -1");
  const unsigned j = rank / 2;
  const BigInt numerator = ipow(q, j * j) * (ipow(q, j) + tau) * falling_product(q, m - 2 * j + 1, m);
  return exact_div(numerator, 2 * even_power_product(q, j), "v_{2j,tau}");
}

BigInt count_forms(std::uint64_t q, unsigned m, RankType rt) {
  validate_rank_type(q, m, rt);
  if (rt.rank == 0) return 1;
  if (rt.rank % 2 == 1) return count_odd_rank(q, m, rt.rank);
  return count_even_rank(q, m, rt.rank, sign(rt.type));
}

CensusTable census_formula(std::uint64_t q, unsigned m) {
  CensusTable table;
  table.q = q;
  table.m = m;
  table.entries[{0, CensusKind::Plus}] = 1;
  for (unsigned r = 1; r <= m; ++r) {
    if (r % 2 == 1) {
      table.entries[census_key(q, {r, q % 2 == 0 ? FormType::Untyped : FormType::Plus})] = count_odd_rank(q, m, r);
    } else {
      table.entries[{r, CensusKind::Plus}] = count_even_rank(q, m, r, 1);
      table.entries[{r, CensusKind::Minus}] = count_even_rank(q, m, r, -1);
    }
  }
  return table;
}

CensusTable census_exhaustive(const FiniteField& field, unsigned m, const CensusOptions& options) {
  const std::uint32_t q = field.q();
  const unsigned slots = m * (m + 1) / 2;
  const std::uint64_t total = checked_power(q, slots, options.max_forms, "exhaustive census");

  auto tally = [&](std::uint64_t begin, std::uint64_t end) {
    CensusTable part;
    part.q = q;
    part.m = m;
    QuadraticForm form(field, m);
    for (std::uint64_t code = begin; code < end; ++code) {
      std::uint64_t rest = code;
      for (unsigned i = 0; i < m; ++i) {
        for (unsigned j = i; j < m; ++j) {
          form.set_coefficient(i, j, FieldElement{static_cast<std::uint32_t>(rest % q)});
          rest /= q;
        }
      }
      const RankType rt = classify(form, options.max_points);
      part.entries[census_key(q, rt)] += 1;
      if (!field.is_even() && rt.rank % 2 == 1) part.odd_rank_split[{rt.rank, sign(rt.type)}] += 1;
    }
    return part;
  };

  CensusTable table;
  table.q = q;
  table.m = m;
  for (auto& part : detail::run_partitioned(total, options.workers, tally)) {
    for (auto& [key, count] : part.entries) table.entries[key] += count;
    for (auto& [key, count] : part.odd_rank_split) table.odd_rank_split[key] += count;
  }
  return table;
}

}  // namespace quadrm
