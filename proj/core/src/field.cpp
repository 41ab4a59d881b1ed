#include "quadrm/field.hpp"

#include <algorithm>
#include <sstream>

#include "quadrm/error.hpp"

namespace quadrm {

namespace {

using Poly = std::vector<std::uint64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return result;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) { return mod_pow(a, p - 2, p); }

// Remainder of a modulo b over GF(p); b must be nonzero.
Poly poly_rem(Poly a, const Poly& b, std::uint64_t p) {
  trim(a);
  const std::uint64_t lead_inv = mod_inv(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t factor = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = (a[shift + i] + p - factor * b[i] % p) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly product(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      product[i + j] = (product[i + j] + a[i] * b[j]) % p;
    }
  }
  return poly_rem(std::move(product), f, p);
}

Poly poly_powmod(Poly base, std::uint64_t exp, const Poly& f, std::uint64_t p) {
  Poly result{1};
  base = poly_rem(std::move(base), f, p);
  while (exp > 0) {
    if (exp & 1) result = poly_mulmod(result, base, f, p);
    exp >>= 1;
    if (exp > 0) base = poly_mulmod(base, base, f, p);
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Rabin's test: f (monic, degree e) is irreducible iff x^(p^e) = x mod f and
// gcd(x^(p^(e/l)) - x, f) = 1 for every prime l dividing e.
bool is_irreducible(const Poly& f, unsigned e, std::uint64_t p) {
  if (e == 1) return true;
  const Poly x = poly_rem(Poly{0, 1}, f, p);
  std::vector<Poly> frobenius(e + 1);
  frobenius[0] = x;
  for (unsigned k = 1; k <= e; ++k) frobenius[k] = poly_powmod(frobenius[k - 1], p, f, p);
  if (frobenius[e] != x) return false;
  for (std::uint64_t l : prime_divisors(e)) {
    Poly h = frobenius[e / l];
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    if (h.empty()) return false;
    if (poly_gcd(h, f, p).size() > 1) return false;
  }
  return true;
}

Poly digits_of(std::uint32_t index, std::uint32_t p, unsigned e) {
  Poly out(e, 0);
  for (unsigned i = 0; i < e; ++i) {
    out[i] = index % p;
    index /= p;
  }
  trim(out);
  return out;
}

std::uint32_t index_of(const Poly& poly, std::uint32_t p) {
  std::uint32_t index = 0;
  for (std::size_t i = poly.size(); i-- > 0;) index = index * p + static_cast<std::uint32_t>(poly[i]);
  return index;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<std::pair<std::uint32_t, unsigned>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  unsigned e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1 || p > 0xffffffffu) return std::nullopt;
  return std::make_pair(static_cast<std::uint32_t>(p), e);
}

struct FiniteField::Tables {
  std::uint32_t p = 0;
  unsigned e = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;
  std::vector<std::uint32_t> exp;  // length 2(q-1), so products index without reduction
  std::vector<std::uint32_t> log;
  std::vector<std::uint32_t> neg;
  std::vector<std::uint32_t> trace;
  std::vector<std::uint32_t> add;  // q*q table for small q, empty otherwise
  std::uint32_t primitive = 1;

  std::uint32_t add_digits(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t result = 0;
    std::uint32_t place = 1;
    while (a != 0 || b != 0) {
      result += ((a % p + b % p) % p) * place;
      a /= p;
      b /= p;
      place *= p;
    }
    return result;
  }

  std::uint32_t add_slow(std::uint32_t a, std::uint32_t b) const {
    if (p == 2) return a ^ b;
    if (e == 1) return (a + b) % p;
    return add_digits(a, b);
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp[log[a] + log[b]];
  }

  std::uint32_t pow(std::uint32_t a, std::uint64_t n) const {
    if (n == 0) return 1;
    if (a == 0) return 0;
    const std::uint64_t order = q - 1;
    return exp[static_cast<std::uint64_t>(log[a]) * (n % order) % order];
  }
};

FiniteField::FiniteField(std::uint32_t p, unsigned e) {
  if (!is_prime(p)) throw Error(ErrorCode::NonPrime, std::to_string(p) + " is not prime");
  if (e == 0) throw Error(ErrorCode::OutOfRange, "extension degree must be at least 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxOrder) {
      throw Error(ErrorCode::FieldTooLarge,
                  "GF(" + std::to_string(p) + "^" + std::to_string(e) + ") exceeds 2^20 elements");
    }
  }

  auto t = std::make_shared<Tables>();
  t->p = p;
  t->e = e;
  t->q = static_cast<std::uint32_t>(q);

  // Smallest monic irreducible: scan the lower coefficients in digit order.
  Poly modulus;
  for (std::uint32_t lower = 0; lower < t->q; ++lower) {
    Poly candidate(e + 1, 0);
    std::uint32_t rest = lower;
    for (unsigned i = 0; i < e; ++i) {
      candidate[i] = rest % p;
      rest /= p;
    }
    candidate[e] = 1;
    if (is_irreducible(candidate, e, p)) {
      modulus = std::move(candidate);
      break;
    }
  }
  if (modulus.empty()) throw Error(ErrorCode::InternalInvariant, "no irreducible modulus found");
  t->modulus.assign(modulus.begin(), modulus.end());

  const std::uint64_t order = q - 1;
  const auto order_primes = prime_divisors(order);
  for (std::uint32_t g = 1; g < t->q; ++g) {
    const Poly gp = digits_of(g, p, e);
    const bool generates = std::all_of(order_primes.begin(), order_primes.end(), [&](std::uint64_t l) {
      return poly_powmod(gp, order / l, modulus, p) != Poly{1};
    });
    if (generates) {
      t->primitive = g;
      break;
    }
  }

  t->exp.assign(2 * order, 0);
  t->log.assign(t->q, 0);
  const Poly gp = digits_of(t->primitive, p, e);
  Poly current{1};
  for (std::uint64_t i = 0; i < order; ++i) {
    const std::uint32_t idx = index_of(current, p);
    t->exp[i] = idx;
    t->exp[i + order] = idx;
    t->log[idx] = static_cast<std::uint32_t>(i);
    current = poly_mulmod(current, gp, modulus, p);
  }
  if (index_of(current, p) != 1) throw Error(ErrorCode::InternalInvariant, "primitive element has wrong order");

  t->neg.resize(t->q);
  for (std::uint32_t a = 0; a < t->q; ++a) {
    std::uint32_t result = 0;
    std::uint32_t place = 1;
    std::uint32_t rest = a;
    for (unsigned i = 0; i < e; ++i) {
      result += ((p - rest % p) % p) * place;
      rest /= p;
      place *= p;
    }
    t->neg[a] = result;
  }

  if (t->q <= 256) {
    t->add.resize(static_cast<std::size_t>(t->q) * t->q);
    for (std::uint32_t a = 0; a < t->q; ++a) {
      for (std::uint32_t b = 0; b < t->q; ++b) t->add[a * t->q + b] = t->add_slow(a, b);
    }
  }

  t->trace.resize(t->q);
  for (std::uint32_t a = 0; a < t->q; ++a) {
    std::uint32_t sum = a;
    std::uint32_t conj = a;
    for (unsigned i = 1; i < e; ++i) {
      conj = t->pow(conj, p);
      sum = t->add_slow(sum, conj);
    }
    if (sum >= p) throw Error(ErrorCode::InternalInvariant, "trace left the prime subfield");
    t->trace[a] = sum;
  }

  tables_ = std::move(t);
}

FiniteField FiniteField::of_order(std::uint64_t q) {
  const auto pe = prime_power(q);
  if (!pe) throw Error(ErrorCode::NonPrime, std::to_string(q) + " is not a prime power");
  if (q > kMaxOrder) throw Error(ErrorCode::FieldTooLarge, std::to_string(q) + " exceeds 2^20");
  return FiniteField(pe->first, pe->second);
}

std::uint32_t FiniteField::p() const noexcept { return tables_->p; }
unsigned FiniteField::e() const noexcept { return tables_->e; }
std::uint32_t FiniteField::q() const noexcept { return tables_->q; }

std::span<const std::uint32_t> FiniteField::modulus() const noexcept { return tables_->modulus; }

FieldElement FiniteField::element(std::uint32_t index) const {
  if (index >= q()) {
    throw Error(ErrorCode::OutOfRange,
                "element index " + std::to_string(index) + " outside GF(" + std::to_string(q()) + ")");
  }
  return FieldElement{index};
}

FieldElement FiniteField::from_int(std::int64_t value) const noexcept {
  const auto pp = static_cast<std::int64_t>(p());
  return FieldElement{static_cast<std::uint32_t>(((value % pp) + pp) % pp)};
}

FieldElement FiniteField::add(FieldElement a, FieldElement b) const noexcept {
  const Tables& t = *tables_;
  if (!t.add.empty()) return FieldElement{t.add[a.index * t.q + b.index]};
  return FieldElement{t.add_slow(a.index, b.index)};
}

FieldElement FiniteField::sub(FieldElement a, FieldElement b) const noexcept { return add(a, neg(b)); }

FieldElement FiniteField::neg(FieldElement a) const noexcept { return FieldElement{tables_->neg[a.index]}; }

FieldElement FiniteField::mul(FieldElement a, FieldElement b) const noexcept {
  return FieldElement{tables_->mul(a.index, b.index)};
}

FieldElement FiniteField::inv(FieldElement a) const {
  if (a.index == 0) throw Error(ErrorCode::InverseOfZero, "zero has no multiplicative inverse");
  const Tables& t = *tables_;
  const std::uint32_t order = t.q - 1;
  return FieldElement{t.exp[(order - t.log[a.index]) % order]};
}

FieldElement FiniteField::pow(FieldElement a, std::uint64_t exponent) const noexcept {
  return FieldElement{tables_->pow(a.index, exponent)};
}

FieldElement FiniteField::trace(FieldElement a) const noexcept { return FieldElement{tables_->trace[a.index]}; }

int FiniteField::quadratic_character(FieldElement a) const {
  if (is_even()) throw Error(ErrorCode::EvenCharacteristic, "quadratic character needs odd q");
  if (a.index == 0) return 0;
  const FieldElement r = pow(a, (q() - 1) / 2);
  return r == one() ? 1 : -1;
}

FieldElement FiniteField::smallest_nonsquare() const {
  if (is_even()) throw Error(ErrorCode::EvenCharacteristic, "every element is a square when q is even");
  for (std::uint32_t i = 1; i < q(); ++i) {
    if (quadratic_character(FieldElement{i}) == -1) return FieldElement{i};
  }
  throw Error(ErrorCode::InternalInvariant, "no nonsquare found");
}

FieldElement FiniteField::smallest_trace_one() const {
  if (!is_even()) throw Error(ErrorCode::OddCharacteristic, "trace-one representative is defined for even q");
  for (std::uint32_t i = 1; i < q(); ++i) {
    if (tables_->trace[i] == 1) return FieldElement{i};
  }
  throw Error(ErrorCode::InternalInvariant, "no trace-one element found");
}

FieldElement FiniteField::square_root_even(FieldElement a) const {
  if (!is_even()) throw Error(ErrorCode::OddCharacteristic, "square roots are unique only for even q");
  return pow(a, q() / 2);
}

FieldElement FiniteField::primitive_element() const noexcept { return FieldElement{tables_->primitive}; }

std::string FiniteField::describe() const {
  std::ostringstream os;
  os << "GF(" << q() << ")";
  if (e() > 1) {
    os << " = GF(" << p() << ")[x]/(";
    bool first = true;
    for (std::size_t i = e() + 1; i-- > 0;) {
      const std::uint32_t c = tables_->modulus[i];
      if (c == 0) continue;
      if (!first) os << " + ";
      first = false;
      if (i == 0 || c != 1) os << c;
      if (i >= 1) os << "x";
      if (i >= 2) os << "^" << i;
    }
    os << ")";
  }
  return os.str();
}

}  // namespace quadrm
