#include "bianchi/fields.hpp"

#include <sstream>
#include <stdexcept>

namespace bianchi {

std::string to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::KRational:
      return "K";
    case FieldKind::PrimeSplit:
      return "split";
    case FieldKind::PrimeInert:
      return "inert";
  }
  return "?";
}

uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = (r * a) % p;
    a = (a * a) % p;
    e >>= 1;
  }
  return r;
}

uint64_t reduce_mod(const Rational& q, uint64_t p) {
  Integer pz(static_cast<unsigned long>(p));
  Integer num = q.get_num() % pz, den = q.get_den() % pz;
  if (num < 0) num += pz;
  if (den == 0) throw std::invalid_argument("reduce_mod: denominator divisible by p");
  uint64_t n = num.get_ui(), d = den.get_ui();
  return (n * pow_mod(d, p - 2, p)) % p;
}

bool is_prime(uint64_t p) {
  if (p < 2) return false;
  for (uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

int splitting(const FieldContext& ctx, uint64_t p) {
  const uint64_t d = reduce_mod(Rational(ctx.discriminant), p);
  if (d == 0) return 0;
  return pow_mod(d, (p - 1) / 2, p) == 1 ? 1 : -1;
}

bool is_good_prime(const FieldContext& ctx, uint64_t p) {
  return p > 3 && is_prime(p) && splitting(ctx, p) != 0;
}

std::vector<uint64_t> good_primes(const FieldContext& ctx, uint64_t lo, uint64_t hi) {
  std::vector<uint64_t> out;
  for (uint64_t p = std::max<uint64_t>(lo, 5); p <= hi; ++p)
    if (is_good_prime(ctx, p)) out.push_back(p);
  return out;
}

std::vector<uint64_t> large_inert_primes(const FieldContext& ctx, std::size_t count) {
  std::vector<uint64_t> out;
  for (uint64_t p = (1ULL << 31) - 1; out.size() < count; p -= 2)
    if (is_prime(p) && splitting(ctx, p) == -1) out.push_back(p);
  return out;
}

namespace {

/// omega^2 = s*omega + t.
std::pair<Rational, Rational> omega_relation(long m) {
  if (m % 4 == 3) return {Rational(-1), Rational(-frac(m + 1, 4))};
  return {Rational(0), Rational(-m)};
}

uint64_t sqrt_mod(uint64_t a, uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  if (pow_mod(a, (p - 1) / 2, p) != 1) throw std::invalid_argument("sqrt_mod: non-residue");
  // Tonelli-Shanks
  uint64_t q = p - 1, s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  uint64_t z = 2;
  while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
  uint64_t mm = s, c = pow_mod(z, q, p), t = pow_mod(a, q, p), r = pow_mod(a, (q + 1) / 2, p);
  while (t != 1) {
    uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = (tt * tt) % p;
      ++i;
    }
    uint64_t b = pow_mod(c, 1ULL << (mm - i - 1), p);
    mm = i;
    c = (b * b) % p;
    t = (t * c) % p;
    r = (r * b) % p;
  }
  return r;
}

void check_prime(const FieldContext& ctx, uint64_t p, int expected) {
  if (p >= (1ULL << 31)) throw std::invalid_argument("coefficient field: prime too large");
  if (!is_good_prime(ctx, p)) throw std::invalid_argument("coefficient field: p must be a prime > 3 unramified in O");
  if (splitting(ctx, p) != expected)
    throw std::invalid_argument(expected == 1 ? "coefficient field: p is not split" : "coefficient field: p is not inert");
}

}  // namespace

SplitPrimeField::SplitPrimeField(const FieldContext& ctx, uint64_t p) : p_(p) {
  check_prime(ctx, p, 1);
  auto [s, t] = omega_relation(ctx.m);
  const uint64_t sp = reduce_mod(s, p), tp = reduce_mod(t, p);
  // roots of x^2 - s x - t: (s +- sqrt(s^2 + 4t)) / 2
  const uint64_t disc = (sp * sp + 4 * tp) % p;
  const uint64_t r = sqrt_mod(disc, p);
  const uint64_t half = pow_mod(2, p - 2, p);
  root_ = ((sp + r) % p) * half % p;
  other_root_ = ((sp + p - r) % p) * half % p;
}

SplitPrimeField::T SplitPrimeField::inv(T a) const {
  if (a == 0) throw std::domain_error("SplitPrimeField: inverse of zero");
  return pow_mod(a, p_ - 2, p_);
}

SplitPrimeField::T SplitPrimeField::reduce(const KElem& x) const {
  return add(reduce_mod(x.r, p_), mul(reduce_mod(x.w, p_), root_));
}

SplitPrimeField::T SplitPrimeField::reduce_conj(const KElem& x) const {
  return add(reduce_mod(x.r, p_), mul(reduce_mod(x.w, p_), other_root_));
}

std::string SplitPrimeField::describe() const {
  std::ostringstream os;
  os << "F_" << p_;
  return os.str();
}

InertPrimeField::InertPrimeField(const FieldContext& ctx, uint64_t p) : p_(p), m_(ctx.m) {
  check_prime(ctx, p, -1);
  auto [s, t] = omega_relation(ctx.m);
  s_ = reduce_mod(s, p);
  t_ = reduce_mod(t, p);
}

InertPrimeField::T InertPrimeField::inv(T x) const {
  if (is_zero(x)) throw std::domain_error("InertPrimeField: inverse of zero");
  // x * conj(x) = norm in F_p, conj(a + b w) = (a + s b) - b w
  T c{addp(x.a, (s_ * x.b) % p_), subp(0, x.b)};
  T n = mul(x, c);
  const uint64_t ni = pow_mod(n.a, p_ - 2, p_);
  return {(c.a * ni) % p_, (c.b * ni) % p_};
}

InertPrimeField::T InertPrimeField::reduce(const KElem& x) const { return {reduce_mod(x.r, p_), reduce_mod(x.w, p_)}; }

InertPrimeField::T InertPrimeField::reduce_conj(const KElem& x) const {
  T y = reduce(x);
  return {addp(y.a, (s_ * y.b) % p_), subp(0, y.b)};
}

std::string InertPrimeField::describe() const {
  std::ostringstream os;
  os << "F_" << p_ << "^2";
  return os.str();
}

}  // namespace bianchi
