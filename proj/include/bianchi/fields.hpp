#pragma once

// Coefficient fields for the modules E_{n,n}: K itself, and the residue fields
// of O at good primes. Each field reduces elements of K and of their
// conjugates, so that the conjugate-twisted factor can be realised.

#include "bianchi/arith.hpp"

#include <cstdint>
#include <string>

namespace bianchi {

enum class FieldKind { KRational, PrimeSplit, PrimeInert };

std::string to_string(FieldKind kind);

/// Residue a mod p of a rational with denominator prime to p.
uint64_t reduce_mod(const Rational& q, uint64_t p);

uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t p);

/// p > 3 and not dividing the discriminant.
bool is_good_prime(const FieldContext& ctx, uint64_t p);
bool is_prime(uint64_t p);
/// Kronecker symbol (disc / p) for odd p: 1 split, -1 inert, 0 ramified.
int splitting(const FieldContext& ctx, uint64_t p);

/// O / p for a split prime p: omega maps to one root t; conjugation swaps to the other root.
class SplitPrimeField {
 public:
  using T = uint64_t;
  SplitPrimeField(const FieldContext& ctx, uint64_t p);

  uint64_t characteristic() const { return p_; }
  FieldKind kind() const { return FieldKind::PrimeSplit; }
  T zero() const { return 0; }
  T one() const { return 1; }
  T from_int(long v) const { return static_cast<T>(((v % static_cast<long>(p_)) + static_cast<long>(p_)) % static_cast<long>(p_)); }
  T add(T a, T b) const { T s = a + b; return s >= p_ ? s - p_ : s; }
  T sub(T a, T b) const { return a >= b ? a - b : a + p_ - b; }
  T neg(T a) const { return a == 0 ? 0 : p_ - a; }
  T mul(T a, T b) const { return (a * b) % p_; }
  T inv(T a) const;
  bool is_zero(T a) const { return a == 0; }
  bool eq(T a, T b) const { return a == b; }
  T reduce(const KElem& x) const;
  T reduce_conj(const KElem& x) const;
  std::string describe() const;

 private:
  uint64_t p_;
  uint64_t root_, other_root_;
};

/// O / p for an inert prime p: the field with p^2 elements, a + b*omega with
/// omega^2 = s*omega + t; conjugation is the Frobenius.
class InertPrimeField {
 public:
  struct T {
    uint64_t a = 0, b = 0;
  };
  InertPrimeField(const FieldContext& ctx, uint64_t p);

  uint64_t characteristic() const { return p_; }
  FieldKind kind() const { return FieldKind::PrimeInert; }
  T zero() const { return {}; }
  T one() const { return {1, 0}; }
  T from_int(long v) const {
    return {static_cast<uint64_t>(((v % static_cast<long>(p_)) + static_cast<long>(p_)) % static_cast<long>(p_)), 0};
  }
  T add(T x, T y) const { return {addp(x.a, y.a), addp(x.b, y.b)}; }
  T sub(T x, T y) const { return {subp(x.a, y.a), subp(x.b, y.b)}; }
  T neg(T x) const { return {subp(0, x.a), subp(0, x.b)}; }
  T mul(T x, T y) const {
    const uint64_t bb = (x.b * y.b) % p_;
    return {(x.a * y.a + t_ * bb) % p_, (x.a * y.b + x.b * y.a + s_ * bb) % p_};
  }
  T inv(T x) const;
  bool is_zero(T x) const { return x.a == 0 && x.b == 0; }
  bool eq(T x, T y) const { return x.a == y.a && x.b == y.b; }
  T reduce(const KElem& x) const;
  T reduce_conj(const KElem& x) const;
  std::string describe() const;

 private:
  uint64_t addp(uint64_t a, uint64_t b) const { uint64_t s = a + b; return s >= p_ ? s - p_ : s; }
  uint64_t subp(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  uint64_t p_;
  uint64_t s_, t_;  // omega^2 = s*omega + t mod p
  long m_;
};

/// K itself, exact.
class KField {
 public:
  using T = KElem;
  explicit KField(const FieldContext& ctx) : m_(ctx.m) {}

  uint64_t characteristic() const { return 0; }
  FieldKind kind() const { return FieldKind::KRational; }
  T zero() const { return KElem(0, 0, m_); }
  T one() const { return KElem(1, 0, m_); }
  T from_int(long v) const { return KElem(v, 0, m_); }
  T add(const T& x, const T& y) const { return x + y; }
  T sub(const T& x, const T& y) const { return x - y; }
  T neg(const T& x) const { return -x; }
  T mul(const T& x, const T& y) const { return x * y; }
  T inv(const T& x) const { return one() / x; }
  bool is_zero(const T& x) const { return x.is_zero(); }
  bool eq(const T& x, const T& y) const { return x == y; }
  T reduce(const KElem& x) const { KElem y = x; y.m = m_; return y; }
  T reduce_conj(const KElem& x) const { return conj(reduce(x)); }
  std::string describe() const { return "K"; }

 private:
  long m_;
};

/// Good primes in [lo, hi], ascending.
std::vector<uint64_t> good_primes(const FieldContext& ctx, uint64_t lo, uint64_t hi);

/// Inert primes below 2^31, descending from the top, `count` of them.
std::vector<uint64_t> large_inert_primes(const FieldContext& ctx, std::size_t count);

}  // namespace bianchi
