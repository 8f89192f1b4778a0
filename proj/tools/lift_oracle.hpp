#pragma once

// Classical lift counts for level one Bianchi forms of weight (k, k), from
// dimensions of spaces of elliptic cusp forms (Cohen-Oesterle). Deliberately
// self-contained: 64-bit rationals, no dependency on the bianchi library.
//
//   k even:  dim S_{k+2}(SL2(Z))
//   k odd:   (dim S_{k+2}(Gamma0(|D|), chi_D) - h) / 2
//
// The odd case pairs each non-CM newform with its Galois conjugate twist; the
// h CM forms coming from class group characters base change to Eisenstein
// classes.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace lift_oracle {

struct Q {
  int64_t num = 0, den = 1;
  Q(int64_t n = 0, int64_t d = 1) : num(n), den(d) { norm(); }
  void norm() {
    if (den < 0) num = -num, den = -den;
    int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) num /= g, den /= g;
  }
  friend Q operator+(Q a, Q b) { return Q(a.num * b.den + b.num * a.den, a.den * b.den); }
  friend Q operator-(Q a, Q b) { return Q(a.num * b.den - b.num * a.den, a.den * b.den); }
  friend Q operator*(Q a, Q b) { return Q(a.num * b.num, a.den * b.den); }
};

inline std::vector<int64_t> prime_factors(int64_t n) {
  std::vector<int64_t> out;
  for (int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

inline int64_t powmod(int64_t b, int64_t e, int64_t m) {
  int64_t r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  for (; e; e >>= 1, b = b * b % m)
    if (e & 1) r = r * b % m;
  return r;
}

/// Kronecker symbol (d / p) for a prime p.
inline int kronecker_prime(int64_t d, int64_t p) {
  if (p == 2) {
    if (d % 2 == 0) return 0;
    int64_t r = ((d % 8) + 8) % 8;
    return (r == 1 || r == 7) ? 1 : -1;
  }
  int64_t r = ((d % p) + p) % p;
  if (r == 0) return 0;
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

/// Kronecker symbol (d / x) for x > 0.
inline int kronecker(int64_t d, int64_t x) {
  int res = 1;
  for (int64_t p = 2; p * p <= x; ++p)
    while (x % p == 0) {
      res *= kronecker_prime(d, p);
      x /= p;
    }
  if (x > 1) res *= kronecker_prime(d, x);
  return res;
}

inline int64_t fundamental_discriminant(int64_t m) { return m % 4 == 3 ? -m : -4 * m; }

/// dim S_k(SL2(Z)).
inline int64_t dim_level_one(int k) {
  if (k < 4 || k % 2) return 0;
  return k % 12 == 2 ? k / 12 - 1 : k / 12;
}

/// dim S_k(Gamma0(N), chi) for the primitive quadratic character chi = (d / .)
/// of conductor N = |d| with chi(-1) = (-1)^k, k >= 2.
inline int64_t dim_quadratic_character(int k, int64_t d) {
  const int64_t n = d < 0 ? -d : d;
  if (kronecker(d, n - 1) != ((k % 2) ? -1 : 1)) throw std::invalid_argument("character parity does not match weight");
  Q index(n);
  for (int64_t p : prime_factors(n)) index = index * Q(p + 1, p);
  Q dim = Q(k - 1, 12) * index;
  // primitive character: lambda = 2 at every prime
  dim = dim - Q(int64_t(1) << prime_factors(n).size(), 2);
  Q eps = (k % 2) ? Q(0) : (k % 4 == 2 ? Q(-1, 4) : Q(1, 4));
  Q mu = (k % 3 == 1) ? Q(0) : (k % 3 == 2 ? Q(-1, 3) : Q(1, 3));
  int64_t s1 = 0, s2 = 0;
  for (int64_t x = 0; x < n; ++x) {
    if ((x * x + 1) % n == 0) s1 += kronecker(d, x);
    if ((x * x + x + 1) % n == 0) s2 += kronecker(d, x);
  }
  dim = dim + eps * Q(s1) + mu * Q(s2);
  if (dim.den != 1) throw std::logic_error("non-integral dimension");
  return dim.num;
}

/// Class number of discriminant d < 0 from reduced forms.
inline int64_t class_number(int64_t d) {
  int64_t h = 0;
  for (int64_t a = 1; 3 * a * a <= -d; ++a)
    for (int64_t b = -a + 1; b <= a; ++b) {
      int64_t num = b * b - d;
      if (num % (4 * a)) continue;
      int64_t c = num / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
      ++h;
    }
  return h;
}

/// Lift dimension for Q(sqrt(-m)) and weight (k, k).
inline int64_t lift_dimension(int64_t m, int k) {
  if (k % 2 == 0) return dim_level_one(k + 2);
  const int64_t d = fundamental_discriminant(m);
  const int64_t s = dim_quadratic_character(k + 2, d) - class_number(d);
  if (s < 0 || s % 2) throw std::logic_error("odd number of non-CM forms");
  return s / 2;
}

}  // namespace lift_oracle
