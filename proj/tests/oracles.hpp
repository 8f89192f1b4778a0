#pragma once

// Test-side oracles, computed by methods that share nothing with the library.

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <vector>

namespace oracle {

/// Kronecker symbol (d / n) for n > 0 by factoring n.
inline int kronecker(int64_t d, int64_t n) {
  auto at_prime = [&](int64_t p) -> int {
    if (p == 2) {
      if (d % 2 == 0) return 0;
      int64_t r = ((d % 8) + 8) % 8;
      return (r == 1 || r == 7) ? 1 : -1;
    }
    int64_t r = ((d % p) + p) % p;
    if (r == 0) return 0;
    int64_t acc = 1, b = r, e = (p - 1) / 2;
    for (; e; e >>= 1, b = b * b % p)
      if (e & 1) acc = acc * b % p;
    return acc == 1 ? 1 : -1;
  };
  int res = 1;
  for (int64_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      res *= at_prime(p);
      n /= p;
    }
  if (n > 1) res *= at_prime(n);
  return res;
}

/// Class number of the fundamental discriminant d < -4 from Dirichlet's formula
/// h = -(1/|d|) * sum_{a=1}^{|d|-1} (d/a) a.
inline int64_t class_number(int64_t d) {
  const int64_t n = -d;
  int64_t s = 0;
  for (int64_t a = 1; a < n; ++a) s += kronecker(d, a) * a;
  return -s / n;
}

inline bool squarefree(int64_t m) {
  for (int64_t p = 2; p * p <= m; ++p)
    if (m % (p * p) == 0) return false;
  return true;
}

inline int64_t discriminant(int64_t m) { return m % 4 == 3 ? -m : -4 * m; }

}  // namespace oracle
