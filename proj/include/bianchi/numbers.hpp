#pragma once

// Exact integer and rational helpers on top of GMP.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace bianchi {

using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown when an internal invariant of the pipeline is violated.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// a/b in canonical form.
Rational frac(const Integer& a, const Integer& b);

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);

/// Exact nonnegative square root when q is the square of a rational.
std::optional<Rational> rational_sqrt_if_square(const Rational& q);

/// Smallest integer n >= 0 with n^2 >= q.
Integer ceil_sqrt(const Rational& q);

/// Largest integer n >= 0 with n^2 <= q.
Integer floor_sqrt(const Rational& q);

bool is_integer(const Rational& q);

/// "num/den", or just "num" for integers.
std::string to_string(const Rational& q);
Rational rational_from_string(const std::string& s);

int64_t to_i64(const Integer& z);

}  // namespace bianchi
