#include "bianchi/numbers.hpp"

namespace bianchi {

Rational frac(const Integer& a, const Integer& b) {
  if (b == 0) throw std::domain_error("frac: zero denominator");
  Rational r(a, b);
  r.canonicalize();
  return r;
}

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

std::optional<Rational> rational_sqrt_if_square(const Rational& q) {
  if (sgn(q) < 0) throw std::invalid_argument("rational_sqrt_if_square: negative argument");
  const Integer& num = q.get_num();
  const Integer& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  Integer sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  Rational r(sn, sd);
  r.canonicalize();
  return r;
}

Integer floor_sqrt(const Rational& q) {
  if (sgn(q) < 0) throw std::invalid_argument("floor_sqrt: negative argument");
  Integer f = floor_of(q);
  Integer s;
  mpz_sqrt(s.get_mpz_t(), f.get_mpz_t());
  // floor(sqrt(q)) == floor(sqrt(floor(q)))
  return s;
}

Integer ceil_sqrt(const Rational& q) {
  if (sgn(q) < 0) throw std::invalid_argument("ceil_sqrt: negative argument");
  Integer s = floor_sqrt(q);
  if (Rational(s * s) < q) s += 1;
  return s;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_string(const std::string& s) {
  Rational r(s);
  r.canonicalize();
  return r;
}

int64_t to_i64(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
  return z.get_si();
}

}  // namespace bianchi
