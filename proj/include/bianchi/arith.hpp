#pragma once

// Arithmetic in K = Q(sqrt(-m)) and its ring of integers O = Z + Z*omega, where
// omega = sqrt(-m) for m = 1, 2 mod 4 and omega = (-1 + sqrt(-m))/2 for m = 3 mod 4.

#include "bianchi/numbers.hpp"

#include <compare>
#include <functional>
#include <optional>
#include <ostream>
#include <vector>

namespace bianchi {

/// Element r + w*omega of K. Carries m so that products can be formed without a
/// context; m == 0 marks a plain rational constant that adopts its partner's m.
struct KElem {
  Rational r;
  Rational w;
  long m = 0;

  KElem() = default;
  KElem(Rational r_, Rational w_, long m_) : r(std::move(r_)), w(std::move(w_)), m(m_) {}
  static KElem rational(Rational q) { return KElem(std::move(q), 0, 0); }

  bool is_zero() const { return sgn(r) == 0 && sgn(w) == 0; }
  bool is_integral() const { return is_integer(r) && is_integer(w); }
  bool is_rational() const { return sgn(w) == 0; }
  bool three_mod_4() const { return m % 4 == 3; }

  /// Coordinates in the chart z = x + y*sqrt(-m).
  Rational chart_x() const;
  Rational chart_y() const;
  static KElem from_chart(const Rational& x, const Rational& y, long m);

  KElem& operator+=(const KElem& o);
  KElem& operator-=(const KElem& o);
  KElem& operator*=(const KElem& o);
  KElem& operator/=(const KElem& o);
  KElem operator-() const { return KElem(-r, -w, m); }

  friend KElem operator+(KElem a, const KElem& b) { return a += b; }
  friend KElem operator-(KElem a, const KElem& b) { return a -= b; }
  friend KElem operator*(KElem a, const KElem& b) { return a *= b; }
  friend KElem operator/(KElem a, const KElem& b) { return a /= b; }

  friend bool operator==(const KElem& a, const KElem& b) { return a.r == b.r && a.w == b.w; }
  friend bool operator!=(const KElem& a, const KElem& b) { return !(a == b); }
  /// Lexicographic on (r, w); used only for canonical ordering.
  friend bool operator<(const KElem& a, const KElem& b) {
    if (a.r != b.r) return a.r < b.r;
    return a.w < b.w;
  }
};

std::ostream& operator<<(std::ostream& os, const KElem& z);

/// |c|^2 = c * conj(c).
Rational norm(const KElem& c);
KElem conj(const KElem& c);
/// c + conj(c).
Rational trace(const KElem& c);

/// Reduced primitive positive definite binary quadratic form A x^2 + B xy + C y^2.
struct QuadraticForm {
  Integer a, b, c;
  Integer discriminant() const { return b * b - 4 * a * c; }
  friend bool operator==(const QuadraticForm& x, const QuadraticForm& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c;
  }
};

QuadraticForm reduce_form(QuadraticForm f);
std::vector<QuadraticForm> reduced_forms(const Integer& discriminant);

struct FieldContext {
  long m = 0;
  bool three_mod_4 = false;
  Integer discriminant;
  int class_number = 0;
  std::vector<QuadraticForm> class_group;  // principal form first

  KElem elem(const Rational& r, const Rational& w) const { return KElem(r, w, m); }
  KElem from_int(long v) const { return KElem(Rational(v), 0, m); }
  KElem zero() const { return from_int(0); }
  KElem one() const { return from_int(1); }
  KElem omega() const { return KElem(0, 1, m); }
  KElem sqrt_minus_m() const;
  /// Rational chart point x + y*sqrt(-m).
  KElem from_chart(const Rational& x, const Rational& y) const { return KElem::from_chart(x, y, m); }
};

/// Rejects m in {1, 3} and non-squarefree m.
FieldContext field_context(long m);

bool is_squarefree(long m);

/// Integral ideal with Z-basis {a, b + c*omega} in Hermite normal form: a, c > 0, 0 <= b < a.
struct Ideal {
  Integer a, b, c;
  long m = 0;
  Integer norm() const { return a * c; }
  KElem first() const { return KElem(Rational(a), 0, m); }
  KElem second() const { return KElem(Rational(b), Rational(c), m); }
  bool contains(const KElem& x) const;
  bool is_unit() const { return a == 1 && c == 1; }
  friend bool operator==(const Ideal& x, const Ideal& y) { return x.a == y.a && x.b == y.b && x.c == y.c; }
};

/// Ideal generated over O by the given integral elements (not all zero).
Ideal ideal_from_generators(const FieldContext& ctx, const std::vector<KElem>& gens);
Ideal ideal_product(const FieldContext& ctx, const Ideal& x, const Ideal& y);
Ideal ideal_conj(const FieldContext& ctx, const Ideal& x);

/// Fractional ideal numerator/denominator.
struct FractionalIdeal {
  Ideal numerator;
  Integer denominator = 1;
  /// Z-basis of the fractional ideal.
  std::vector<KElem> basis() const;
};

FractionalIdeal ideal_inverse(const FieldContext& ctx, const Ideal& x);
FractionalIdeal fractional_product(const FieldContext& ctx, const FractionalIdeal& x, const FractionalIdeal& y);

/// Integer coefficients c_i with sum c_i * gens[i] == target, if target is in the Z-span.
std::optional<std::vector<Integer>> integer_combination(const std::vector<KElem>& gens, const KElem& target);

/// True iff mu*O + lambda*O == O.
bool is_unimodular(const FieldContext& ctx, const KElem& mu, const KElem& lambda);

struct IdealClass {
  QuadraticForm form;
  int index = 0;  // position in FieldContext::class_group
  bool principal() const { return index == 0; }
  friend bool operator==(const IdealClass& x, const IdealClass& y) { return x.index == y.index; }
};

IdealClass ideal_class(const FieldContext& ctx, const Ideal& ideal);
IdealClass ideal_class(const FieldContext& ctx, const KElem& lambda, const KElem& mu);

/// Write z in K as lambda/mu with lambda, mu integral and mu a positive rational integer.
std::pair<KElem, KElem> as_fraction(const FieldContext& ctx, const KElem& z);

/// Integral elements with 0 < norm <= bound (or norm == 0 included when include_zero).
std::vector<KElem> elements_with_norm_at_most(const FieldContext& ctx, const Rational& bound,
                                              bool include_zero = false);
std::vector<KElem> elements_with_norm(const FieldContext& ctx, const Integer& n);

/// A generator of a principal integral ideal, if it is principal.
std::optional<KElem> principal_generator(const FieldContext& ctx, const Ideal& ideal);

}  // namespace bianchi
