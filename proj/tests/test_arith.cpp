#include "bianchi/arith.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace bianchi;

namespace {

KElem random_elem(const FieldContext& ctx, std::mt19937_64& rng, bool integral = false) {
  std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
  if (integral) return ctx.elem(num(rng), num(rng));
  Rational r(num(rng), den(rng)), w(num(rng), den(rng));
  r.canonicalize();
  w.canonicalize();
  return ctx.elem(r, w);
}

}  // namespace

TEST_CASE("field contexts") {
  FieldContext k2 = field_context(2);
  CHECK(k2.discriminant == -8);
  CHECK(k2.omega() * k2.omega() == k2.from_int(-2));
  FieldContext k7 = field_context(7);
  CHECK(k7.discriminant == -7);
  // omega = (-1 + sqrt(-7))/2: omega^2 + omega + 2 = 0
  KElem w = k7.omega();
  CHECK((w * w + w + k7.from_int(2)).is_zero());
  CHECK(k7.sqrt_minus_m() == k7.from_int(2) * w + k7.one());
  CHECK(field_context(5).class_number == 2);
  CHECK_THROWS(field_context(1));
  CHECK_THROWS(field_context(3));
  CHECK_THROWS(field_context(12));
}

TEST_CASE("class numbers agree with the analytic formula for m <= 200") {
  for (long m = 2; m <= 200; ++m) {
    if (m == 3 || !oracle::squarefree(m)) continue;
    CAPTURE(m);
    CHECK(field_context(m).class_number == oracle::class_number(oracle::discriminant(m)));
  }
}

TEST_CASE("norm and conjugation") {
  FieldContext k7 = field_context(7), k2 = field_context(2);
  CHECK(norm(k7.one() + k7.omega()) == 2);
  CHECK(norm(k2.one()) == 1);
  CHECK(norm(k7.one()) == 1);
  CHECK(norm(k2.omega()) == 2);
  CHECK(conj(k7.omega()) == -k7.one() - k7.omega());
  CHECK(conj(k2.from_int(5)) == k2.from_int(5));
  std::mt19937_64 rng(7);
  for (long m : {2L, 5L, 7L, 11L, 15L, 19L}) {
    FieldContext ctx = field_context(m);
    for (int i = 0; i < 200; ++i) {
      KElem x = random_elem(ctx, rng), y = random_elem(ctx, rng);
      CHECK(norm(x * y) == norm(x) * norm(y));
      CHECK(conj(conj(x)) == x);
      CHECK(x * conj(x) == KElem::rational(norm(x)) + ctx.zero());
    }
  }
}

TEST_CASE("unimodularity") {
  FieldContext k5 = field_context(5);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) CHECK(is_unimodular(k5, k5.one(), random_elem(k5, rng, true)));
  CHECK_FALSE(is_unimodular(k5, k5.from_int(2), k5.one() + k5.omega()));
  CHECK(is_unimodular(k5, k5.zero(), k5.one()));
  for (long m : {2L, 5L, 7L, 15L}) {
    FieldContext ctx = field_context(m);
    for (int i = 0; i < 100; ++i) {
      KElem a = random_elem(ctx, rng, true), b = random_elem(ctx, rng, true);
      if (a.is_zero() && b.is_zero()) continue;
      const bool u = is_unimodular(ctx, a, b);
      CHECK(u == is_unimodular(ctx, b, a));
      CHECK(u == is_unimodular(ctx, -a, b));
      CHECK(u == is_unimodular(ctx, a, -b));
    }
  }
}

TEST_CASE("ideal classes") {
  FieldContext k5 = field_context(5);
  CHECK(ideal_class(k5, k5.one(), k5.zero()).principal());
  IdealClass c = ideal_class(k5, k5.one() + k5.omega(), k5.from_int(2));
  CHECK_FALSE(c.principal());
  CHECK(c.form.a == 2);
  std::mt19937_64 rng(3);
  for (long m : {5L, 6L, 10L, 15L, 23L}) {
    FieldContext ctx = field_context(m);
    for (int i = 0; i < 40; ++i) {
      KElem l = random_elem(ctx, rng, true), mu = random_elem(ctx, rng, true), t = random_elem(ctx, rng, true);
      if ((l.is_zero() && mu.is_zero()) || t.is_zero()) continue;
      CHECK(ideal_class(ctx, l, mu) == ideal_class(ctx, l * t, mu * t));
    }
  }
  // class number one: every pair is principal
  for (long m : {2L, 7L, 11L, 19L}) {
    FieldContext ctx = field_context(m);
    for (int i = 0; i < 40; ++i) {
      KElem l = random_elem(ctx, rng, true), mu = random_elem(ctx, rng, true);
      if (l.is_zero() && mu.is_zero()) continue;
      CHECK(ideal_class(ctx, l, mu).principal());
    }
  }
}

TEST_CASE("rational square roots") {
  CHECK(*rational_sqrt_if_square(Rational(9, 4)) == Rational(3, 2));
  CHECK_FALSE(rational_sqrt_if_square(Rational(2)).has_value());
  CHECK(*rational_sqrt_if_square(Rational(0)) == 0);
  CHECK(ceil_sqrt(Rational(2)) == 2);
  CHECK(ceil_sqrt(Rational(4)) == 2);
  CHECK(ceil_sqrt(Rational(17, 4)) == 3);
  CHECK_THROWS(ceil_sqrt(Rational(-1)));
}

TEST_CASE("reduced forms reduce") {
  for (long m : {5L, 14L, 23L, 47L, 71L}) {
    FieldContext ctx = field_context(m);
    for (const auto& f : ctx.class_group) {
      CHECK(f.discriminant() == ctx.discriminant);
      CHECK(reduce_form(f).a == f.a);
    }
  }
}
