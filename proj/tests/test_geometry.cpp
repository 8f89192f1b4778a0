#include "bianchi/geometry.hpp"

#include <doctest.h>

#include <random>

using namespace bianchi;

namespace {

Hemisphere at(const FieldContext& ctx, long mu, const KElem& center) {
  return Hemisphere::make_unchecked(ctx.from_int(mu), center * ctx.from_int(mu));
}

KElem random_point(const FieldContext& ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-30, 30), den(1, 12);
  Rational r(num(rng), den(rng)), w(num(rng), den(rng));
  r.canonicalize();
  w.canonicalize();
  return ctx.elem(r, w);
}

}  // namespace

TEST_CASE("defect") {
  FieldContext k = field_context(2);
  Hemisphere s0 = at(k, 1, k.zero());
  CHECK(defect(s0, k.zero()) == -1);
  CHECK(defect(s0, k.one()) == 0);
  CHECK(defect(s0, k.from_int(2)) == 3);
  Hemisphere s = Hemisphere::make(k, k.omega(), k.one());
  CHECK(defect(s, s.center) == -s.r2);
}

TEST_CASE("strictly below") {
  FieldContext k = field_context(7);
  Hemisphere s0 = at(k, 1, k.zero()), s1 = at(k, 1, k.one());
  CHECK(strictly_below(s1, s0, k.zero()));
  CHECK_FALSE(strictly_below(s0, s1, k.zero()));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    KElem z = random_point(k, rng);
    CHECK_FALSE(strictly_below(s0, s0, z));
    Rational h2(1, 1 + static_cast<long>(rng() % 9));
    CHECK(strictly_below(UhsPoint{z, h2}, s0) == (h2 < -defect(s0, z)));
  }
}

TEST_CASE("everywhere below") {
  FieldContext k = field_context(2);
  Hemisphere s0 = at(k, 1, k.zero()), s1 = at(k, 1, k.one());
  CHECK(everywhere_below(s0, s0));
  CHECK(everywhere_below(at(k, 2, k.zero()), s0));
  CHECK_FALSE(everywhere_below(s0, s1));
  CHECK_FALSE(everywhere_below(s0, at(k, 2, k.zero())));
}

TEST_CASE("agreement lines") {
  FieldContext k = field_context(2);
  Hemisphere s0 = at(k, 1, k.zero()), s1 = at(k, 1, k.one());
  AgreementLine l = agreement_line(s0, s1);
  CHECK(l == agreement_line(s1, s0));
  // Re z = 1/2
  CHECK(sgn(l.eval(KElem(Rational(1, 2), 7, 2))) == 0);
  CHECK(sgn(l.eval(KElem(Rational(1, 3), 0, 2))) != 0);
  // radius 1 at 0 against radius 1/2 at 1: |z|^2 - 1 = |z-1|^2 - 1/4 gives Re z = 7/8
  AgreementLine l2 = agreement_line(s0, at(k, 2, k.one()));
  CHECK(sgn(l2.eval(KElem(Rational(7, 8), 0, 2))) == 0);
  CHECK(sgn(l2.eval(KElem(Rational(7, 8), 3, 2))) == 0);
  CHECK(sgn(l2.eval(KElem(Rational(5, 8), 0, 2))) != 0);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    Hemisphere a = at(k, 1 + rng() % 3, random_point(k, rng)), b = at(k, 1 + rng() % 3, random_point(k, rng));
    if (a.center == b.center) continue;
    AgreementLine line = agreement_line(a, b);
    KElem z = random_point(k, rng);
    CHECK((sgn(line.eval(z)) == 0) == (defect(a, z) == defect(b, z)));
  }
}

TEST_CASE("lift on hemisphere") {
  FieldContext k = field_context(2);
  Hemisphere s0 = at(k, 1, k.zero());
  CHECK(lift_on_hemisphere(k.zero(), s0).h2 == 1);
  CHECK(lift_on_hemisphere(k.one(), s0).h2 == 0);
  CHECK(lift_on_hemisphere(KElem(Rational(1, 2), 0, 2), s0).h2 == Rational(3, 4));
}

TEST_CASE("rectangle") {
  FieldContext k2 = field_context(2), k7 = field_context(7);
  CHECK(in_rectangle(KElem(Rational(1, 2), Rational(1, 2), 2), k2));
  CHECK_FALSE(in_rectangle(k7.from_chart(0, Rational(3, 4)), k7));
  CHECK(in_rectangle(k2.zero(), k2));
  CHECK(in_rectangle(k7.zero(), k7));
  std::mt19937_64 rng(13);
  for (long m : {2L, 5L, 7L, 15L}) {
    FieldContext ctx = field_context(m);
    for (int i = 0; i < 200; ++i) {
      KElem z = random_point(ctx, rng);
      Reduction red = reduce_to_rectangle(z, ctx);
      CHECK(in_half_open_rectangle(red.point, ctx));
      CHECK(red.translation.is_integral());
      CHECK(red.point + red.translation == z);
    }
  }
}

TEST_CASE("translations preserve defects") {
  std::mt19937_64 rng(17);
  for (long m : {2L, 7L, 5L}) {
    FieldContext ctx = field_context(m);
    for (int i = 0; i < 100; ++i) {
      Hemisphere s = at(ctx, 1 + rng() % 4, random_point(ctx, rng));
      KElem t = ctx.elem(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 7) - 3), z = random_point(ctx, rng);
      CHECK(defect(s.translated(t), z + t) == defect(s, z));
    }
  }
}
