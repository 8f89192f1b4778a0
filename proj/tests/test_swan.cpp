#include "bianchi/swan.hpp"
#include "bianchi/verify.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <set>

using namespace bianchi;

namespace {

/// Singular points straight from Swan's enumeration: z = p (r + sqrt(-m)) / s with
/// -s/2 < r <= s/2, s^2 <= r^2 + m, and either s != 1, s | r^2 + m, p coprime to s mod s,
/// or (m = 3 mod 4) s even, s != 2, 2s | r^2 + m, p coprime to s/2 mod s/2.
/// Every point produced must be nonprincipal. Returned as chart coordinates mod O.
std::set<std::pair<Rational, Rational>> singular_by_constraints(const FieldContext& ctx) {
  std::set<std::pair<Rational, Rational>> out;
  const long m = ctx.m;
  for (long s = 2; 3 * s * s <= 4 * m; ++s) {
    if (ctx.three_mod_4 && (s % 2 || s == 2)) continue;
    const long q = ctx.three_mod_4 ? s / 2 : s;
    const long div = ctx.three_mod_4 ? 2 * s : s;
    for (long r = -s; r <= s; ++r) {
      if (2 * r <= -s || 2 * r > s) continue;
      if (s * s > r * r + m || (r * r + m) % div) continue;
      for (long p = 0; p < q; ++p) {
        if (std::gcd(p, q) != 1) continue;
        KElem z = (ctx.sqrt_minus_m() + ctx.from_int(r)) * ctx.from_int(p) / ctx.from_int(s);
        auto [lam, mu] = as_fraction(ctx, z);
        CHECK_FALSE(ideal_class(ctx, lam, mu).principal());
        KElem red = reduce_to_rectangle(z, ctx).point;
        out.insert({red.chart_x(), red.chart_y()});
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("norm values") {
  FieldContext k2 = field_context(2), k7 = field_context(7);
  std::vector<Integer> v = norm_values_up_to(k2, Rational(4));
  CHECK(v == std::vector<Integer>{1, 2, 3, 4});
  std::vector<Integer> w = norm_values_up_to(k7, Rational(4));
  CHECK(w.front() == 1);
  CHECK(std::find(w.begin(), w.end(), Integer(2)) != w.end());
  CHECK(std::find(w.begin(), w.end(), Integer(3)) == w.end());
  for (const auto& mu : mu_values(k7, 2)) CHECK(norm(mu) == 2);
}

TEST_CASE("recording hemispheres") {
  for (long m : {2L, 7L, 5L}) {
    FieldContext ctx = field_context(m);
    HemisphereList l;
    record_hemispheres(ctx, 1, l);
    REQUIRE(!l.entries.empty());
    for (const auto& s : l.entries) {
      CHECK(norm(s.mu) == 1);
      CHECK(s.center.is_integral());
    }
    const std::size_t before = l.entries.size();
    record_hemispheres(ctx, 2, l);
    CHECK(l.entries.size() >= before);
    for (const auto& s : l.entries) CHECK(is_unimodular(ctx, s.mu, s.lambda));
  }
}

TEST_CASE("class number one polyhedra") {
  for (long m : {2L, 7L, 11L, 19L}) {
    CAPTURE(m);
    FieldContext ctx = field_context(m);
    Polyhedron p = compute_polyhedron(ctx);
    const Integer d = -ctx.discriminant;
    // |mu| <= (|D| + 1)/2
    CHECK(4 * p.max_mu_norm() <= (d + 1) * (d + 1));
    CHECK(p.zeta2 * p.next_norm >= 1);
    CHECK(termination_certificate(p));
    CHECK(p.singular.empty());
    for (const auto& v : p.vertices)
      for (const auto& s : p.list.entries) CHECK(defect(s, v.z) >= -v.h2);
  }
}

TEST_CASE("random points are covered") {
  for (long m : {2L, 5L, 7L, 15L}) {
    CAPTURE(m);
    FieldContext ctx = field_context(m);
    Polyhedron p = compute_polyhedron(ctx);
    CHECK(check_random_points_covered(p, 300, 99).ok);
    for (const auto& s : p.singular) CHECK_FALSE(covering_hemisphere(p, s.value).has_value());
  }
}

TEST_CASE("singular points") {
  CHECK(singular_points(field_context(2)).empty());
  auto s5 = singular_points(field_context(5));
  REQUIRE(s5.size() == 1);
  FieldContext k5 = field_context(5);
  CHECK(s5[0].value == (k5.one() + k5.sqrt_minus_m()) / k5.from_int(2));
  FieldContext k15 = field_context(15);
  auto s15 = singular_points(k15);
  std::set<std::pair<Rational, Rational>> got, want;
  for (const auto& s : s15) got.insert({s.value.chart_x(), s.value.chart_y()});
  for (long r : {1L, -1L}) {
    KElem z = (k15.from_int(r) + k15.sqrt_minus_m()) / k15.from_int(4);
    KElem red = reduce_to_rectangle(z, k15).point;
    want.insert({red.chart_x(), red.chart_y()});
  }
  CHECK(got == want);
}

TEST_CASE("singular census matches h - 1 and the constraint enumeration") {
  for (long m = 2; m <= 100; ++m) {
    if (m == 3 || !oracle::squarefree(m)) continue;
    CAPTURE(m);
    FieldContext ctx = field_context(m);
    auto pts = singular_points(ctx);
    std::set<int> classes;
    std::set<std::pair<Rational, Rational>> got;
    for (const auto& s : pts) {
      classes.insert(s.cls.index);
      got.insert({s.value.chart_x(), s.value.chart_y()});
    }
    CHECK(static_cast<int64_t>(classes.size()) == oracle::class_number(oracle::discriminant(m)) - 1);
    CHECK(got == singular_by_constraints(ctx));
  }
}
