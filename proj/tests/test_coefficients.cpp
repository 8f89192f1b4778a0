#include "bianchi/cellcomplex.hpp"
#include "bianchi/coefficients.hpp"
#include "bianchi/verify.hpp"

#include <doctest.h>

#include <random>

using namespace bianchi;

TEST_CASE("central elements act trivially") {
  FieldContext k = field_context(7);
  KField f(k);
  GroupElement id = GroupElement::identity(k);
  for (int n = 0; n <= 4; ++n) {
    CHECK(equal(f, action_matrix(f, id, n), identity_matrix(f, ModuleEn{n}.dim())));
    CHECK(equal(f, action_matrix(f, -id, n), identity_matrix(f, ModuleEn{n}.dim())));
  }
}

TEST_CASE("sym power of a translation") {
  FieldContext k = field_context(2);
  KField f(k);
  // (1 1; 0 1) on Sym^1: x -> x, y -> x + y
  Matrix<KField> s = sym_power(f, k.one(), k.one(), k.zero(), k.one(), 1);
  CHECK(s.at(0, 0) == k.one());
  CHECK(s.at(1, 1) == k.one());
  CHECK(s.at(1, 0) + s.at(0, 1) == k.one());
  CHECK((s.at(1, 0).is_zero() || s.at(0, 1).is_zero()));
}

TEST_CASE("unipotent invariants") {
  for (long m : {2L, 5L, 7L}) {
    FieldContext k = field_context(m);
    KField f(k);
    for (int n = 0; n <= 4; ++n) {
      CAPTURE(n);
      ModuleEn mod{n};
      Matrix<KField> inv = unipotent_invariants(f, k, {k.one(), k.omega()}, n);
      REQUIRE(inv.cols == 1);
      // spanned by x^n (x) yb^n
      for (std::size_t i = 0; i < mod.dim(); ++i)
        CHECK(inv.at(i, 0).is_zero() == (i != mod.index(n, 0)));
    }
    CHECK(unipotent_invariants(f, k, {k.omega()}, 1).cols == 2);
  }
}

TEST_CASE("finite stabilizer invariants three ways") {
  for (long m : {2L, 7L, 15L}) {
    FieldContext k = field_context(m);
    KField f(k);
    GammaComplex x = rigid_quotient(compute_polyhedron(k));
    for (int n = 0; n <= 3; ++n)
      for (int d = 0; d < 3; ++d)
        for (const auto& c : x.cells[d]) {
          if (c.cusp) continue;
          const std::size_t by_character = invariant_dimension_by_character(k, c.stabilizer, n);
          CHECK(invariants(f, k, c.stabilizer, n).cols == by_character);
          CHECK(fixed_space(f, c.stabilizer, n).cols == by_character);
          Matrix<KField> p = averaging_projector(f, c.stabilizer, n);
          CHECK(equal(f, multiply(f, p, p), p));
        }
  }
}

TEST_CASE("cusp torus cohomology") {
  for (long m : {5L, 6L, 15L}) {
    FieldContext k = field_context(m);
    KField f(k);
    for (const auto& s : singular_points(k)) {
      auto gens = cusp_stabilizer_generators(k, s.value);
      REQUIRE(gens.size() == 2);
      for (int n = 1; n <= 3; ++n) {
        TorusCohomology t = torus_cohomology(f, gens[0], gens[1], n);
        CHECK(t.h0 == 1);
        CHECK(t.h1 == 2);
        CHECK(t.h2 == 1);
      }
      TorusCohomology t0 = torus_cohomology(f, gens[0], gens[1], 0);
      CHECK(t0.h0 == 1);
      CHECK(t0.h1 == 2);
      CHECK(t0.h2 == 1);
    }
  }
}

TEST_CASE("action is multiplicative") {
  std::mt19937_64 rng(31);
  for (long m : {2L, 5L, 7L}) {
    FieldContext k = field_context(m);
    KField f(k);
    for (int i = 0; i < 60; ++i) {
      GroupElement g = random_element(k, rng, 4), h = random_element(k, rng, 4);
      const int n = 1 + i % 3;
      CHECK(equal(f, action_matrix(f, g * h, n), multiply(f, action_matrix(f, g, n), action_matrix(f, h, n))));
    }
    CHECK(check_multiplicativity(k, 3, 500, 7).ok);
  }
}
