#include "bianchi/cellcomplex.hpp"
#include "bianchi/verify.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace bianchi;

namespace {

UhsPoint random_uhs(const FieldContext& ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-12, 12), den(1, 7), hn(1, 9);
  Rational x(num(rng), den(rng)), y(num(rng), den(rng)), h(hn(rng), den(rng));
  x.canonicalize();
  y.canonicalize();
  h.canonicalize();
  return {ctx.elem(x, y), h};
}

bool same_point(const UhsPoint& a, const UhsPoint& b) { return a.z == b.z && a.h2 == b.h2; }

}  // namespace

TEST_CASE("Poincare action") {
  FieldContext k = field_context(2);
  const KElem o = k.zero(), one = k.one();
  UhsPoint j{o, Rational(1)};
  CHECK(same_point(poincare_apply(GroupElement::identity(k), j), j));
  UhsPoint p{k.elem(Rational(1, 3), Rational(1, 5)), Rational(2, 7)};
  UhsPoint tp = poincare_apply(GroupElement{one, one, o, one}, p);
  CHECK(tp.z == p.z + one);
  CHECK(tp.h2 == p.h2);
  GroupElement s{o, -one, one, o};
  CHECK(same_point(poincare_apply(s, j), j));
  // S: (z, h) -> (-conj z, h) / (|z|^2 + h^2)
  UhsPoint sp = poincare_apply(s, p);
  Rational q = norm(p.z) + p.h2;
  CHECK(sp.z * (KElem::rational(q) + k.zero()) == -conj(p.z));
  CHECK(sp.h2 == p.h2 / (q * q));

  std::mt19937_64 rng(21);
  for (long m : {2L, 5L, 7L}) {
    FieldContext ctx = field_context(m);
    for (int i = 0; i < 100; ++i) {
      GroupElement g = random_element(ctx, rng, 5), h = random_element(ctx, rng, 5);
      UhsPoint x = random_uhs(ctx, rng);
      CHECK(same_point(poincare_apply(g * h, x), poincare_apply(g, poincare_apply(h, x))));
      CHECK(same_point(poincare_apply(-g, x), poincare_apply(g, x)));
    }
  }
}

TEST_CASE("identification matrices") {
  for (long m : {2L, 7L}) {
    FieldContext k = field_context(m);
    UhsPoint j{k.zero(), Rational(1)};
    auto stab = identification_matrices(k, j, j);
    CHECK(stab.size() == 4);
    for (const auto& g : stab) CHECK(same_point(poincare_apply(g, j), j));
    std::mt19937_64 rng(m);
    for (int i = 0; i < 20; ++i) {
      GroupElement g = random_element(k, rng, 4);
      UhsPoint q = poincare_apply(g, j);
      auto found = identification_matrices(k, j, q);
      CHECK(found.size() == 4);
      CHECK(std::find(found.begin(), found.end(), g) != found.end());
    }
  }
}

TEST_CASE("cusp stabilizers") {
  FieldContext k5 = field_context(5);
  KElem s = (k5.one() + k5.sqrt_minus_m()) / k5.from_int(2);
  auto gens = cusp_stabilizer_generators(k5, s);
  REQUIRE(gens.size() == 2);
  for (const auto& g : gens) {
    CHECK(g.det() == k5.one());
    CHECK(cusp_apply(g, s) == std::optional<KElem>(s));
    CHECK((g.a + g.d) == k5.from_int(2));
    CHECK_FALSE(g.is_identity());
  }
  CHECK(gens[0] * gens[1] == gens[1] * gens[0]);
  CHECK(gens[0] != gens[1]);
}

TEST_CASE("quotient complexes") {
  for (long m : {2L, 5L, 6L, 7L, 11L, 15L, 19L}) {
    CAPTURE(m);
    FieldContext ctx = field_context(m);
    Polyhedron poly = compute_polyhedron(ctx);
    PlanarComplex planar = planar_cell_structure(poly);
    for (std::size_t v = 0; v < planar.vertices.size(); ++v) {
      if (planar.is_cusp(v)) continue;
      auto st = stabilizer(planar, 0, v);
      CHECK(24 % st.size() == 0);
      for (const auto& g : st) CHECK(same_point(poincare_apply(g, planar.vertices[v]), planar.vertices[v]));
    }
    GammaComplex x = rigid_quotient(poly);
    CHECK(boundary_squared_zero(x));
    CHECK(x.is_rigid());
    CHECK(corners_fixed(x));
    CHECK(x.cusp_orbits() == static_cast<std::size_t>(oracle::class_number(oracle::discriminant(m)) - 1));
    CHECK(x.orbifold_euler_characteristic() == 0);
    for (int d = 0; d < 3; ++d)
      for (std::size_t o = 0; o < x.cells[d].size(); ++o) {
        const OrbitCell& c = x.cells[d][o];
        if (c.cusp) {
          CHECK(d == 0);
          CHECK(c.stabilizer.size() == 2);
          continue;
        }
        CHECK(24 % c.stabilizer.size() == 0);
        CHECK(c.stabilizer.size() % 2 == 0);
        for (std::size_t i = 0; i < c.stabilizer.size(); ++i)
          CHECK(c.orientation[i] == x.orientation_of(d, o, c.stabilizer[i]));
      }
  }
}

TEST_CASE("sign flip breaks boundary squared") {
  GammaComplex x = rigid_quotient(compute_polyhedron(field_context(2)));
  REQUIRE(boundary_squared_zero(x));
  for (auto& c : x.cells[2])
    if (!c.boundary.empty()) {
      c.boundary.front().sign = -c.boundary.front().sign;
      break;
    }
  CHECK_FALSE(boundary_squared_zero(x));
}
