#include "bianchi/verify.hpp"

#include "bianchi/parallel.hpp"

#include <sstream>

namespace bianchi {

GroupElement random_element(const FieldContext& ctx, std::mt19937_64& rng, int length) {
  const KElem o = ctx.zero(), one = ctx.one();
  const GroupElement gens[3] = {GroupElement{one, one, o, one}, GroupElement{o, -one, one, o},
                                GroupElement{one, ctx.omega(), o, one}};
  GroupElement g = GroupElement::identity(ctx);
  std::uniform_int_distribution<int> pick(0, 5);
  for (int i = 0; i < length; ++i) {
    int k = pick(rng);
    g = g * (k < 3 ? gens[k] : gens[k - 3].inverse());
  }
  return g;
}

KElem random_rectangle_point(const FieldContext& ctx, std::mt19937_64& rng, long den) {
  std::uniform_int_distribution<long> d(1, den);
  const long dx = d(rng), dy = d(rng);
  std::uniform_int_distribution<long> nx(0, dx), ny(0, dy);
  Rational x(nx(rng), dx), y(ny(rng), dy);
  x.canonicalize();
  y.canonicalize();
  if (ctx.three_mod_4) return ctx.from_chart(x - Rational(1, 2), y / 2);
  return KElem(x, y, ctx.m);
}

CheckResult check_termination_certificate(const Polyhedron& poly) {
  const bool ok = termination_certificate(poly);
  return {"termination certificate", ok,
          std::to_string(poly.vertices.size()) + " vertices against " + std::to_string(poly.list.entries.size()) +
              " hemispheres and their translates"};
}

CheckResult check_random_points_covered(const Polyhedron& poly, std::size_t count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<KElem> points;
  while (points.size() < count) {
    KElem z = random_rectangle_point(poly.ctx, rng, 60);
    if (!in_rectangle(z, poly.ctx) || is_singular_cusp(poly.ctx, z)) continue;
    points.push_back(z);
  }
  std::vector<char> covered(points.size(), 0);
  parallel_for(points.size(), default_workers(),
               [&](std::size_t i) { covered[i] = covering_hemisphere(poly, points[i]).has_value(); });
  std::size_t bad = 0;
  std::ostringstream first;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!covered[i] && bad++ == 0) first << ", first " << points[i];
  return {"random non-singular points strictly below a hemisphere", bad == 0,
          std::to_string(count - bad) + "/" + std::to_string(count) + " covered" + first.str()};
}

CheckResult check_boundary_squared(const GammaComplex& x) {
  return {"boundary o boundary = 0 on the quotient", boundary_squared_zero(x),
          "orbits " + std::to_string(x.cells[0].size()) + "/" + std::to_string(x.cells[1].size()) + "/" +
              std::to_string(x.cells[2].size())};
}

CheckResult check_cochain_squared(const GammaComplex& x, int n) {
  const std::string name = "d1 o d0 = 0 for n = " + std::to_string(n);
  try {
    uint64_t p = good_primes(x.ctx, 1000, 5000).front();
    if (splitting(x.ctx, p) == 1)
      build_complex(SplitPrimeField(x.ctx, p), x, n);
    else
      build_complex(InertPrimeField(x.ctx, p), x, n);
    build_complex(KField(x.ctx), x, n);
    return {name, true, "over K and modulo " + std::to_string(p)};
  } catch (const ConsistencyError& e) {
    return {name, false, e.what()};
  }
}

CheckResult check_projectors(const GammaComplex& x, int n) {
  KField f(x.ctx);
  std::size_t count = 0;
  for (int d = 0; d < 3; ++d)
    for (const auto& c : x.cells[d]) {
      if (c.cusp) continue;
      Matrix<KField> p = averaging_projector(f, c.stabilizer, n);
      if (!equal(f, multiply(f, p, p), p))
        return {"averaging projectors idempotent", false, "cell of dimension " + std::to_string(d)};
      if (rank(f, p) != invariant_dimension_by_character(x.ctx, c.stabilizer, n))
        return {"averaging projectors idempotent", false, "rank differs from the character count"};
      ++count;
    }
  return {"averaging projectors idempotent", true,
          std::to_string(count) + " stabilizers, n = " + std::to_string(n) + ", rank matches the character"};
}

CheckResult check_multiplicativity(const FieldContext& ctx, int n, std::size_t pairs, uint64_t seed) {
  std::mt19937_64 rng(seed);
  uint64_t p = good_primes(ctx, 1000, 5000).front();
  std::size_t done = 0;
  auto run = [&](const auto& f) {
    for (; done < pairs; ++done) {
      GroupElement g = random_element(ctx, rng, 6), h = random_element(ctx, rng, 6);
      if (!equal(f, action_matrix(f, g * h, n), multiply(f, action_matrix(f, g, n), action_matrix(f, h, n))))
        return false;
    }
    return true;
  };
  bool ok = splitting(ctx, p) == 1 ? run(SplitPrimeField(ctx, p)) : run(InertPrimeField(ctx, p));
  return {"action multiplicative on random pairs", ok,
          std::to_string(done) + "/" + std::to_string(pairs) + " pairs, n = " + std::to_string(n) + ", modulo " +
              std::to_string(p)};
}

CheckResult check_universal_coefficients(const FieldContext& ctx, const GammaComplex& x, int n, uint64_t prime_cap) {
  const std::string name = "mod-p dimension >= K-rational, n = " + std::to_string(n);
  try {
    SweepResult s = modp_sweep(ctx, x, n, prime_cap, std::nullopt, false);
    std::ostringstream os;
    os << s.modp.size() << " primes, K dim " << s.exact->dims.e2_20 << ", equality "
       << (s.equality_attained ? "attained" : "not attained");
    return {name, s.equality_attained, os.str()};
  } catch (const ConsistencyError& e) {
    return {name, false, e.what()};
  }
}

CheckResult check_trivial_coefficients(const GammaComplex& x) {
  FieldDimensions d = exact_dimensions(x, 0);
  const std::size_t direct = quotient_h2(x);
  return {"n = 0 agrees with the quotient complex", d.e2_20 == direct,
          "E2 " + std::to_string(d.e2_20) + ", cellular H^2 " + std::to_string(direct)};
}

std::vector<CheckResult> run_invariant_suite(const FieldContext& ctx, const VerifyOptions& options) {
  std::vector<CheckResult> out;
  PolyhedronOptions po;
  po.workers = default_workers();
  Polyhedron poly = compute_polyhedron(ctx, po);
  out.push_back(check_termination_certificate(poly));
  out.push_back(check_random_points_covered(poly, options.random_points, options.seed));
  GammaComplex x = rigid_quotient(poly);
  if (options.inject_sign_flip) {
    for (auto& c : x.cells[2])
      if (!c.boundary.empty()) {
        c.boundary.front().sign = -c.boundary.front().sign;
        break;
      }
  }
  out.push_back(check_boundary_squared(x));
  for (int n = options.n_min; n <= options.n_max; ++n) {
    out.push_back(check_cochain_squared(x, n));
    if (!out.back().ok) continue;
    out.push_back(check_projectors(x, n));
    out.push_back(check_multiplicativity(ctx, n, options.random_pairs, options.seed + n));
    out.push_back(check_universal_coefficients(ctx, x, n, options.prime_cap));
  }
  if (out[2].ok) out.push_back(check_trivial_coefficients(x));
  return out;
}

}  // namespace bianchi
