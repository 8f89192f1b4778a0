#include "bianchi/group.hpp"

#include <algorithm>
#include <set>

namespace bianchi {

GroupElement GroupElement::identity(const FieldContext& ctx) { return {ctx.one(), ctx.zero(), ctx.zero(), ctx.one()}; }

GroupElement GroupElement::make(const KElem& a, const KElem& b, const KElem& c, const KElem& d) {
  GroupElement g{a, b, c, d};
  for (const auto* e : {&a, &b, &c, &d})
    if (!e->is_integral()) throw std::invalid_argument("GroupElement: non-integral entry");
  KElem det = g.det();
  if (!(det.r == 1 && sgn(det.w) == 0)) throw std::invalid_argument("GroupElement: determinant is not 1");
  return g;
}

bool GroupElement::is_central() const {
  return b.is_zero() && c.is_zero() && a == d && a.is_rational() && (a.r == 1 || a.r == -1);
}

bool GroupElement::is_identity() const { return is_central() && a.r == 1; }

bool operator<(const GroupElement& x, const GroupElement& y) {
  if (x.a != y.a) return x.a < y.a;
  if (x.b != y.b) return x.b < y.b;
  if (x.c != y.c) return x.c < y.c;
  return x.d < y.d;
}

std::ostream& operator<<(std::ostream& os, const GroupElement& g) {
  return os << "[" << g.a << ", " << g.b << "; " << g.c << ", " << g.d << "]";
}

UhsPoint poincare_apply(const GroupElement& g, const UhsPoint& p) {
  if (sgn(p.h2) < 0) throw std::invalid_argument("poincare_apply: negative squared height");
  if (sgn(p.h2) == 0) {
    auto z = cusp_apply(g, p.z);
    if (!z) throw std::invalid_argument("poincare_apply: cusp sent to infinity");
    return {*z, 0};
  }
  KElem czd = g.c * p.z + g.d;
  Rational n = norm(czd) + norm(g.c) * p.h2;
  KElem num = (g.a * p.z + g.b) * conj(czd) + g.a * conj(g.c) * KElem::rational(p.h2);
  num.r /= n;
  num.w /= n;
  return {num, p.h2 / (n * n)};
}

std::optional<KElem> cusp_apply(const GroupElement& g, const KElem& z) {
  KElem den = g.c * z + g.d;
  if (den.is_zero()) return std::nullopt;
  return (g.a * z + g.b) / den;
}

namespace {

/// d in O with |w0 - d|^2 == T... expressed as |c z + d|^2 == T with w0 = -c z.
std::vector<KElem> lattice_points_on_circle(const FieldContext& ctx, const KElem& w0, const Rational& t) {
  std::vector<KElem> out;
  const Rational x0 = w0.chart_x(), y0 = w0.chart_y();
  const long m = ctx.m;
  // |y - y0| <= sqrt(T/m)
  Rational ry = t / m;
  Integer span = ceil_sqrt(ry);
  if (!ctx.three_mod_4) {
    for (Integer k = floor_of(y0) - span - 1; k <= ceil_of(y0) + span + 1; ++k) {
      Rational dy = Rational(k) - y0;
      Rational rem = t - m * dy * dy;
      if (sgn(rem) < 0) continue;
      auto s = rational_sqrt_if_square(rem);
      if (!s) continue;
      std::set<Rational> xs = {x0 + *s, x0 - *s};
      for (const auto& x : xs)
        if (is_integer(x)) out.push_back(KElem(x, Rational(k), m));
    }
  } else {
    for (Integer k = floor_of(2 * y0) - 2 * span - 2; k <= ceil_of(2 * y0) + 2 * span + 2; ++k) {
      Rational dy = frac(k, 2) - y0;
      Rational rem = t - m * dy * dy;
      if (sgn(rem) < 0) continue;
      auto s = rational_sqrt_if_square(rem);
      if (!s) continue;
      std::set<Rational> xs = {x0 + *s, x0 - *s};
      for (const auto& x : xs) {
        Rational j = x + frac(k, 2);
        if (is_integer(j)) out.push_back(KElem(j, Rational(k), m));
      }
    }
  }
  return out;
}

}  // namespace

std::vector<GroupElement> identification_matrices(const FieldContext& ctx, const UhsPoint& p, const UhsPoint& q) {
  if (sgn(p.h2) <= 0 || sgn(q.h2) <= 0) throw std::invalid_argument("identification_matrices: points must be interior");
  std::vector<GroupElement> out;
  // Heights transform by zeta' = zeta / N, so t = rho/r = 1/N must be rational.
  auto t = rational_sqrt_if_square(q.h2 / p.h2);
  if (!t) return out;
  const KElem z = p.z, zq = q.z;
  if (*t == 1) {
    KElem b = zq - z;
    if (b.is_integral()) {
      out.push_back({ctx.one(), b, ctx.zero(), ctx.one()});
      out.push_back({-ctx.one(), b, ctx.zero(), -ctx.one()});
    }
  }
  const Rational inv_t = 1 / *t;
  for (const KElem& c : elements_with_norm_at_most(ctx, inv_t / p.h2)) {
    Rational target = inv_t - p.h2 * norm(c);
    if (sgn(target) < 0) continue;
    KElem cz = c * z;
    for (const KElem& d : lattice_points_on_circle(ctx, -cz, target)) {
      KElem czd = cz + d;
      KElem a = c * zq + KElem::rational(*t) * conj(czd);
      if (!a.is_integral()) continue;
      KElem b = (a * d - ctx.one()) / c;
      if (!b.is_integral()) continue;
      GroupElement g{a, b, c, d};
      if (poincare_apply(g, p) == q) out.push_back(g);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<GroupElement> close_group(const FieldContext& ctx, const std::vector<GroupElement>& gens, std::size_t cap) {
  std::set<GroupElement> seen;
  std::vector<GroupElement> frontier = {GroupElement::identity(ctx), -GroupElement::identity(ctx)};
  for (const auto& g : frontier) seen.insert(g);
  while (!frontier.empty()) {
    std::vector<GroupElement> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        GroupElement y = x * g;
        if (seen.insert(y).second) {
          if (seen.size() > cap) throw ConsistencyError("close_group: group exceeds the expected order bound");
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

std::vector<GroupElement> cusp_stabilizer_generators(const FieldContext& ctx, const KElem& s) {
  auto [lam, mu] = as_fraction(ctx, s);
  Ideal ideal = ideal_from_generators(ctx, {lam, mu});
  FractionalIdeal inv2 = ideal_inverse(ctx, ideal_product(ctx, ideal, ideal));
  std::vector<GroupElement> out;
  for (const KElem& beta : inv2.basis()) {
    GroupElement g{ctx.one() - beta * lam * mu, beta * lam * lam, -beta * mu * mu, ctx.one() + beta * lam * mu};
    out.push_back(GroupElement::make(g.a, g.b, g.c, g.d));
  }
  return out;
}

namespace {

/// (x, y) in I^{-1} with lambda*y - mu*x == 1, where I = (lambda, mu).
std::pair<KElem, KElem> complete_column(const FieldContext& ctx, const KElem& lam, const KElem& mu, const Ideal& ideal) {
  std::vector<KElem> basis = ideal_inverse(ctx, ideal).basis();
  std::vector<KElem> gens = {lam * basis[0], lam * basis[1], -(mu * basis[0]), -(mu * basis[1])};
  auto coef = integer_combination(gens, ctx.one());
  if (!coef) throw ConsistencyError("complete_column: no solution in the inverse ideal");
  KElem y = KElem::rational(Rational((*coef)[0])) * basis[0] + KElem::rational(Rational((*coef)[1])) * basis[1];
  KElem x = KElem::rational(Rational((*coef)[2])) * basis[0] + KElem::rational(Rational((*coef)[3])) * basis[1];
  y.m = ctx.m;
  x.m = ctx.m;
  return {x, y};
}

}  // namespace

std::optional<GroupElement> cusp_transport(const FieldContext& ctx, const KElem& s, const KElem& t) {
  auto [lam, mu] = as_fraction(ctx, s);
  auto [lam2, mu2] = as_fraction(ctx, t);
  Ideal i1 = ideal_from_generators(ctx, {lam, mu});
  Ideal i2 = ideal_from_generators(ctx, {lam2, mu2});
  if (!(ideal_class(ctx, i1) == ideal_class(ctx, i2))) return std::nullopt;
  auto g = principal_generator(ctx, ideal_product(ctx, i2, ideal_conj(ctx, i1)));
  if (!g) throw ConsistencyError("cusp_transport: expected a principal ideal");
  KElem kappa = *g / KElem::rational(Rational(i1.norm()));
  lam2 = lam2 / kappa;
  mu2 = mu2 / kappa;
  auto [x1, y1] = complete_column(ctx, lam, mu, i1);
  auto [x2, y2] = complete_column(ctx, lam2, mu2, i1);
  // gamma = A2 * A1^{-1} with A = (lambda x; mu y).
  GroupElement a1inv{y1, -x1, -mu, lam};
  GroupElement a2{lam2, x2, mu2, y2};
  GroupElement gamma = a2 * a1inv;
  gamma = GroupElement::make(gamma.a, gamma.b, gamma.c, gamma.d);
  auto image = cusp_apply(gamma, s);
  if (!image || *image != t) throw ConsistencyError("cusp_transport: verification failed");
  return gamma;
}

std::vector<GroupElement> cusp_pair_transports(const FieldContext& ctx, const KElem& s1, const KElem& t1,
                                               const KElem& s2, const KElem& t2) {
  std::vector<GroupElement> out;
  if (s1 == t1 || s2 == t2) throw std::invalid_argument("cusp_pair_transports: cusps must be distinct");
  auto c = cusp_transport(ctx, s1, s2);
  if (!c) return out;
  auto [lam, mu] = as_fraction(ctx, s1);
  Ideal ideal = ideal_from_generators(ctx, {lam, mu});
  auto [x, y] = complete_column(ctx, lam, mu, ideal);
  // A = (lambda x; mu y) sends infinity to s1; its stabilizer is A (1 beta; 0 1) A^-1, beta in I^-2.
  GroupElement a{lam, x, mu, y};
  GroupElement ainv = a.inverse();
  auto chart = [&](const GroupElement& g, const KElem& p, const KElem& q) {
    KElem num = g.a * p + g.b * q, den = g.c * p + g.d * q;
    if (den.is_zero()) throw ConsistencyError("cusp_pair_transports: unexpected infinity");
    return num / den;
  };
  GroupElement cinv = c->inverse();
  // C^-1 t2 as a projective pair
  KElem p2 = cinv.a * t2 + cinv.b, q2 = cinv.c * t2 + cinv.d;
  KElem u1 = chart(ainv, t1, ctx.one());
  KElem u2 = chart(ainv, p2, q2);
  KElem beta = u2 - u1;
  FractionalIdeal inv2 = ideal_inverse(ctx, ideal_product(ctx, ideal, ideal));
  KElem scaled = beta * KElem::rational(Rational(inv2.denominator));
  scaled.m = ctx.m;
  if (!scaled.is_integral() || !inv2.numerator.contains(scaled)) return out;
  GroupElement shift{ctx.one(), beta, ctx.zero(), ctx.one()};
  GroupElement g = *c * a * shift * ainv;
  g = GroupElement::make(g.a, g.b, g.c, g.d);
  if (cusp_apply(g, s1) != std::optional<KElem>(s2) || cusp_apply(g, t1) != std::optional<KElem>(t2))
    throw ConsistencyError("cusp_pair_transports: verification failed");
  out.push_back(g);
  out.push_back(-g);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace bianchi
