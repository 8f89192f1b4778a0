#include "bianchi/arith.hpp"

#include <algorithm>
#include <numeric>

namespace bianchi {

namespace {

long common_m(long a, long b) {
  if (a == 0) return b;
  if (b == 0) return a;
  if (a != b) throw std::invalid_argument("KElem: mixing elements of different fields");
  return a;
}

void require_field(const KElem& x) {
  if (x.m == 0 && sgn(x.w) != 0) throw std::invalid_argument("KElem: omega part without a field");
}

Integer as_int(const Rational& q) {
  if (!is_integer(q)) throw std::invalid_argument("expected an integral coordinate");
  return q.get_num();
}

// Extended gcd: g = s*x + t*y with g >= 0.
void ext_gcd(const Integer& x, const Integer& y, Integer& g, Integer& s, Integer& t) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
}

// A 2D integer vector that remembers which combination of the inputs produced it.
struct TrackedVec {
  Integer x, y;
  std::vector<Integer> coef;
};

TrackedVec combine(const Integer& s, const TrackedVec& u, const Integer& t, const TrackedVec& v) {
  TrackedVec out;
  out.x = s * u.x + t * v.x;
  out.y = s * u.y + t * v.y;
  out.coef.resize(u.coef.size());
  for (size_t i = 0; i < u.coef.size(); ++i) out.coef[i] = s * u.coef[i] + t * v.coef[i];
  return out;
}

// Row basis {u = (bx, c), a = (a, 0)} of the lattice spanned by vecs.
struct LatticeBasis {
  std::optional<TrackedVec> u;  // y-component = gcd of all y
  std::optional<TrackedVec> a;  // generator of the y == 0 sublattice
};

void absorb_x(LatticeBasis& lb, const TrackedVec& v) {
  if (v.x == 0) return;
  if (!lb.a) {
    lb.a = v;
    return;
  }
  Integer g, s, t;
  ext_gcd(lb.a->x, v.x, g, s, t);
  lb.a = combine(s, *lb.a, t, v);
}

LatticeBasis lattice_basis(const std::vector<TrackedVec>& vecs) {
  LatticeBasis lb;
  for (const auto& v : vecs) {
    if (v.y == 0) {
      absorb_x(lb, v);
      continue;
    }
    if (!lb.u) {
      lb.u = v;
      continue;
    }
    Integer g, s, t;
    ext_gcd(lb.u->y, v.y, g, s, t);
    Integer uy_g = lb.u->y / g;
    Integer vy_g = v.y / g;
    TrackedVec k = combine(vy_g, *lb.u, -uy_g, v);
    lb.u = combine(s, *lb.u, t, v);
    absorb_x(lb, k);
  }
  if (lb.u && lb.u->y < 0) lb.u = combine(-1, *lb.u, 0, *lb.u);
  if (lb.a && lb.a->x < 0) lb.a = combine(-1, *lb.a, 0, *lb.a);
  return lb;
}

TrackedVec tracked(const KElem& e, size_t idx, size_t n) {
  TrackedVec v{as_int(e.r), as_int(e.w), std::vector<Integer>(n, 0)};
  if (idx < n) v.coef[idx] = 1;
  return v;
}

Ideal ideal_from_z_span(long m, const std::vector<KElem>& elems) {
  std::vector<TrackedVec> vecs;
  vecs.reserve(elems.size());
  for (const auto& e : elems) vecs.push_back(tracked(e, 0, 0));
  LatticeBasis lb = lattice_basis(vecs);
  if (!lb.u || !lb.a) throw std::invalid_argument("ideal: generators do not span a full lattice");
  Ideal out;
  out.m = m;
  out.a = lb.a->x;
  out.c = lb.u->y;
  Integer b;
  mpz_fdiv_r(b.get_mpz_t(), lb.u->x.get_mpz_t(), out.a.get_mpz_t());
  out.b = b;
  return out;
}

}  // namespace

// ---------------------------------------------------------------- KElem

Rational KElem::chart_x() const { return three_mod_4() ? Rational(r - w / 2) : r; }
Rational KElem::chart_y() const { return three_mod_4() ? Rational(w / 2) : w; }

KElem KElem::from_chart(const Rational& x, const Rational& y, long m) {
  if (m % 4 == 3) return KElem(x + y, 2 * y, m);
  return KElem(x, y, m);
}

KElem& KElem::operator+=(const KElem& o) {
  m = common_m(m, o.m);
  r += o.r;
  w += o.w;
  return *this;
}

KElem& KElem::operator-=(const KElem& o) {
  m = common_m(m, o.m);
  r -= o.r;
  w -= o.w;
  return *this;
}

KElem& KElem::operator*=(const KElem& o) {
  m = common_m(m, o.m);
  require_field(*this);
  require_field(o);
  Rational ww = w * o.w;
  Rational nr, nw;
  if (m % 4 == 3) {
    // omega^2 = -omega - (m+1)/4
    nr = r * o.r - frac(m + 1, 4) * ww;
    nw = r * o.w + o.r * w - ww;
  } else {
    nr = r * o.r - m * ww;
    nw = r * o.w + o.r * w;
  }
  r = std::move(nr);
  w = std::move(nw);
  return *this;
}

KElem& KElem::operator/=(const KElem& o) {
  Rational n = norm(o);
  if (sgn(n) == 0) throw std::domain_error("KElem: division by zero");
  *this *= conj(o);
  r /= n;
  w /= n;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const KElem& z) {
  return os << "(" << to_string(z.r) << " + " << to_string(z.w) << "w)";
}

Rational norm(const KElem& c) {
  require_field(c);
  if (c.m % 4 == 3) return c.r * c.r - c.r * c.w + frac(c.m + 1, 4) * c.w * c.w;
  return c.r * c.r + c.m * c.w * c.w;
}

KElem conj(const KElem& c) {
  if (c.m % 4 == 3) return KElem(c.r - c.w, -c.w, c.m);
  return KElem(c.r, -c.w, c.m);
}

Rational trace(const KElem& c) {
  if (c.m % 4 == 3) return 2 * c.r - c.w;
  return 2 * c.r;
}

KElem FieldContext::sqrt_minus_m() const {
  if (three_mod_4) return KElem(1, 2, m);  // 2*omega + 1
  return omega();
}

// ---------------------------------------------------------------- forms

QuadraticForm reduce_form(QuadraticForm f) {
  if (f.a <= 0) throw std::invalid_argument("reduce_form: form is not positive definite");
  const Integer disc = f.discriminant();
  while (true) {
    // b into (-a, a]
    Integer two_a = 2 * f.a;
    Integer k;
    Integer numer = f.a - f.b;
    mpz_fdiv_q(k.get_mpz_t(), numer.get_mpz_t(), two_a.get_mpz_t());
    f.b += two_a * k;
    f.c = (f.b * f.b - disc) / (4 * f.a);
    if (f.a > f.c) {
      std::swap(f.a, f.c);
      f.b = -f.b;
      continue;
    }
    break;
  }
  if (f.a == f.c && f.b < 0) f.b = -f.b;
  return f;
}

std::vector<QuadraticForm> reduced_forms(const Integer& discriminant) {
  if (discriminant >= 0) throw std::invalid_argument("reduced_forms: discriminant must be negative");
  std::vector<QuadraticForm> out;
  Integer absd = -discriminant;
  Integer amax = floor_sqrt(frac(absd, 3));
  for (Integer a = 1; a <= amax; ++a) {
    for (Integer b = -a + 1; b <= a; ++b) {
      Integer num = b * b - discriminant;
      if (num % (4 * a) != 0) continue;
      Integer c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      Integer g = gcd(gcd(a, b), c);
      if (g != 1) continue;
      out.push_back({a, b, c});
    }
  }
  return out;
}

// ---------------------------------------------------------------- field

bool is_squarefree(long m) {
  if (m <= 0) return false;
  for (long p = 2; p * p <= m; ++p)
    if (m % (p * p) == 0) return false;
  return true;
}

FieldContext field_context(long m) {
  if (m == 1 || m == 3) throw std::invalid_argument("field_context: m = 1 and m = 3 are excluded");
  if (m < 2 || !is_squarefree(m)) throw std::invalid_argument("field_context: m must be a squarefree integer >= 2");
  FieldContext ctx;
  ctx.m = m;
  ctx.three_mod_4 = (m % 4 == 3);
  ctx.discriminant = ctx.three_mod_4 ? Integer(-m) : Integer(-4 * m);
  ctx.class_group = reduced_forms(ctx.discriminant);
  std::sort(ctx.class_group.begin(), ctx.class_group.end(), [](const QuadraticForm& x, const QuadraticForm& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.c < y.c;
  });
  ctx.class_number = static_cast<int>(ctx.class_group.size());
  return ctx;
}

// ---------------------------------------------------------------- ideals

bool Ideal::contains(const KElem& x) const {
  if (!x.is_integral()) return false;
  Integer xr = x.r.get_num(), xw = x.w.get_num();
  if (xw % c != 0) return false;
  Integer q = xw / c;
  return (xr - q * b) % a == 0;
}

Ideal ideal_from_generators(const FieldContext& ctx, const std::vector<KElem>& gens) {
  std::vector<KElem> span;
  for (const auto& g : gens) {
    if (!g.is_integral()) throw std::invalid_argument("ideal_from_generators: non-integral generator");
    if (g.is_zero()) continue;
    KElem gg = g;
    gg.m = ctx.m;
    span.push_back(gg);
    span.push_back(gg * ctx.omega());
  }
  if (span.empty()) throw std::invalid_argument("ideal_from_generators: zero ideal");
  return ideal_from_z_span(ctx.m, span);
}

Ideal ideal_product(const FieldContext& ctx, const Ideal& x, const Ideal& y) {
  std::vector<KElem> span;
  for (const auto& p : {x.first(), x.second()})
    for (const auto& q : {y.first(), y.second()}) span.push_back(p * q);
  return ideal_from_z_span(ctx.m, span);
}

Ideal ideal_conj(const FieldContext& ctx, const Ideal& x) {
  return ideal_from_z_span(ctx.m, {conj(x.first()), conj(x.second())});
}

std::vector<KElem> FractionalIdeal::basis() const {
  KElem d = KElem::rational(Rational(denominator));
  return {numerator.first() / d, numerator.second() / d};
}

FractionalIdeal ideal_inverse(const FieldContext& ctx, const Ideal& x) {
  return {ideal_conj(ctx, x), x.norm()};
}

FractionalIdeal fractional_product(const FieldContext& ctx, const FractionalIdeal& x, const FractionalIdeal& y) {
  return {ideal_product(ctx, x.numerator, y.numerator), x.denominator * y.denominator};
}

std::optional<std::vector<Integer>> integer_combination(const std::vector<KElem>& gens, const KElem& target) {
  std::vector<TrackedVec> vecs;
  for (size_t i = 0; i < gens.size(); ++i) vecs.push_back(tracked(gens[i], i, gens.size()));
  if (!target.is_integral()) return std::nullopt;
  LatticeBasis lb = lattice_basis(vecs);
  Integer tx = target.r.get_num(), ty = target.w.get_num();
  std::vector<Integer> coef(gens.size(), 0);
  if (ty != 0) {
    if (!lb.u || ty % lb.u->y != 0) return std::nullopt;
    Integer q = ty / lb.u->y;
    tx -= q * lb.u->x;
    for (size_t i = 0; i < coef.size(); ++i) coef[i] += q * lb.u->coef[i];
  }
  if (tx != 0) {
    if (!lb.a || tx % lb.a->x != 0) return std::nullopt;
    Integer p = tx / lb.a->x;
    for (size_t i = 0; i < coef.size(); ++i) coef[i] += p * lb.a->coef[i];
  }
  return coef;
}

bool is_unimodular(const FieldContext& ctx, const KElem& mu, const KElem& lambda) {
  if (mu.is_zero() && lambda.is_zero()) throw std::invalid_argument("is_unimodular: (0, 0)");
  return ideal_from_generators(ctx, {mu, lambda}).is_unit();
}

IdealClass ideal_class(const FieldContext& ctx, const Ideal& ideal) {
  KElem a1 = ideal.first(), a2 = ideal.second();
  Rational n(ideal.norm());
  Rational fa = norm(a1) / n, fb = trace(a1 * conj(a2)) / n, fc = norm(a2) / n;
  if (!is_integer(fa) || !is_integer(fb) || !is_integer(fc))
    throw ConsistencyError("ideal_class: non-integral form");
  QuadraticForm f = reduce_form({fa.get_num(), fb.get_num(), fc.get_num()});
  if (f.discriminant() != ctx.discriminant) throw ConsistencyError("ideal_class: wrong discriminant");
  for (size_t i = 0; i < ctx.class_group.size(); ++i)
    if (ctx.class_group[i] == f) return {f, static_cast<int>(i)};
  throw ConsistencyError("ideal_class: reduced form not in class group");
}

IdealClass ideal_class(const FieldContext& ctx, const KElem& lambda, const KElem& mu) {
  if (lambda.is_zero() && mu.is_zero()) throw std::invalid_argument("ideal_class: (0, 0)");
  return ideal_class(ctx, ideal_from_generators(ctx, {lambda, mu}));
}

std::pair<KElem, KElem> as_fraction(const FieldContext& ctx, const KElem& z) {
  Integer den;
  mpz_lcm(den.get_mpz_t(), z.r.get_den_mpz_t(), z.w.get_den_mpz_t());
  KElem lam(z.r * den, z.w * den, ctx.m);
  return {lam, ctx.from_int(den.get_si())};
}

std::vector<KElem> elements_with_norm_at_most(const FieldContext& ctx, const Rational& bound, bool include_zero) {
  std::vector<KElem> out;
  if (sgn(bound) < 0) return out;
  const long m = ctx.m;
  if (!ctx.three_mod_4) {
    Integer wmax = floor_sqrt(bound / m);
    for (Integer w = -wmax; w <= wmax; ++w) {
      Rational rem = bound - m * Rational(w * w);
      if (sgn(rem) < 0) continue;
      Integer rmax = floor_sqrt(rem);
      for (Integer r = -rmax; r <= rmax; ++r) {
        if (!include_zero && r == 0 && w == 0) continue;
        out.push_back(KElem(Rational(r), Rational(w), m));
      }
    }
  } else {
    Integer wmax = floor_sqrt(4 * bound / m);
    for (Integer w = -wmax; w <= wmax; ++w) {
      Rational rem = bound - frac(m * (w * w), 4);
      if (sgn(rem) < 0) continue;
      Integer s = floor_sqrt(4 * rem);
      Integer lo, hi;
      Integer t1 = w - s, t2 = w + s;
      mpz_cdiv_q_ui(lo.get_mpz_t(), t1.get_mpz_t(), 2);
      mpz_fdiv_q_ui(hi.get_mpz_t(), t2.get_mpz_t(), 2);
      for (Integer r = lo; r <= hi; ++r) {
        if (!include_zero && r == 0 && w == 0) continue;
        KElem e(Rational(r), Rational(w), m);
        if (norm(e) <= bound) out.push_back(e);
      }
    }
  }
  return out;
}

std::vector<KElem> elements_with_norm(const FieldContext& ctx, const Integer& n) {
  std::vector<KElem> out;
  for (auto& e : elements_with_norm_at_most(ctx, Rational(n)))
    if (norm(e) == Rational(n)) out.push_back(std::move(e));
  return out;
}

std::optional<KElem> principal_generator(const FieldContext& ctx, const Ideal& ideal) {
  for (const auto& e : elements_with_norm(ctx, ideal.norm()))
    if (ideal.contains(e)) return e;
  return std::nullopt;
}

}  // namespace bianchi
