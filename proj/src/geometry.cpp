#include "bianchi/geometry.hpp"

namespace bianchi {

namespace {

bool positive_sign(const KElem& mu) { return sgn(mu.r) > 0 || (sgn(mu.r) == 0 && sgn(mu.w) > 0); }

}  // namespace

Hemisphere Hemisphere::make_unchecked(KElem mu, KElem lambda) {
  if (mu.is_zero()) throw std::invalid_argument("hemisphere: mu == 0");
  if (!positive_sign(mu)) {
    mu = -mu;
    lambda = -lambda;
  }
  Hemisphere s;
  s.center = lambda / mu;
  s.r2 = 1 / norm(mu);
  s.mu = std::move(mu);
  s.lambda = std::move(lambda);
  return s;
}

Hemisphere Hemisphere::make(const FieldContext& ctx, KElem mu, KElem lambda) {
  if (!mu.is_integral() || !lambda.is_integral()) throw std::invalid_argument("hemisphere: non-integral pair");
  if (!is_unimodular(ctx, mu, lambda)) throw std::invalid_argument("hemisphere: pair is not unimodular");
  return make_unchecked(std::move(mu), std::move(lambda));
}

Hemisphere Hemisphere::translated(const KElem& t) const {
  Hemisphere s = *this;
  s.lambda += mu * t;
  s.center += t;
  return s;
}

Rational defect(const Hemisphere& s, const KElem& z) { return norm(z - s.center) - s.r2; }

bool strictly_below(const Hemisphere& s1, const Hemisphere& s2, const KElem& z) {
  return defect(s2, z) < defect(s1, z);
}

bool strictly_below(const UhsPoint& p, const Hemisphere& s) { return p.h2 < -defect(s, p.z); }

bool everywhere_below(const Hemisphere& s1, const Hemisphere& s2) {
  // |c1 - c2| <= r2 - r1, squared with sign guards.
  if (s2.r2 < s1.r2) return false;
  Rational d2 = norm(s1.center - s2.center);
  Rational a = s1.r2 + s2.r2 - d2;
  if (sgn(a) < 0) return false;
  return a * a >= 4 * s1.r2 * s2.r2;
}

bool touching(const Hemisphere& s1, const Hemisphere& s2) {
  Rational d2 = norm(s1.center - s2.center);
  Rational b = d2 - s1.r2 - s2.r2;
  if (sgn(b) < 0) return true;
  return b * b < 4 * s1.r2 * s2.r2;
}

AgreementLine agreement_line(const Hemisphere& s1, const Hemisphere& s2) {
  KElem a = s2.center - s1.center;
  Rational c = norm(s2.center) - norm(s1.center) + s1.r2 - s2.r2;
  if (a.is_zero()) {
    if (sgn(c) == 0) throw std::invalid_argument("agreement_line: identical hemispheres");
    throw std::invalid_argument("agreement_line: concentric hemispheres never agree");
  }
  Rational lead = sgn(a.chart_x()) != 0 ? a.chart_x() : a.chart_y();
  if (sgn(lead) < 0) lead = -lead;
  a.r /= lead;
  a.w /= lead;
  c /= lead;
  if (sgn(a.chart_x()) < 0 || (sgn(a.chart_x()) == 0 && sgn(a.chart_y()) < 0)) {
    a = -a;
    c = -c;
  }
  return {a, c};
}

std::optional<KElem> intersect(const AgreementLine& l1, const AgreementLine& l2) {
  // In the chart the line reads ax*x + m*ay*y = c/2.
  const long m = l1.a.m != 0 ? l1.a.m : l2.a.m;
  Rational a11 = l1.a.chart_x(), a12 = m * l1.a.chart_y(), b1 = l1.c / 2;
  Rational a21 = l2.a.chart_x(), a22 = m * l2.a.chart_y(), b2 = l2.c / 2;
  Rational det = a11 * a22 - a12 * a21;
  if (sgn(det) == 0) return std::nullopt;
  Rational x = (b1 * a22 - a12 * b2) / det;
  Rational y = (a11 * b2 - b1 * a21) / det;
  return KElem::from_chart(x, y, m);
}

UhsPoint lift_on_hemisphere(const KElem& z, const Hemisphere& s) {
  Rational d = defect(s, z);
  if (sgn(d) > 0) throw std::invalid_argument("lift_on_hemisphere: point outside the projection");
  return {z, -d};
}

bool in_rectangle(const KElem& z, const FieldContext& ctx) {
  if (!ctx.three_mod_4) return sgn(z.r) >= 0 && z.r <= 1 && sgn(z.w) >= 0 && z.w <= 1;
  Rational x = z.chart_x(), y = z.chart_y();
  Rational half(1, 2);
  return x >= -half && x <= half && sgn(y) >= 0 && y <= half;
}

bool in_half_open_rectangle(const KElem& z, const FieldContext& ctx) {
  if (!ctx.three_mod_4) return sgn(z.r) >= 0 && z.r < 1 && sgn(z.w) >= 0 && z.w < 1;
  Rational x = z.chart_x(), y = z.chart_y();
  Rational half(1, 2);
  return x >= -half && x < half && sgn(y) >= 0 && y < half;
}

Reduction reduce_to_rectangle(const KElem& z, const FieldContext& ctx) {
  KElem zz = z;
  zz.m = ctx.m;
  if (!ctx.three_mod_4) {
    KElem t(Rational(floor_of(zz.r)), Rational(floor_of(zz.w)), ctx.m);
    return {zz - t, t};
  }
  // Chart: omega shifts (x, y) by (-1/2, 1/2); 1 shifts x by 1.
  Integer k = floor_of(2 * zz.chart_y());
  KElem t1(0, Rational(k), ctx.m);
  KElem p = zz - t1;
  Integer j = floor_of(p.chart_x() + Rational(1, 2));
  KElem t(Rational(j), Rational(k), ctx.m);
  return {zz - t, t};
}

Rational rectangle_area(const FieldContext& ctx) { return ctx.three_mod_4 ? Rational(1, 2) : Rational(1); }

}  // namespace bianchi
