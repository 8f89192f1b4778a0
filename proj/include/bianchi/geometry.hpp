#pragma once

// Upper half-space geometry with exact data: hemispheres S_{mu,lambda}, the
// below-relations between them, agreement lines and the rectangle D0.

#include "bianchi/arith.hpp"

#include <string>

namespace bianchi {

/// (z, zeta) in upper half-space, the height kept squared.
struct UhsPoint {
  KElem z;
  Rational h2;
  friend bool operator==(const UhsPoint& p, const UhsPoint& q) { return p.z == q.z && p.h2 == q.h2; }
};

struct Hemisphere {
  KElem mu;
  KElem lambda;
  KElem center;  // lambda/mu
  Rational r2;   // 1/|mu|^2

  /// Normalizes the sign so that mu is (a + b*omega) with a > 0, or a == 0 and b > 0.
  /// Throws if (mu, lambda) is not unimodular or mu == 0.
  static Hemisphere make(const FieldContext& ctx, KElem mu, KElem lambda);
  /// Skips the unimodularity test; the caller guarantees it.
  static Hemisphere make_unchecked(KElem mu, KElem lambda);

  Integer mu_norm() const { return norm(mu).get_num(); }
  /// Same hemisphere moved by z -> z + t.
  Hemisphere translated(const KElem& t) const;

  friend bool operator==(const Hemisphere& a, const Hemisphere& b) { return a.mu == b.mu && a.lambda == b.lambda; }
};

/// |z - lambda/mu|^2 - 1/|mu|^2.
Rational defect(const Hemisphere& s, const KElem& z);

/// s1 strictly below s2 at z.
bool strictly_below(const Hemisphere& s1, const Hemisphere& s2, const KElem& z);
/// (z, zeta) strictly below s.
bool strictly_below(const UhsPoint& p, const Hemisphere& s);

/// s1 everywhere below s2 (true for s1 == s2).
bool everywhere_below(const Hemisphere& s1, const Hemisphere& s2);

/// Open overlap of the two vertical projections: |c1 - c2| < r1 + r2.
bool touching(const Hemisphere& s1, const Hemisphere& s2);

/// Real line Tr(conj(a) * z) = c, normalized so that the first nonzero chart
/// coefficient of a is 1.
struct AgreementLine {
  KElem a;
  Rational c;
  /// Value of Tr(conj(a) * z) - c.
  Rational eval(const KElem& z) const { return trace(conj(a) * z) - c; }
  friend bool operator==(const AgreementLine& x, const AgreementLine& y) { return x.a == y.a && x.c == y.c; }
};

AgreementLine agreement_line(const Hemisphere& s1, const Hemisphere& s2);

/// Intersection of two lines, absent when they are parallel.
std::optional<KElem> intersect(const AgreementLine& l1, const AgreementLine& l2);

UhsPoint lift_on_hemisphere(const KElem& z, const Hemisphere& s);

/// Closed rectangle D0: [0,1]^2 in (r, w) for m = 1, 2 mod 4, and
/// [-1/2, 1/2] x [0, 1/2] in the chart x + y*sqrt(-m) for m = 3 mod 4.
bool in_rectangle(const KElem& z, const FieldContext& ctx);

/// Half-open version of D0 that contains exactly one point of every O-orbit.
bool in_half_open_rectangle(const KElem& z, const FieldContext& ctx);

struct Reduction {
  KElem point;        // representative in the half-open rectangle
  KElem translation;  // element of O with point = z - translation
};

Reduction reduce_to_rectangle(const KElem& z, const FieldContext& ctx);

/// Area of D0 in chart units (dx dy with z = x + y*sqrt(-m)).
Rational rectangle_area(const FieldContext& ctx);

}  // namespace bianchi
