#pragma once

// SL2(O) elements, their action on upper half-space and on cusps, and the
// search for matrices carrying one point to another.

#include "bianchi/geometry.hpp"

#include <vector>

namespace bianchi {

struct GroupElement {
  KElem a, b, c, d;

  static GroupElement identity(const FieldContext& ctx);
  static GroupElement make(const KElem& a, const KElem& b, const KElem& c, const KElem& d);

  KElem det() const { return a * d - b * c; }
  GroupElement inverse() const { return {d, -b, -c, a}; }
  GroupElement operator-() const { return {-a, -b, -c, -d}; }
  /// +I or -I.
  bool is_central() const;
  bool is_identity() const;

  friend GroupElement operator*(const GroupElement& x, const GroupElement& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const GroupElement& x, const GroupElement& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  friend bool operator!=(const GroupElement& x, const GroupElement& y) { return !(x == y); }
  friend bool operator<(const GroupElement& x, const GroupElement& y);
};

std::ostream& operator<<(std::ostream& os, const GroupElement& g);

/// Image of an interior point (h2 > 0), or of a finite cusp (h2 == 0) that is
/// not sent to infinity.
UhsPoint poincare_apply(const GroupElement& g, const UhsPoint& p);

/// Fractional linear action on K; absent when the image is infinity.
std::optional<KElem> cusp_apply(const GroupElement& g, const KElem& z);

/// All gamma in SL2(O) with gamma . p == q, for interior points p, q.
std::vector<GroupElement> identification_matrices(const FieldContext& ctx, const UhsPoint& p, const UhsPoint& q);

/// All elements of the finite group generated by gens (and -I), or throws once
/// more than `cap` elements appear.
std::vector<GroupElement> close_group(const FieldContext& ctx, const std::vector<GroupElement>& gens,
                                      std::size_t cap = 24);

/// Two commuting unipotent generators of the stabilizer of the cusp s modulo -I.
std::vector<GroupElement> cusp_stabilizer_generators(const FieldContext& ctx, const KElem& s);

/// Some gamma with gamma . s == t for cusps in the same ideal class; absent otherwise.
std::optional<GroupElement> cusp_transport(const FieldContext& ctx, const KElem& s, const KElem& t);

/// All gamma with gamma . s1 == s2 and gamma . t1 == t2 (distinct finite cusps);
/// at most the pair +-gamma.
std::vector<GroupElement> cusp_pair_transports(const FieldContext& ctx, const KElem& s1, const KElem& t1,
                                               const KElem& s2, const KElem& t2);

}  // namespace bianchi
