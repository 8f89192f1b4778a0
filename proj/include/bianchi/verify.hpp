#pragma once

// Invariant suite behind `verify`: certificates, d o d = 0, projectors,
// multiplicativity of the action and mod-p versus K-rational dimensions.

#include "bianchi/cohomology.hpp"
#include "bianchi/swan.hpp"

#include <random>
#include <string>

namespace bianchi {

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct VerifyOptions {
  int n_min = 0, n_max = 2;
  uint64_t prime_cap = 200;
  std::size_t random_points = 1000;
  std::size_t random_pairs = 500;
  uint64_t seed = 20240601;
  /// Test hook: flips the sign of one boundary face of the quotient complex.
  bool inject_sign_flip = false;
};

/// Random element of SL2(O): a word of the given length in T, S and (1 omega; 0 1).
GroupElement random_element(const FieldContext& ctx, std::mt19937_64& rng, int length);

/// Random point of D0 with both chart coordinates of denominator at most den.
KElem random_rectangle_point(const FieldContext& ctx, std::mt19937_64& rng, long den);

CheckResult check_termination_certificate(const Polyhedron& poly);
CheckResult check_random_points_covered(const Polyhedron& poly, std::size_t count, uint64_t seed);
CheckResult check_boundary_squared(const GammaComplex& x);
CheckResult check_cochain_squared(const GammaComplex& x, int n);
CheckResult check_projectors(const GammaComplex& x, int n);
CheckResult check_multiplicativity(const FieldContext& ctx, int n, std::size_t pairs, uint64_t seed);
/// mod-p >= K-rational for every good prime up to the cap, with equality for some prime.
CheckResult check_universal_coefficients(const FieldContext& ctx, const GammaComplex& x, int n, uint64_t prime_cap);
CheckResult check_trivial_coefficients(const GammaComplex& x);

/// Everything above on one field.
std::vector<CheckResult> run_invariant_suite(const FieldContext& ctx, const VerifyOptions& options);

}  // namespace bianchi
