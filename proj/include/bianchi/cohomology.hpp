#pragma once

// Equivariant spectral sequence on the rigid Floege complex: the q = 0 row
// E_1^{p,0} = sum over orbit cells of M^{Gamma_sigma}, its differentials, and
// the dimension of H^2(Gamma, E_{n,n}) with its Eisenstein and cuspidal parts.

#include "bianchi/cellcomplex.hpp"
#include "bianchi/coefficients.hpp"

#include <map>
#include <optional>
#include <string>

namespace bianchi {

template <class F>
struct EquivariantComplex {
  int n = 0;
  std::size_t module_dim = 0;
  /// Invariant bases (ambient x dim) per orbit cell; cusps: fixed space of the unipotent generators.
  std::vector<Matrix<F>> invariants[3];
  /// Torus cohomology per vertex orbit (only set for cusps).
  std::vector<std::optional<TorusCohomology>> cusp;
  /// Column/row offsets of each orbit cell's block.
  std::vector<std::size_t> vertex_offset, edge_offset, face_offset;
  /// Edges (ambient) <- vertices (invariant coordinates).
  Matrix<F> d0;
  /// Faces (ambient) <- edges (ambient), blocks sum of sign * action(g); no projection.
  Matrix<F> d1_ambient;
  /// Faces (ambient) <- edges (invariant coordinates).
  Matrix<F> d1;
  std::size_t e1_20 = 0;
};

/// Assembles the complex; throws ConsistencyError when d1 o d0 != 0 or the
/// complex is not rigid.
template <class F>
EquivariantComplex<F> build_complex(const F& f, const GammaComplex& x, int n);

/// Dimensions read off one field.
struct FieldDimensions {
  std::string field;  // "K", "F_p", "F_p^2"
  uint64_t prime = 0;
  std::size_t e1_20 = 0, rank_d1 = 0, e2_20 = 0;
  std::vector<TorusCohomology> cusps;
  bool d_squared_zero = false;
  /// How the K-rational value was certified (empty for finite fields).
  std::string certificate;
};

template <class F>
FieldDimensions field_dimensions(const F& f, const GammaComplex& x, int n);

/// Exact dimensions over K: ranks from large inert primes, certified by
/// reconstructing the left kernel of d1 over K and checking it exactly.
FieldDimensions exact_dimensions(const GammaComplex& x, int n, std::size_t max_primes = 12);

struct DimensionReport {
  long m = 0;
  int n = 0;
  int class_number = 1;
  FieldDimensions dims;
  std::size_t singular_orbits = 0;
  /// dim H^2; lower == upper when the class number is 1 or the value is certified.
  long h2_lower = 0, h2_upper = 0;
  long eisenstein = 0;
  long cusp_lower = 0, cusp_upper = 0;
  /// Upper bound for dim H^2 if d2^{0,1} has rank at least one per singular cusp orbit.
  long h2_conjectural_upper = 0;
  std::optional<long> lift_lower_bound;
  /// "exact", "interval" or "certified".
  std::string status;
};

/// h_K - delta(n, 0).
long eisenstein_dimension(const FieldContext& ctx, int n);

/// Report for one field, with the interval for class number > 1.
DimensionReport h2_dimension(const FieldContext& ctx, int n, const FieldDimensions& dims,
                             std::optional<long> lift_lower_bound = std::nullopt);

/// (lower, upper) cuspidal dimension; throws when negative.
std::pair<long, long> cuspidal_dimension(const DimensionReport& report);

struct SweepResult {
  std::vector<DimensionReport> modp;
  std::optional<DimensionReport> exact;
  /// The report that answers the question: certified from a prime, or the exact one.
  DimensionReport final;
  bool early_exit = false;
  /// Some good prime reproduced the K-rational dimension (only known when exact is set).
  bool equality_attained = false;
};

/// Runs the good primes up to prime_cap ascending. With a lift lower bound, stops
/// at the first prime whose dimension meets it; otherwise (or if none does)
/// computes over K, and checks every mod-p dimension against it. stop_early = false
/// runs all primes even when a bound is met.
SweepResult modp_sweep(const FieldContext& ctx, const GammaComplex& x, int n, uint64_t prime_cap,
                       std::optional<long> lift_lower_bound = std::nullopt, bool stop_early = true);

/// Integer incidence matrix of the quotient (rows: 2-cell orbits, columns: edge
/// orbits), and H^2 of the quotient complex with rational coefficients.
std::vector<std::vector<long>> quotient_incidence(const GammaComplex& x);
std::size_t quotient_h2(const GammaComplex& x);

}  // namespace bianchi
