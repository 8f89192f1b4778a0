#pragma once

// Swan's algorithm for the Bianchi fundamental polyhedron.

#include "bianchi/geometry.hpp"

#include <optional>
#include <vector>

namespace bianchi {

struct SingularPoint {
  KElem value;  // representative in the half-open rectangle
  IdealClass cls;
};

struct HemisphereList {
  std::vector<Hemisphere> entries;
  Integer norm_cursor = 0;  // largest squared norm recorded so far
  Rational bound;           // current expected bound E, in squared-norm units
};

/// Distinct values of |mu|^2 for nonzero mu in O, ascending, up to bound2.
std::vector<Integer> norm_values_up_to(const FieldContext& ctx, const Rational& bound2);

/// Nonzero mu with |mu|^2 == n2, one per sign class (a > 0, or a == 0 and b > 0).
std::vector<KElem> mu_values(const FieldContext& ctx, const Integer& n2);

/// Appends the hemispheres of squared radius 1/n2 whose centre lies in the
/// half-open rectangle and which are not everywhere below a recorded one.
void record_hemispheres(const FieldContext& ctx, const Integer& n2, HemisphereList& list, unsigned workers = 1);

/// Translation t of list entry `index`: the hemisphere entries[index] + t.
struct TranslatedEntry {
  std::size_t index;
  KElem translation;
};

/// Region of the plane where entries[entry] is at least as high as every other
/// recorded hemisphere and its O-translates. Counterclockwise in the chart.
struct PlanarCell {
  std::size_t entry;
  std::vector<KElem> polygon;
  std::vector<TranslatedEntry> neighbours;
};

struct VertexHeightResult {
  /// Smallest positive squared vertex height; singular points excluded.
  std::optional<Rational> zeta2;
  /// False if some vertex lies on or outside every dome and is not a singular point.
  bool covered = true;
  HemisphereList pruned;
  std::vector<PlanarCell> cells;
  std::vector<UhsPoint> vertices;  // reduced mod O, deduplicated
};

VertexHeightResult minimal_vertex_height(const FieldContext& ctx, const HemisphereList& list, unsigned workers = 1);

struct IterationRecord {
  Rational bound;
  Integer next_norm;
  std::size_t entries;
  std::optional<Rational> zeta2;
  bool covered;
};

struct PolyhedronOptions {
  unsigned workers = 1;
  int max_iterations = 64;
  /// Overrides the initial expected bound (squared-norm units) when positive.
  Rational initial_bound = 0;
};

struct Polyhedron {
  FieldContext ctx;
  HemisphereList list;
  std::vector<PlanarCell> cells;  // one per list entry, same order
  std::vector<UhsPoint> vertices;
  std::vector<SingularPoint> singular;
  std::vector<IterationRecord> log;
  Integer next_norm;  // first squared norm not recorded
  Rational zeta2;     // minimal proper vertex height squared
  Integer max_mu_norm() const;
};

/// Initial expected bound from the extrapolation formula (in |mu| units).
Rational expected_bound(const FieldContext& ctx);

Polyhedron compute_polyhedron(const FieldContext& ctx, const PolyhedronOptions& options = {});

std::vector<SingularPoint> singular_points(const FieldContext& ctx);

/// Exact check that no vertex lies strictly below any O-translate of a listed hemisphere.
bool termination_certificate(const Polyhedron& poly);

/// Some O-translate of a listed hemisphere with z strictly inside its disk.
std::optional<Hemisphere> covering_hemisphere(const Polyhedron& poly, const KElem& z);

/// True if z is a cusp whose ideal class is not principal.
bool is_singular_cusp(const FieldContext& ctx, const KElem& z);

}  // namespace bianchi
