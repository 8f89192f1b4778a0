#pragma once

// Cell structure on the boundary of the polyhedron, its Gamma-orbits and the
// equivariant complex used by the spectral sequence.

#include "bianchi/group.hpp"
#include "bianchi/swan.hpp"

#include <optional>
#include <vector>

namespace bianchi {

/// Global vertex vertices[id] + t.
struct VertexRef {
  std::size_t id;
  KElem t;
};

/// Oriented traversal sign * (edges[edge] + t).
struct EdgeUse {
  std::size_t edge;
  KElem t;
  int sign;
};

struct PlanarEdge {
  VertexRef tail;  // tail.t == 0
  VertexRef head;
};

struct PlanarFace {
  std::size_t carrier;  // index into the hemisphere list
  std::vector<VertexRef> polygon;
  std::vector<EdgeUse> edges;  // edges[k] runs from polygon[k] to polygon[k+1]
};

/// Cells modulo translations by O.
struct PlanarComplex {
  FieldContext ctx;
  std::vector<Hemisphere> carriers;
  std::vector<UhsPoint> vertices;  // representatives in the half-open rectangle
  std::vector<PlanarEdge> edges;
  std::vector<PlanarFace> faces;

  bool is_cusp(std::size_t id) const { return sgn(vertices[id].h2) == 0; }
  UhsPoint point(const VertexRef& v) const { return {vertices[v.id].z + v.t, vertices[v.id].h2}; }
};

PlanarComplex planar_cell_structure(const Polyhedron& poly);

/// Lifted vertex lists of every face, in global coordinates.
std::vector<std::vector<UhsPoint>> lift_structure(const PlanarComplex& planar);

/// sign * (g . representative of orbit).
struct Face {
  int sign;
  std::size_t orbit;
  GroupElement g;
};

struct OrbitCell {
  int dim = 0;
  bool cusp = false;
  /// Finite cells: every element of the stabilizer (with -I). Cusps: two unipotent generators.
  std::vector<GroupElement> stabilizer;
  /// +1 or -1 per stabilizer element: whether it preserves the cell's orientation.
  std::vector<int> orientation;
  std::vector<Face> boundary;
  /// Vertices: location of the representative.
  std::optional<UhsPoint> point;
  /// Location of the representative's vertices (edges: tail, head; 2-cells: cyclic), when known.
  std::vector<UhsPoint> corners;
};

/// Quotient cell structure with stabilizers and transport elements.
struct GammaComplex {
  FieldContext ctx;
  std::vector<OrbitCell> cells[3];

  std::size_t cusp_orbits() const;
  /// Sum over finite orbit cells of (-1)^dim / |stabilizer|.
  Rational orbifold_euler_characteristic() const;
  /// Whether g1 . rep and g2 . rep are the same cell of the orbit.
  bool same_cell(int dim, std::size_t orbit, const GroupElement& g1, const GroupElement& g2) const;
  /// Orientation character of k on the representative; k must stabilize it.
  int orientation_of(int dim, std::size_t orbit, const GroupElement& k) const;
  /// Every stabilizer element fixes its cell pointwise.
  bool is_rigid() const;
};

/// Where every planar cell sits in its Gamma-orbit.
struct OrbitAssignment {
  std::vector<std::size_t> vertex_orbit, edge_orbit, face_orbit;
  /// planar cell == transport . representative (as sets)
  std::vector<GroupElement> vertex_transport, edge_transport, face_transport;
  /// Orientation of transport . representative relative to the planar cell.
  std::vector<int> edge_sign, face_sign;
};

struct FloegeComplex {
  PlanarComplex planar;
  OrbitAssignment assignment;
  GammaComplex quotient;
};

FloegeComplex orbit_classification(const PlanarComplex& planar);

/// Stabilizer of a planar vertex, edge or face (all elements, with -I).
std::vector<GroupElement> stabilizer(const PlanarComplex& planar, int dim, std::size_t index);

/// Splits flipped edges at a new vertex and cones rotated 2-cells from a new
/// central vertex until every stabilizer fixes its cell pointwise.
GammaComplex subdivide_until_rigid(const GammaComplex& complex, int max_rounds = 4);

/// Planar structure, orbit classification and subdivision in one step.
GammaComplex rigid_quotient(const Polyhedron& poly);

/// Every stabilizer element of every vertex of a cell with known corners fixes
/// those corners (true for post-subdivision complexes built from geometry).
bool corners_fixed(const GammaComplex& complex);

/// Sum over boundary-of-boundary terms vanishes for every 2-cell orbit.
bool boundary_squared_zero(const GammaComplex& complex);

}  // namespace bianchi
