#include "bianchi/cellcomplex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace bianchi {

namespace {

GroupElement translation(const FieldContext& ctx, const KElem& t) { return {ctx.one(), t, ctx.zero(), ctx.one()}; }

std::optional<UhsPoint> apply_point(const GroupElement& g, const UhsPoint& p) {
  if (sgn(p.h2) == 0) {
    auto z = cusp_apply(g, p.z);
    if (!z) return std::nullopt;
    return UhsPoint{*z, 0};
  }
  return poincare_apply(g, p);
}

using EdgeKey = std::tuple<std::size_t, std::size_t, Rational, Rational>;

bool key_less(const EdgeKey& a, const EdgeKey& b) { return a < b; }

bool contains(const std::vector<GroupElement>& group, const GroupElement& g) {
  return std::find(group.begin(), group.end(), g) != group.end();
}

bool same_point_sets(std::vector<UhsPoint> a, std::vector<UhsPoint> b) {
  if (a.size() != b.size()) return false;
  for (const auto& p : a)
    if (std::find(b.begin(), b.end(), p) == b.end()) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------- planar structure

PlanarComplex planar_cell_structure(const Polyhedron& poly) {
  const FieldContext& ctx = poly.ctx;
  PlanarComplex out;
  out.ctx = ctx;
  out.carriers = poly.list.entries;
  std::map<std::pair<Rational, Rational>, std::size_t> vertex_ids;
  std::map<EdgeKey, std::size_t> edge_ids;

  auto vertex_ref = [&](const KElem& z, const Hemisphere& carrier) {
    Reduction red = reduce_to_rectangle(z, ctx);
    Rational h2 = -defect(carrier, z);
    if (sgn(h2) < 0) throw ConsistencyError("planar_cell_structure: vertex outside its carrier");
    auto key = std::make_pair(red.point.r, red.point.w);
    auto it = vertex_ids.find(key);
    if (it == vertex_ids.end()) {
      it = vertex_ids.emplace(key, out.vertices.size()).first;
      out.vertices.push_back({red.point, h2});
    } else if (out.vertices[it->second].h2 != h2) {
      throw ConsistencyError("planar_cell_structure: vertex height differs between faces");
    }
    return VertexRef{it->second, red.translation};
  };

  for (const auto& cell : poly.cells) {
    const Hemisphere& carrier = out.carriers[cell.entry];
    PlanarFace face;
    face.carrier = cell.entry;
    for (const auto& z : cell.polygon) face.polygon.push_back(vertex_ref(z, carrier));
    const std::size_t n = face.polygon.size();
    if (n < 3) throw ConsistencyError("planar_cell_structure: degenerate polygon");
    // convexity: counterclockwise turns only, straight angles allowed
    for (std::size_t k = 0; k < n; ++k) {
      const KElem& a = cell.polygon[k];
      const KElem& b = cell.polygon[(k + 1) % n];
      const KElem& c = cell.polygon[(k + 2) % n];
      Rational cr = (b.chart_x() - a.chart_x()) * (c.chart_y() - a.chart_y()) -
                    (b.chart_y() - a.chart_y()) * (c.chart_x() - a.chart_x());
      if (sgn(cr) < 0) throw ConsistencyError("planar_cell_structure: polygon is not convex");
    }
    for (std::size_t k = 0; k < n; ++k) {
      const VertexRef& a = face.polygon[k];
      const VertexRef& b = face.polygon[(k + 1) % n];
      KElem dab = b.t - a.t, dba = a.t - b.t;
      EdgeKey k1{a.id, b.id, dab.r, dab.w};
      EdgeKey k2{b.id, a.id, dba.r, dba.w};
      const bool forward = !key_less(k2, k1);
      const EdgeKey& key = forward ? k1 : k2;
      auto it = edge_ids.find(key);
      if (it == edge_ids.end()) {
        it = edge_ids.emplace(key, out.edges.size()).first;
        if (forward)
          out.edges.push_back({{a.id, ctx.zero()}, {b.id, dab}});
        else
          out.edges.push_back({{b.id, ctx.zero()}, {a.id, dba}});
      }
      face.edges.push_back({it->second, forward ? a.t : b.t, forward ? 1 : -1});
    }
    out.faces.push_back(std::move(face));
  }
  return out;
}

std::vector<std::vector<UhsPoint>> lift_structure(const PlanarComplex& planar) {
  std::vector<std::vector<UhsPoint>> out;
  for (const auto& face : planar.faces) {
    const Hemisphere& s = planar.carriers[face.carrier];
    std::vector<UhsPoint> pts;
    for (const auto& v : face.polygon) {
      UhsPoint p = planar.point(v);
      KElem u = s.mu * p.z - s.lambda;
      if (norm(u) + norm(s.mu) * p.h2 != 1) throw ConsistencyError("lift_structure: vertex off its carrier hemisphere");
      pts.push_back(std::move(p));
    }
    out.push_back(std::move(pts));
  }
  return out;
}

// ---------------------------------------------------------------- GammaComplex queries

std::size_t GammaComplex::cusp_orbits() const {
  std::size_t n = 0;
  for (const auto& c : cells[0]) n += c.cusp ? 1 : 0;
  return n;
}

Rational GammaComplex::orbifold_euler_characteristic() const {
  Rational chi = 0;
  for (int d = 0; d < 3; ++d)
    for (const auto& c : cells[d]) {
      if (c.cusp) continue;
      Rational term = frac(1, static_cast<long>(c.stabilizer.size()));
      chi += (d % 2 == 0) ? term : Rational(-term);
    }
  return chi;
}

bool GammaComplex::same_cell(int dim, std::size_t orbit, const GroupElement& g1, const GroupElement& g2) const {
  const OrbitCell& c = cells[dim][orbit];
  if (dim == 0 && c.point) return apply_point(g1, *c.point) == apply_point(g2, *c.point) && apply_point(g1, *c.point);
  if (dim > 0 && !c.corners.empty()) {
    std::vector<UhsPoint> a, b;
    for (const auto& p : c.corners) {
      auto x = apply_point(g1, p), y = apply_point(g2, p);
      if (!x || !y) return false;
      a.push_back(*x);
      b.push_back(*y);
    }
    return same_point_sets(a, b);
  }
  if (c.cusp) throw ConsistencyError("same_cell: cusp without a location");
  return contains(c.stabilizer, g1.inverse() * g2);
}

int GammaComplex::orientation_of(int dim, std::size_t orbit, const GroupElement& k) const {
  const OrbitCell& c = cells[dim][orbit];
  for (std::size_t i = 0; i < c.stabilizer.size(); ++i)
    if (c.stabilizer[i] == k) return c.orientation[i];
  throw ConsistencyError("orientation_of: element does not stabilize the cell");
}

bool GammaComplex::is_rigid() const {
  for (int d = 1; d < 3; ++d)
    for (const auto& c : cells[d]) {
      for (int e : c.orientation)
        if (e != 1) return false;
      if (d == 2)
        for (const auto& g : c.stabilizer)
          if (!g.is_central()) return false;
    }
  return true;
}

bool corners_fixed(const GammaComplex& complex) {
  for (int d = 0; d < 3; ++d)
    for (const auto& c : complex.cells[d]) {
      if (c.cusp) continue;
      std::vector<UhsPoint> pts = c.corners;
      if (d == 0 && c.point) pts.push_back(*c.point);
      for (const auto& g : c.stabilizer)
        for (const auto& p : pts)
          if (apply_point(g, p) != std::optional<UhsPoint>(p)) return false;
    }
  return true;
}

bool boundary_squared_zero(const GammaComplex& complex) {
  for (int top = 1; top < 3; ++top)
    for (const auto& cell : complex.cells[top]) {
      struct Term {
        std::size_t orbit;
        GroupElement g;
        int sign;
      };
      std::vector<Term> terms;
      for (const auto& f : cell.boundary) {
        if (top == 1) {
          terms.push_back({f.orbit, f.g, f.sign});
          continue;
        }
        for (const auto& f2 : complex.cells[1][f.orbit].boundary) terms.push_back({f2.orbit, f.g * f2.g, f.sign * f2.sign});
      }
      if (top == 1) {
        // an edge's boundary is tail and head; only their total matters
        int total = 0;
        for (const auto& t : terms) total += t.sign;
        if (total != 0) return false;
        continue;
      }
      std::vector<bool> used(terms.size(), false);
      for (std::size_t i = 0; i < terms.size(); ++i) {
        if (used[i]) continue;
        int total = 0;
        for (std::size_t j = i; j < terms.size(); ++j) {
          if (used[j] || terms[j].orbit != terms[i].orbit) continue;
          if (complex.same_cell(0, terms[i].orbit, terms[i].g, terms[j].g)) {
            used[j] = true;
            total += terms[j].sign;
          }
        }
        if (total != 0) return false;
      }
    }
  return true;
}

// ---------------------------------------------------------------- orbits

namespace {

class Classifier {
 public:
  explicit Classifier(const PlanarComplex& planar) : p_(planar), ctx_(planar.ctx) {}

  FloegeComplex run() {
    FloegeComplex out;
    out.planar = p_;
    out.quotient.ctx = ctx_;
    q_ = &out.quotient;
    a_ = &out.assignment;
    classify_vertices();
    classify_edges();
    classify_faces();
    return out;
  }

 private:
  const PlanarComplex& p_;
  const FieldContext& ctx_;
  GammaComplex* q_ = nullptr;
  OrbitAssignment* a_ = nullptr;
  std::vector<std::size_t> vertex_rep_, edge_rep_, face_rep_;

  GroupElement transport(const VertexRef& v) const { return translation(ctx_, v.t) * a_->vertex_transport[v.id]; }

  /// All gamma with gamma . src == dst for interior global vertices in one orbit.
  std::vector<GroupElement> candidates(const VertexRef& src, const VertexRef& dst) const {
    std::vector<GroupElement> out;
    const std::size_t o = a_->vertex_orbit[src.id];
    if (a_->vertex_orbit[dst.id] != o) return out;
    GroupElement gs = transport(src), gd = transport(dst);
    GroupElement gs_inv = gs.inverse();
    for (const auto& s : q_->cells[0][o].stabilizer) out.push_back(gd * s * gs_inv);
    return out;
  }

  void classify_vertices() {
    const std::size_t n = p_.vertices.size();
    a_->vertex_orbit.assign(n, 0);
    a_->vertex_transport.assign(n, GroupElement::identity(ctx_));
    for (std::size_t id = 0; id < n; ++id) {
      const UhsPoint& pt = p_.vertices[id];
      const bool cusp = p_.is_cusp(id);
      bool found = false;
      for (std::size_t o = 0; o < vertex_rep_.size() && !found; ++o) {
        const UhsPoint& rep = p_.vertices[vertex_rep_[o]];
        if (cusp != p_.is_cusp(vertex_rep_[o])) continue;
        if (cusp) {
          if (auto g = cusp_transport(ctx_, rep.z, pt.z)) {
            a_->vertex_orbit[id] = o;
            a_->vertex_transport[id] = *g;
            found = true;
          }
        } else {
          auto ms = identification_matrices(ctx_, rep, pt);
          if (!ms.empty()) {
            a_->vertex_orbit[id] = o;
            a_->vertex_transport[id] = ms.front();
            found = true;
          }
        }
      }
      if (found) continue;
      OrbitCell cell;
      cell.dim = 0;
      cell.cusp = cusp;
      cell.point = pt;
      if (cusp) {
        cell.stabilizer = cusp_stabilizer_generators(ctx_, pt.z);
      } else {
        cell.stabilizer = identification_matrices(ctx_, pt, pt);
        if (close_group(ctx_, cell.stabilizer).size() != cell.stabilizer.size())
          throw ConsistencyError("vertex stabilizer is not closed under multiplication");
        cell.orientation.assign(cell.stabilizer.size(), 1);
      }
      a_->vertex_orbit[id] = vertex_rep_.size();
      vertex_rep_.push_back(id);
      q_->cells[0].push_back(std::move(cell));
    }
  }

  std::vector<VertexRef> corners_of_edge(const PlanarEdge& e) const { return {e.tail, e.head}; }

  /// Elements that could carry the cell with vertices `rep` onto the cell with
  /// vertices `target`, found from an interior vertex or, for ideal cells, from
  /// a pair of adjacent cusps.
  std::vector<GroupElement> anchor_candidates(const std::vector<VertexRef>& rep,
                                              const std::vector<VertexRef>& target) const {
    std::set<GroupElement> out;
    auto interior = std::find_if(rep.begin(), rep.end(), [&](const VertexRef& v) { return !p_.is_cusp(v.id); });
    if (interior != rep.end()) {
      for (const auto& y : target)
        if (!p_.is_cusp(y.id))
          for (const auto& g : candidates(*interior, y)) out.insert(g);
      return {out.begin(), out.end()};
    }
    const KElem s1 = p_.point(rep[0]).z, t1 = p_.point(rep[1]).z;
    const std::size_t n = target.size();
    const std::size_t pairs = n == 2 ? 1 : n;
    for (std::size_t j = 0; j < pairs; ++j) {
      const KElem u = p_.point(target[j]).z, v = p_.point(target[(j + 1) % n]).z;
      for (const auto& g : cusp_pair_transports(ctx_, s1, t1, u, v)) out.insert(g);
      for (const auto& g : cusp_pair_transports(ctx_, s1, t1, v, u)) out.insert(g);
    }
    return {out.begin(), out.end()};
  }

  std::optional<std::vector<UhsPoint>> image(const GroupElement& g, const std::vector<VertexRef>& verts) const {
    std::vector<UhsPoint> out;
    for (const auto& v : verts) {
      auto p = apply_point(g, p_.point(v));
      if (!p) return std::nullopt;
      out.push_back(*p);
    }
    return out;
  }

  /// Orientation sign if g maps the edge a onto b, 0 otherwise.
  int edge_map_sign(const GroupElement& g, const PlanarEdge& a, const PlanarEdge& b) const {
    auto img = image(g, corners_of_edge(a));
    if (!img) return 0;
    const UhsPoint bt = p_.point(b.tail), bh = p_.point(b.head);
    if ((*img)[0] == bt && (*img)[1] == bh) return 1;
    if ((*img)[0] == bh && (*img)[1] == bt) return -1;
    return 0;
  }

  void classify_edges() {
    const std::size_t n = p_.edges.size();
    a_->edge_orbit.assign(n, 0);
    a_->edge_transport.assign(n, GroupElement::identity(ctx_));
    a_->edge_sign.assign(n, 1);
    for (std::size_t k = 0; k < n; ++k) {
      const PlanarEdge& e = p_.edges[k];
      bool found = false;
      for (std::size_t o = 0; o < edge_rep_.size() && !found; ++o) {
        const PlanarEdge& rep = p_.edges[edge_rep_[o]];
        for (const auto& g : anchor_candidates(corners_of_edge(rep), corners_of_edge(e))) {
          int s = edge_map_sign(g, rep, e);
          if (s == 0) continue;
          a_->edge_orbit[k] = o;
          a_->edge_transport[k] = g;
          a_->edge_sign[k] = s;
          found = true;
          break;
        }
      }
      if (found) continue;
      OrbitCell cell;
      cell.dim = 1;
      for (const auto& g : anchor_candidates(corners_of_edge(e), corners_of_edge(e))) {
        int s = edge_map_sign(g, e, e);
        if (s == 0) continue;
        cell.stabilizer.push_back(g);
        cell.orientation.push_back(s);
      }
      cell.boundary = {{-1, a_->vertex_orbit[e.tail.id], transport(e.tail)},
                       {1, a_->vertex_orbit[e.head.id], transport(e.head)}};
      cell.corners = {p_.point(e.tail), p_.point(e.head)};
      a_->edge_orbit[k] = edge_rep_.size();
      edge_rep_.push_back(k);
      q_->cells[1].push_back(std::move(cell));
    }
  }

  /// Orientation sign if g maps face a onto face b, 0 otherwise.
  int face_map_sign(const GroupElement& g, const PlanarFace& a, const PlanarFace& b) const {
    const std::size_t n = a.polygon.size();
    if (b.polygon.size() != n) return 0;
    auto img = image(g, a.polygon);
    if (!img) return 0;
    std::vector<UhsPoint> target;
    for (const auto& v : b.polygon) target.push_back(p_.point(v));
    auto start = std::find(target.begin(), target.end(), (*img)[0]);
    if (start == target.end()) return 0;
    const std::size_t ib = static_cast<std::size_t>(start - target.begin());
    bool fwd = true, bwd = true;
    for (std::size_t j = 0; j < n && (fwd || bwd); ++j) {
      if (fwd && !((*img)[j] == target[(ib + j) % n])) fwd = false;
      if (bwd && !((*img)[j] == target[(ib + n - j) % n])) bwd = false;
    }
    if (fwd) return 1;
    if (bwd) return -1;
    return 0;
  }

  void classify_faces() {
    const std::size_t n = p_.faces.size();
    a_->face_orbit.assign(n, 0);
    a_->face_transport.assign(n, GroupElement::identity(ctx_));
    a_->face_sign.assign(n, 1);
    for (std::size_t k = 0; k < n; ++k) {
      const PlanarFace& f = p_.faces[k];
      bool found = false;
      for (std::size_t o = 0; o < face_rep_.size() && !found; ++o) {
        const PlanarFace& rep = p_.faces[face_rep_[o]];
        if (rep.polygon.size() != f.polygon.size()) continue;
        for (const auto& g : anchor_candidates(rep.polygon, f.polygon)) {
          int s = face_map_sign(g, rep, f);
          if (s == 0) continue;
          a_->face_orbit[k] = o;
          a_->face_transport[k] = g;
          a_->face_sign[k] = s;
          found = true;
          break;
        }
      }
      if (found) continue;
      OrbitCell cell;
      cell.dim = 2;
      for (const auto& g : anchor_candidates(f.polygon, f.polygon)) {
        int s = face_map_sign(g, f, f);
        if (s == 0) continue;
        cell.stabilizer.push_back(g);
        cell.orientation.push_back(s);
      }
      for (const auto& use : f.edges) {
        GroupElement g = translation(ctx_, use.t) * a_->edge_transport[use.edge];
        cell.boundary.push_back({use.sign * a_->edge_sign[use.edge], a_->edge_orbit[use.edge], g});
      }
      for (const auto& v : f.polygon) cell.corners.push_back(p_.point(v));
      a_->face_orbit[k] = face_rep_.size();
      face_rep_.push_back(k);
      q_->cells[2].push_back(std::move(cell));
    }
  }
};

void sort_stabilizer(OrbitCell& c) {
  std::vector<std::size_t> idx(c.stabilizer.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return c.stabilizer[x] < c.stabilizer[y]; });
  std::vector<GroupElement> s;
  std::vector<int> o;
  for (auto i : idx) {
    s.push_back(c.stabilizer[i]);
    if (!c.orientation.empty()) o.push_back(c.orientation[i]);
  }
  c.stabilizer = std::move(s);
  c.orientation = std::move(o);
}

}  // namespace

FloegeComplex orbit_classification(const PlanarComplex& planar) {
  FloegeComplex out = Classifier(planar).run();
  for (int d = 1; d < 3; ++d)
    for (auto& c : out.quotient.cells[d]) {
      sort_stabilizer(c);
      std::size_t order = close_group(out.quotient.ctx, c.stabilizer).size();
      if (order != c.stabilizer.size()) throw ConsistencyError("cell stabilizer is not a group");
    }
  for (const auto& c : out.quotient.cells[0])
    if (!c.cusp && 24 % c.stabilizer.size() != 0) throw ConsistencyError("vertex stabilizer order does not divide 24");
  if (out.quotient.cusp_orbits() + 1 != static_cast<std::size_t>(planar.ctx.class_number))
    throw ConsistencyError("number of singular cusp orbits differs from h - 1");
  return out;
}

std::vector<GroupElement> stabilizer(const PlanarComplex& planar, int dim, std::size_t index) {
  const FieldContext& ctx = planar.ctx;
  if (dim == 0) {
    if (planar.is_cusp(index)) return cusp_stabilizer_generators(ctx, planar.vertices[index].z);
    return identification_matrices(ctx, planar.vertices[index], planar.vertices[index]);
  }
  std::vector<VertexRef> verts;
  if (dim == 1) {
    verts = {planar.edges[index].tail, planar.edges[index].head};
  } else {
    verts = planar.faces[index].polygon;
  }
  std::vector<UhsPoint> pts;
  for (const auto& v : verts) pts.push_back(planar.point(v));
  std::vector<GroupElement> cands;
  std::size_t ix = 0;
  while (ix < verts.size() && planar.is_cusp(verts[ix].id)) ++ix;
  if (ix < verts.size()) {
    for (const auto& y : pts)
      if (sgn(y.h2) != 0)
        for (const auto& g : identification_matrices(ctx, pts[ix], y)) cands.push_back(g);
  } else {
    const std::size_t n = pts.size();
    for (std::size_t j = 0; j < (n == 2 ? 1 : n); ++j)
      for (int flip = 0; flip < 2; ++flip) {
        const KElem& u = pts[(j + flip) % n].z;
        const KElem& v = pts[(j + 1 - flip) % n].z;
        for (const auto& g : cusp_pair_transports(ctx, pts[0].z, pts[1].z, u, v)) cands.push_back(g);
      }
  }
  std::set<GroupElement> out;
  for (const auto& g : cands) {
    std::vector<UhsPoint> img;
    bool ok = true;
    for (const auto& p : pts) {
      auto q = apply_point(g, p);
      if (!q) {
        ok = false;
        break;
      }
      img.push_back(*q);
    }
    if (ok && same_point_sets(img, pts)) out.insert(g);
  }
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------- subdivision

namespace {

struct Position {
  std::size_t orbit;
  GroupElement g;
};

void split_flipped_edges(GammaComplex& x) {
  const FieldContext& ctx = x.ctx;
  std::map<std::size_t, GroupElement> flips;
  const std::size_t edge_count = x.cells[1].size();
  for (std::size_t e = 0; e < edge_count; ++e) {
    OrbitCell& cell = x.cells[1][e];
    std::size_t flip = cell.stabilizer.size();
    for (std::size_t i = 0; i < cell.stabilizer.size(); ++i)
      if (cell.orientation[i] == -1) {
        flip = i;
        break;
      }
    if (flip == cell.stabilizer.size()) continue;
    flips.emplace(e, cell.stabilizer[flip]);
    OrbitCell mid;
    mid.dim = 0;
    mid.stabilizer = cell.stabilizer;
    mid.orientation.assign(mid.stabilizer.size(), 1);
    const std::size_t mid_orbit = x.cells[0].size();
    x.cells[0].push_back(std::move(mid));
    OrbitCell half;
    half.dim = 1;
    for (std::size_t i = 0; i < cell.stabilizer.size(); ++i)
      if (cell.orientation[i] == 1) {
        half.stabilizer.push_back(cell.stabilizer[i]);
        half.orientation.push_back(1);
      }
    const Face* tail = nullptr;
    for (const auto& f : cell.boundary)
      if (f.sign == -1) tail = &f;
    if (!tail) throw ConsistencyError("split_flipped_edges: edge without a tail");
    half.boundary = {*tail, {1, mid_orbit, GroupElement::identity(ctx)}};
    x.cells[1][e] = std::move(half);
  }
  if (flips.empty()) return;
  for (auto& cell : x.cells[2]) {
    std::vector<Face> nb;
    for (const auto& f : cell.boundary) {
      auto it = flips.find(f.orbit);
      if (it == flips.end()) {
        nb.push_back(f);
        continue;
      }
      const GroupElement gf = f.g * it->second;
      if (f.sign == 1) {
        nb.push_back({1, f.orbit, f.g});
        nb.push_back({-1, f.orbit, gf});
      } else {
        nb.push_back({1, f.orbit, gf});
        nb.push_back({-1, f.orbit, f.g});
      }
    }
    cell.boundary = std::move(nb);
  }
}

void cone_rotated_faces(GammaComplex& x) {
  const FieldContext& ctx = x.ctx;
  const std::size_t face_count = x.cells[2].size();
  for (std::size_t t = 0; t < face_count; ++t) {
    const OrbitCell tau = x.cells[2][t];
    bool rotated = false;
    for (const auto& g : tau.stabilizer) rotated = rotated || !g.is_central();
    if (!rotated) continue;
    const auto& occ = tau.boundary;
    const std::size_t k = occ.size();
    // start vertex of each traversal
    std::vector<Position> pos;
    for (const auto& f : occ) {
      const auto& eb = x.cells[1][f.orbit].boundary;
      const Face* end = nullptr;
      for (const auto& b : eb)
        if (b.sign == -f.sign) end = &b;
      if (!end) throw ConsistencyError("cone: edge boundary malformed");
      pos.push_back({end->orbit, f.g * end->g});
    }
    const std::size_t G = tau.stabilizer.size();
    std::vector<std::vector<std::size_t>> occ_perm(G, std::vector<std::size_t>(k)), pos_perm(G, std::vector<std::size_t>(k));
    for (std::size_t gi = 0; gi < G; ++gi) {
      const GroupElement& g = tau.stabilizer[gi];
      const int eps = tau.orientation[gi];
      for (std::size_t i = 0; i < k; ++i) {
        std::size_t hit = k;
        for (std::size_t j = 0; j < k && hit == k; ++j) {
          if (occ[j].orbit != occ[i].orbit) continue;
          if (!x.same_cell(1, occ[i].orbit, g * occ[i].g, occ[j].g)) continue;
          int e_eps = x.orientation_of(1, occ[i].orbit, occ[j].g.inverse() * g * occ[i].g);
          if (occ[j].sign != eps * occ[i].sign * e_eps) throw ConsistencyError("cone: orientation transport mismatch");
          hit = j;
        }
        if (hit == k) throw ConsistencyError("cone: stabilizer does not permute the boundary");
        occ_perm[gi][i] = hit;
      }
      for (std::size_t i = 0; i < k; ++i) {
        std::size_t expect = eps == 1 ? (occ_perm[gi][i] + 1) % k : (occ_perm[gi][i] + k - 1) % k;
        if (occ_perm[gi][(i + 1) % k] != expect) throw ConsistencyError("cone: boundary order not preserved");
        pos_perm[gi][i] = eps == 1 ? occ_perm[gi][i] : (occ_perm[gi][i] + 1) % k;
      }
    }
    const std::size_t centre = x.cells[0].size();
    {
      OrbitCell c;
      c.dim = 0;
      c.stabilizer = tau.stabilizer;
      c.orientation.assign(c.stabilizer.size(), 1);
      x.cells[0].push_back(std::move(c));
    }
    const GroupElement id = GroupElement::identity(ctx);
    // spokes
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> spoke_orbit(k, unset);
    std::vector<GroupElement> spoke_elem(k, id);
    for (std::size_t r = 0; r < k; ++r) {
      if (spoke_orbit[r] != unset) continue;
      OrbitCell s;
      s.dim = 1;
      for (std::size_t gi = 0; gi < G; ++gi)
        if (pos_perm[gi][r] == r) {
          s.stabilizer.push_back(tau.stabilizer[gi]);
          s.orientation.push_back(1);
        }
      s.boundary = {{-1, centre, id}, {1, pos[r].orbit, pos[r].g}};
      const std::size_t orbit = x.cells[1].size();
      x.cells[1].push_back(std::move(s));
      for (std::size_t gi = 0; gi < G; ++gi) {
        std::size_t i = pos_perm[gi][r];
        if (spoke_orbit[i] == unset) {
          spoke_orbit[i] = orbit;
          spoke_elem[i] = tau.stabilizer[gi];
        }
      }
    }
    // triangles
    std::vector<bool> covered(k, false);
    bool first = true;
    for (std::size_t i = 0; i < k; ++i) {
      if (covered[i]) continue;
      OrbitCell tri;
      tri.dim = 2;
      for (std::size_t gi = 0; gi < G; ++gi) {
        covered[occ_perm[gi][i]] = true;
        if (occ_perm[gi][i] == i) {
          if (!tau.stabilizer[gi].is_central()) throw ConsistencyError("cone: triangle with nontrivial stabilizer");
          tri.stabilizer.push_back(tau.stabilizer[gi]);
          tri.orientation.push_back(1);
        }
      }
      const std::size_t nx = (i + 1) % k;
      tri.boundary = {{1, spoke_orbit[i], spoke_elem[i]}, occ[i], {-1, spoke_orbit[nx], spoke_elem[nx]}};
      if (first) {
        x.cells[2][t] = std::move(tri);
        first = false;
      } else {
        x.cells[2].push_back(std::move(tri));
      }
    }
  }
}

}  // namespace

GammaComplex subdivide_until_rigid(const GammaComplex& complex, int max_rounds) {
  GammaComplex x = complex;
  for (int round = 0; round < max_rounds; ++round) {
    if (x.is_rigid()) return x;
    split_flipped_edges(x);
    cone_rotated_faces(x);
  }
  if (!x.is_rigid()) throw ConsistencyError("subdivide_until_rigid: round limit reached");
  return x;
}

}  // namespace bianchi

namespace bianchi {

GammaComplex rigid_quotient(const Polyhedron& poly) {
  PlanarComplex planar = planar_cell_structure(poly);
  lift_structure(planar);
  FloegeComplex floege = orbit_classification(planar);
  GammaComplex rigid = subdivide_until_rigid(floege.quotient);
  if (!rigid.is_rigid()) throw ConsistencyError("rigid_quotient: subdivision did not produce a rigid complex");
  if (!boundary_squared_zero(rigid)) throw ConsistencyError("rigid_quotient: boundary of boundary is not zero");
  return rigid;
}

}  // namespace bianchi
