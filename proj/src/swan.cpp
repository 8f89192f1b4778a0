#include "bianchi/swan.hpp"

#include "bianchi/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace bianchi {

namespace {

struct ChartPoint {
  Rational x, y;
};

struct Approx {
  double cx, cy, r;
};

Approx approx(const Hemisphere& s) {
  return {s.center.chart_x().get_d(), s.center.chart_y().get_d(), std::sqrt(s.r2.get_d())};
}

bool positive_sign(const KElem& mu) { return sgn(mu.r) > 0 || (sgn(mu.r) == 0 && sgn(mu.w) > 0); }

/// Translations t = r + w*omega in O whose chart coordinates (tx, ty) lie
/// within `reach` of (dx, dy); f(r, w, tx, ty).
template <class F>
void for_nearby_offsets(const FieldContext& ctx, double dx, double dy, double reach, F&& f) {
  const double sm = std::sqrt(static_cast<double>(ctx.m));
  const double md = static_cast<double>(ctx.m);
  if (!ctx.three_mod_4) {
    long k0 = static_cast<long>(std::floor(dy - reach / sm)) - 1, k1 = static_cast<long>(std::ceil(dy + reach / sm)) + 1;
    long j0 = static_cast<long>(std::floor(dx - reach)) - 1, j1 = static_cast<long>(std::ceil(dx + reach)) + 1;
    for (long k = k0; k <= k1; ++k)
      for (long j = j0; j <= j1; ++j) {
        double ex = dx - j, ey = dy - k;
        if (ex * ex + md * ey * ey <= reach * reach + 1e-9) f(j, k, double(j), double(k));
      }
  } else {
    long k0 = static_cast<long>(std::floor(2 * (dy - reach / sm))) - 1;
    long k1 = static_cast<long>(std::ceil(2 * (dy + reach / sm))) + 1;
    for (long k = k0; k <= k1; ++k) {
      long j0 = static_cast<long>(std::floor(dx + k / 2.0 - reach)) - 1;
      long j1 = static_cast<long>(std::ceil(dx + k / 2.0 + reach)) + 1;
      for (long j = j0; j <= j1; ++j) {
        double ex = dx - (j - k / 2.0), ey = dy - k / 2.0;
        if (ex * ex + md * ey * ey <= reach * reach + 1e-9) f(j, k, j - k / 2.0, k / 2.0);
      }
    }
  }
}

template <class F>
void for_nearby_translations(const FieldContext& ctx, double dx, double dy, double reach, F&& f) {
  for_nearby_offsets(ctx, dx, dy, reach, [&](long r, long w, double, double) { f(KElem(r, w, ctx.m)); });
}

/// Keeps the part of the polygon where 2*(ax*x + m*ay*y) - c <= 0.
std::vector<ChartPoint> clip(const std::vector<ChartPoint>& poly, const Rational& ax, const Rational& ay,
                             const Rational& c, long m) {
  std::vector<ChartPoint> out;
  const size_t n = poly.size();
  if (n == 0) return out;
  std::vector<Rational> s(n);
  bool any_out = false;
  for (size_t i = 0; i < n; ++i) {
    s[i] = 2 * (ax * poly[i].x + m * ay * poly[i].y) - c;
    if (sgn(s[i]) > 0) any_out = true;
  }
  if (!any_out) return poly;
  out.reserve(n + 2);
  for (size_t i = 0; i < n; ++i) {
    size_t j = (i + 1) % n;
    const int si = sgn(s[i]), sj = sgn(s[j]);
    if (si <= 0) out.push_back(poly[i]);
    if ((si < 0 && sj > 0) || (si > 0 && sj < 0)) {
      Rational t = s[i] / (s[i] - s[j]);
      out.push_back({poly[i].x + t * (poly[j].x - poly[i].x), poly[i].y + t * (poly[j].y - poly[i].y)});
    }
  }
  return out;
}

Rational cross(const ChartPoint& o, const ChartPoint& a, const ChartPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool same(const ChartPoint& a, const ChartPoint& b) { return a.x == b.x && a.y == b.y; }

/// Drops repeated points and straight angles.
std::vector<ChartPoint> clean(std::vector<ChartPoint> poly) {
  bool changed = true;
  while (changed && poly.size() >= 2) {
    changed = false;
    std::vector<ChartPoint> out;
    for (size_t i = 0; i < poly.size(); ++i) {
      const auto& prev = out.empty() ? poly.back() : out.back();
      if (same(prev, poly[i])) {
        changed = true;
        continue;
      }
      out.push_back(poly[i]);
    }
    if (out.size() >= 2 && same(out.front(), out.back())) {
      out.pop_back();
      changed = true;
    }
    poly = std::move(out);
    if (poly.size() < 3) break;
    out.clear();
    const size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
      const auto& a = poly[(i + n - 1) % n];
      const auto& b = poly[(i + 1) % n];
      if (sgn(cross(a, poly[i], b)) == 0) {
        changed = true;
        continue;
      }
      out.push_back(poly[i]);
    }
    if (changed) poly = std::move(out);
  }
  return poly;
}

Rational twice_area(const std::vector<ChartPoint>& poly) {
  Rational a = 0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % poly.size()];
    a += p.x * q.y - p.y * q.x;
  }
  return a;
}

struct CellWork {
  std::vector<ChartPoint> polygon;
  std::vector<TranslatedEntry> neighbours;
};

CellWork compute_cell(const std::vector<Hemisphere>& entries, const std::vector<TranslatedEntry>& candidates, size_t i) {
  const Hemisphere& s = entries[i];
  CellWork work;
  for (const auto& nb : candidates)
    if (touching(s, entries[nb.index].translated(nb.translation))) work.neighbours.push_back(nb);
  Rational cx = s.center.chart_x(), cy = s.center.chart_y();
  std::vector<ChartPoint> poly = {{cx - 1, cy - 1}, {cx + 1, cy - 1}, {cx + 1, cy + 1}, {cx - 1, cy + 1}};
  const Rational norm_c = norm(s.center);
  for (const auto& nb : work.neighbours) {
    KElem ct = entries[nb.index].center + nb.translation;
    KElem a = ct - s.center;
    Rational c = norm(ct) - norm_c + s.r2 - entries[nb.index].r2;
    poly = clip(poly, a.chart_x(), a.chart_y(), c, s.center.m);
    if (poly.empty()) break;
  }
  work.polygon = clean(std::move(poly));
  return work;
}

/// Translates of entries whose bisector can meet the cell of entry i, found
/// with a slightly enlarged floating-point cell; absent when even that cell is
/// empty, which implies the exact cell is empty.
std::optional<std::vector<TranslatedEntry>> screen_cell(const FieldContext& ctx, const std::vector<Approx>& ap,
                                                        size_t i) {
  using P = std::pair<double, double>;
  const double md = static_cast<double>(ctx.m);
  std::vector<P> poly = {{ap[i].cx - 1, ap[i].cy - 1}, {ap[i].cx + 1, ap[i].cy - 1}, {ap[i].cx + 1, ap[i].cy + 1},
                         {ap[i].cx - 1, ap[i].cy + 1}};
  const double ni = ap[i].cx * ap[i].cx + md * ap[i].cy * ap[i].cy;
  std::vector<TranslatedEntry> out;
  for (size_t j = 0; j < ap.size(); ++j) {
    const double dx = ap[i].cx - ap[j].cx, dy = ap[i].cy - ap[j].cy;
    bool empty = false;
    for_nearby_offsets(ctx, dx, dy, ap[i].r + ap[j].r + 1e-7, [&](long r, long w, double tx, double ty) {
      if (empty || (j == i && r == 0 && w == 0)) return;
      const double ox = ap[j].cx + tx, oy = ap[j].cy + ty;
      const double ax = ox - ap[i].cx, ay = oy - ap[i].cy;
      const double c = ox * ox + md * oy * oy - ni + ap[i].r * ap[i].r - ap[j].r * ap[j].r;
      const double slack = 1e-7 * (1 + std::abs(c) + std::abs(ax) + md * std::abs(ay));
      const size_t n = poly.size();
      std::vector<double> sv(n);
      bool cuts = false;
      for (size_t k = 0; k < n; ++k) {
        const double v = 2 * (ax * poly[k].first + md * ay * poly[k].second) - c;
        cuts = cuts || v + slack > 0;
        sv[k] = v - slack;
      }
      if (!cuts) return;
      out.push_back({j, KElem(r, w, ctx.m)});
      std::vector<P> next;
      for (size_t k = 0; k < n; ++k) {
        const size_t l = (k + 1) % n;
        if (sv[k] <= 0) next.push_back(poly[k]);
        if ((sv[k] < 0 && sv[l] > 0) || (sv[k] > 0 && sv[l] < 0)) {
          const double u = sv[k] / (sv[k] - sv[l]);
          next.push_back({poly[k].first + u * (poly[l].first - poly[k].first),
                          poly[k].second + u * (poly[l].second - poly[k].second)});
        }
      }
      poly = std::move(next);
      if (poly.empty()) empty = true;
    });
    if (empty) return std::nullopt;
  }
  return out;
}

bool on_open_segment(const ChartPoint& a, const ChartPoint& b, const ChartPoint& p) {
  if (sgn(cross(a, b, p)) != 0) return false;
  Rational t = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
  Rational len = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
  return sgn(t) > 0 && t < len;
}

}  // namespace

bool is_singular_cusp(const FieldContext& ctx, const KElem& z) {
  if (ctx.class_number == 1) return false;
  auto [lam, mu] = as_fraction(ctx, z);
  return !ideal_class(ctx, lam, mu).principal();
}

std::vector<Integer> norm_values_up_to(const FieldContext& ctx, const Rational& bound2) {
  std::set<Integer> values;
  for (const auto& e : elements_with_norm_at_most(ctx, bound2)) values.insert(norm(e).get_num());
  return {values.begin(), values.end()};
}

std::vector<KElem> mu_values(const FieldContext& ctx, const Integer& n2) {
  std::vector<KElem> out;
  for (auto& e : elements_with_norm(ctx, n2))
    if (positive_sign(e)) out.push_back(std::move(e));
  return out;
}

void record_hemispheres(const FieldContext& ctx, const Integer& n2, HemisphereList& list, unsigned workers) {
  // Hemispheres of equal radius are never everywhere below one another, so
  // every mu can be screened against the entries of smaller norm in parallel.
  const std::vector<Hemisphere> snapshot = list.entries;
  std::vector<Approx> ap;
  ap.reserve(snapshot.size());
  for (const auto& s : snapshot) ap.push_back(approx(s));
  const double r_new = 1.0 / std::sqrt(n2.get_d());
  const double md = static_cast<double>(ctx.m);
  const double eps = 1e-9;
  const double x_lo = ctx.three_mod_4 ? -0.5 : 0.0, x_hi = ctx.three_mod_4 ? 0.5 : 1.0;
  const double y_hi = ctx.three_mod_4 ? 0.5 : 1.0;
  auto chart = [&](long r, long w) {
    return ctx.three_mod_4 ? std::make_pair(r - w / 2.0, w / 2.0) : std::make_pair(double(r), double(w));
  };
  const std::vector<KElem> mus = mu_values(ctx, n2);
  std::vector<std::vector<Hemisphere>> found(mus.size());
  parallel_for(mus.size(), workers, [&](size_t mi) {
    const KElem& mu = mus[mi];
    // Bounding box of mu * D0 in (r, w) coordinates of lambda.
    std::vector<KElem> corners;
    if (!ctx.three_mod_4) {
      corners = {ctx.zero(), mu, mu * ctx.omega(), mu * (ctx.one() + ctx.omega())};
    } else {
      for (const auto& [x, y] : std::vector<std::pair<Rational, Rational>>{
               {frac(-1, 2), 0}, {frac(1, 2), 0}, {frac(-1, 2), frac(1, 2)}, {frac(1, 2), frac(1, 2)}})
        corners.push_back(mu * ctx.from_chart(x, y));
    }
    Rational rmin = corners[0].r, rmax = corners[0].r, wmin = corners[0].w, wmax = corners[0].w;
    for (const auto& c : corners) {
      rmin = std::min(rmin, c.r);
      rmax = std::max(rmax, c.r);
      wmin = std::min(wmin, c.w);
      wmax = std::max(wmax, c.w);
    }
    const double mx = mu.chart_x().get_d(), my = mu.chart_y().get_d(), nd = n2.get_d();
    const KElem mu_conj = conj(mu);
    const Rational n2q(n2);
    size_t hint_j = 0;
    KElem hint_t = ctx.zero();
    double tx = 0, ty = 0;
    bool have_hint = false;
    const long r0 = to_i64(floor_of(rmin)), r1 = to_i64(ceil_of(rmax));
    const long w0 = to_i64(floor_of(wmin)), w1 = to_i64(ceil_of(wmax));
    for (long w = w0; w <= w1; ++w) {
      for (long r = r0; r <= r1; ++r) {
        // centre lambda * conj(mu) / N(mu) in floating point first
        auto [lx, ly] = chart(r, w);
        const double cx = (lx * mx + md * ly * my) / nd, cy = (ly * mx - lx * my) / nd;
        if (cx < x_lo - eps || cx >= x_hi + eps || cy < -eps || cy >= y_hi + eps) continue;
        const bool edge = cx < x_lo + eps || cx > x_hi - eps || cy < eps || cy > y_hi - eps;
        std::optional<KElem> lambda_store;
        auto lambda_of = [&]() -> const KElem& {
          if (!lambda_store) lambda_store = KElem(Rational(r), Rational(w), ctx.m);
          return *lambda_store;
        };
        if (edge) {
          const KElem& lambda = lambda_of();
          KElem center = lambda * mu_conj;
          center.r /= n2q;
          center.w /= n2q;
          if (!in_half_open_rectangle(center, ctx)) continue;
        }
        // Clear domination in floating point, exact test only near the threshold.
        std::optional<Hemisphere> cand;
        bool below = false;
        auto test = [&](size_t j, const KElem& t, double ex, double ey) {
          const double reach = ap[j].r - r_new;
          const double dist = std::sqrt(ex * ex + md * ey * ey);
          if (dist <= reach - eps) return true;
          if (dist > reach + eps) return false;
          if (!cand) cand = Hemisphere::make_unchecked(mu, lambda_of());
          return everywhere_below(*cand, snapshot[j].translated(t));
        };
        if (have_hint) {
          below = test(hint_j, hint_t, cx - ap[hint_j].cx - tx, cy - ap[hint_j].cy - ty);
        }
        for (size_t j = 0; j < snapshot.size() && !below; ++j) {
          if (ap[j].r < r_new - 1e-12) continue;
          const double reach = ap[j].r - r_new + 1e-9;
          const double dx = cx - ap[j].cx, dy = cy - ap[j].cy;
          for_nearby_translations(ctx, dx, dy, reach, [&](const KElem& t) {
            if (below) return;
            const double ux = t.chart_x().get_d(), uy = t.chart_y().get_d();
            if (test(j, t, dx - ux, dy - uy)) {
              below = true;
              hint_j = j;
              hint_t = t;
              tx = ux;
              ty = uy;
              have_hint = true;
            }
          });
        }
        if (below) continue;
        if (!is_unimodular(ctx, mu, lambda_of())) continue;
        if (!cand) cand = Hemisphere::make_unchecked(mu, lambda_of());
        found[mi].push_back(*cand);
      }
    }
  });
  for (auto& f : found)
    for (auto& h : f) list.entries.push_back(std::move(h));
  if (n2 > list.norm_cursor) list.norm_cursor = n2;
}

VertexHeightResult minimal_vertex_height(const FieldContext& ctx, const HemisphereList& list, unsigned workers) {
  if (list.entries.empty()) throw std::invalid_argument("minimal_vertex_height: empty hemisphere list");
  VertexHeightResult res;
  res.pruned = list;
  std::vector<CellWork> work;
  while (true) {
    const auto& entries = res.pruned.entries;
    std::vector<Approx> ap;
    for (const auto& s : entries) ap.push_back(approx(s));
    std::vector<std::optional<std::vector<TranslatedEntry>>> screened(entries.size());
    parallel_for(entries.size(), workers, [&](size_t i) { screened[i] = screen_cell(ctx, ap, i); });
    std::vector<Hemisphere> kept;
    for (size_t i = 0; i < entries.size(); ++i)
      if (screened[i]) kept.push_back(entries[i]);
    if (kept.size() != entries.size()) {
      if (kept.empty()) throw ConsistencyError("minimal_vertex_height: every hemisphere was erased");
      res.pruned.entries = std::move(kept);
      continue;
    }
    // Zero-area cells are erased and the rest recomputed.
    work.assign(entries.size(), {});
    parallel_for(entries.size(), workers, [&](size_t i) { work[i] = compute_cell(entries, *screened[i], i); });
    kept.clear();
    for (size_t i = 0; i < entries.size(); ++i)
      if (work[i].polygon.size() >= 3 && sgn(twice_area(work[i].polygon)) != 0) kept.push_back(entries[i]);
    if (kept.size() == entries.size()) break;
    if (kept.empty()) throw ConsistencyError("minimal_vertex_height: every hemisphere was erased");
    res.pruned.entries = std::move(kept);
  }
  const auto& entries = res.pruned.entries;

  // Straight-angle vertices contributed by neighbouring cells.
  std::vector<std::vector<ChartPoint>> polys(entries.size());
  parallel_for(entries.size(), workers, [&](size_t i) {
    const auto& poly = work[i].polygon;
    std::vector<ChartPoint> out;
    for (size_t e = 0; e < poly.size(); ++e) {
      const ChartPoint& a = poly[e];
      const ChartPoint& b = poly[(e + 1) % poly.size()];
      out.push_back(a);
      std::vector<std::pair<Rational, ChartPoint>> extra;
      for (const auto& nb : work[i].neighbours) {
        Rational tx = nb.translation.chart_x(), ty = nb.translation.chart_y();
        for (const auto& q : work[nb.index].polygon) {
          ChartPoint p{q.x + tx, q.y + ty};
          if (!on_open_segment(a, b, p)) continue;
          Rational t = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
          bool dup = false;
          for (const auto& [tt, pp] : extra) dup = dup || same(pp, p);
          if (!dup) extra.push_back({t, p});
        }
      }
      std::sort(extra.begin(), extra.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
      for (auto& [t, p] : extra) out.push_back(std::move(p));
    }
    polys[i] = std::move(out);
  });

  std::map<std::pair<Rational, Rational>, Rational> reduced;
  for (size_t i = 0; i < entries.size(); ++i) {
    PlanarCell cell;
    cell.entry = i;
    cell.neighbours = work[i].neighbours;
    for (const auto& p : polys[i]) {
      KElem z = ctx.from_chart(p.x, p.y);
      Rational h2 = -defect(entries[i], z);
      if (sgn(h2) < 0) {
        res.covered = false;
      } else if (sgn(h2) == 0) {
        if (!is_singular_cusp(ctx, z)) res.covered = false;
      } else if (!res.zeta2 || h2 < *res.zeta2) {
        res.zeta2 = h2;
      }
      KElem rz = reduce_to_rectangle(z, ctx).point;
      reduced.emplace(std::make_pair(rz.r, rz.w), h2);
      cell.polygon.push_back(std::move(z));
    }
    res.cells.push_back(std::move(cell));
  }
  for (const auto& [key, h2] : reduced) res.vertices.push_back({KElem(key.first, key.second, ctx.m), h2});
  return res;
}

Integer Polyhedron::max_mu_norm() const {
  Integer best = 0;
  for (const auto& s : list.entries) best = std::max(best, s.mu_norm());
  return best;
}

Rational expected_bound(const FieldContext& ctx) {
  const Rational m(ctx.m), h(ctx.class_number);
  if (ctx.three_mod_4) return Rational(5, 2) * m * h - 2 * m + Rational(1, 2);
  return 21 * m * h - 19 * m;
}

namespace {

Integer next_norm_after(const FieldContext& ctx, const Integer& n) {
  for (Integer k = n + 1;; ++k)
    if (!elements_with_norm(ctx, k).empty()) return k;
}

}  // namespace

Polyhedron compute_polyhedron(const FieldContext& ctx, const PolyhedronOptions& options) {
  Polyhedron out;
  out.ctx = ctx;
  HemisphereList list;
  list.bound = sgn(options.initial_bound) > 0 ? options.initial_bound : expected_bound(ctx);
  if (list.bound < 1) list.bound = 1;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    for (const auto& n2 : norm_values_up_to(ctx, list.bound))
      if (n2 > list.norm_cursor) record_hemispheres(ctx, n2, list, options.workers);
    Integer next = next_norm_after(ctx, list.norm_cursor);
    VertexHeightResult res = minimal_vertex_height(ctx, list, options.workers);
    out.log.push_back({list.bound, next, res.pruned.entries.size(), res.zeta2, res.covered});
    list.entries = res.pruned.entries;
    if (res.covered && res.zeta2 && *res.zeta2 * next >= 1) {
      out.list = std::move(list);
      out.cells = std::move(res.cells);
      out.vertices = std::move(res.vertices);
      out.next_norm = next;
      out.zeta2 = *res.zeta2;
      out.singular = singular_points(ctx);
      return out;
    }
    if (res.covered && res.zeta2) {
      list.bound = 1 / *res.zeta2;
    } else {
      list.bound = std::max(Rational(2 * list.bound), Rational(next));
    }
  }
  throw ConsistencyError("compute_polyhedron: iteration cap reached without meeting the termination criterion");
}

std::vector<SingularPoint> singular_points(const FieldContext& ctx) {
  std::map<std::pair<Rational, Rational>, SingularPoint> found;
  const long m = ctx.m;
  const long smax = static_cast<long>(std::sqrt(4.0 * m / 3.0)) + 2;
  for (long s = 2; s <= smax; ++s) {
    if (ctx.three_mod_4 && (s % 2 != 0 || s == 2)) continue;
    for (long r = -(s - 1) / 2; 2 * r <= s; ++r) {
      if (2 * r <= -s) continue;
      if (s * s > r * r + m) continue;
      const long q = ctx.three_mod_4 ? s / 2 : s;
      const long div = ctx.three_mod_4 ? 2 * s : s;
      if ((r * r + m) % div != 0) continue;
      for (long p = 0; p < q; ++p) {
        if (std::gcd(p, q) != 1) continue;
        // p(r + sqrt(-m))/s
        KElem z = ctx.sqrt_minus_m() + ctx.from_int(r);
        z = z * ctx.from_int(p) / ctx.from_int(s);
        KElem rz = reduce_to_rectangle(z, ctx).point;
        auto [lam, mu] = as_fraction(ctx, rz);
        IdealClass cls = ideal_class(ctx, lam, mu);
        if (cls.principal()) throw ConsistencyError("singular_points: principal cusp produced");
        found.emplace(std::make_pair(rz.r, rz.w), SingularPoint{rz, cls});
      }
    }
  }
  std::vector<SingularPoint> out;
  for (auto& [k, v] : found) out.push_back(std::move(v));
  return out;
}

}  // namespace bianchi

namespace bianchi {

namespace {

template <class F>
bool any_translate_near(const FieldContext& ctx, const Hemisphere& s, const KElem& z, F&& f) {
  const KElem d = z - s.center;
  const double reach = std::sqrt(s.r2.get_d()) + 1e-6;
  bool hit = false;
  for_nearby_translations(ctx, d.chart_x().get_d(), d.chart_y().get_d(), reach, [&](const KElem& t) {
    if (!hit && f(s.translated(t))) hit = true;
  });
  return hit;
}

}  // namespace

bool termination_certificate(const Polyhedron& poly) {
  for (const auto& v : poly.vertices)
    for (const auto& s : poly.list.entries)
      if (any_translate_near(poly.ctx, s, v.z, [&](const Hemisphere& t) { return strictly_below(v, t); }))
        return false;
  return true;
}

std::optional<Hemisphere> covering_hemisphere(const Polyhedron& poly, const KElem& z) {
  std::optional<Hemisphere> found;
  for (const auto& s : poly.list.entries) {
    any_translate_near(poly.ctx, s, z, [&](const Hemisphere& t) {
      if (sgn(defect(t, z)) < 0) found = t;
      return found.has_value();
    });
    if (found) break;
  }
  return found;
}

}  // namespace bianchi
