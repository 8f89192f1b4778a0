#include "bianchi/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bianchi {

Json to_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(static_cast<int64_t>(z.get_si()));
  return Json(z.get_str());
}

Json to_json(const Rational& q) { return Json(to_string(q)); }

Json to_json(const KElem& z) { return Json{{"r", to_string(z.r)}, {"w", to_string(z.w)}}; }

Json to_json(const GroupElement& g) { return Json::array({to_json(g.a), to_json(g.b), to_json(g.c), to_json(g.d)}); }

namespace {

Json point_json(const UhsPoint& p) { return Json{{"z", to_json(p.z)}, {"height2", to_json(p.h2)}}; }

Json hemisphere_json(const Hemisphere& s) {
  return Json{{"mu", to_json(s.mu)}, {"lambda", to_json(s.lambda)}, {"mu_norm", to_json(s.mu_norm())}};
}

std::string fixed12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s(buf);
  return s == "-0" ? "0" : s;
}

}  // namespace

Json polyhedron_json(const Polyhedron& poly, bool certificate) {
  const FieldContext& ctx = poly.ctx;
  Json j;
  j["m"] = ctx.m;
  j["discriminant"] = to_json(ctx.discriminant);
  j["class_number"] = ctx.class_number;
  Json forms = Json::array();
  for (const auto& f : ctx.class_group) forms.push_back(Json::array({to_json(f.a), to_json(f.b), to_json(f.c)}));
  j["reduced_forms"] = forms;
  j["max_mu_norm"] = to_json(poly.max_mu_norm());
  j["next_norm"] = to_json(poly.next_norm);
  j["min_vertex_height2"] = to_json(poly.zeta2);
  j["termination_certificate"] = certificate;
  Json hs = Json::array();
  for (const auto& s : poly.list.entries) hs.push_back(hemisphere_json(s));
  j["hemispheres"] = hs;
  Json vs = Json::array();
  for (const auto& v : poly.vertices) vs.push_back(point_json(v));
  j["vertices"] = vs;
  Json cells = Json::array();
  for (const auto& c : poly.cells) {
    Json poly_j = Json::array();
    for (const auto& z : c.polygon) poly_j.push_back(to_json(z));
    cells.push_back(Json{{"hemisphere", c.entry}, {"polygon", poly_j}});
  }
  j["cells"] = cells;
  Json sing = Json::array();
  for (const auto& s : poly.singular)
    sing.push_back(Json{{"cusp", to_json(s.value)},
                        {"class", Json::array({to_json(s.cls.form.a), to_json(s.cls.form.b), to_json(s.cls.form.c)})}});
  j["singular_points"] = sing;
  Json log = Json::array();
  for (const auto& it : poly.log)
    log.push_back(Json{{"bound", to_json(it.bound)},
                       {"next_norm", to_json(it.next_norm)},
                       {"entries", it.entries},
                       {"min_vertex_height2", it.zeta2 ? to_json(*it.zeta2) : Json()},
                       {"covered", it.covered}});
  j["iterations"] = log;
  return j;
}

Json complex_json(const GammaComplex& x) {
  Json j;
  j["m"] = x.ctx.m;
  j["orbits"] = Json::array({x.cells[0].size(), x.cells[1].size(), x.cells[2].size()});
  j["cusp_orbits"] = x.cusp_orbits();
  j["euler_characteristic"] = to_json(x.orbifold_euler_characteristic());
  const char* names[3] = {"vertices", "edges", "faces"};
  for (int d = 0; d < 3; ++d) {
    Json arr = Json::array();
    for (const auto& c : x.cells[d]) {
      Json cj;
      cj["cusp"] = c.cusp;
      cj["stabilizer_order"] = c.cusp ? Json("infinite") : Json(c.stabilizer.size());
      if (c.cusp) {
        Json gens = Json::array();
        for (const auto& g : c.stabilizer) gens.push_back(to_json(g));
        cj["stabilizer_generators"] = gens;
      }
      if (c.point) cj["point"] = point_json(*c.point);
      Json bd = Json::array();
      for (const auto& f : c.boundary)
        bd.push_back(Json{{"sign", f.sign}, {"orbit", f.orbit}, {"conjugator", to_json(f.g)}});
      cj["boundary"] = bd;
      arr.push_back(cj);
    }
    j[names[d]] = arr;
  }
  Json inc = Json::array();
  for (const auto& row : quotient_incidence(x)) inc.push_back(row);
  j["face_edge_incidence"] = inc;
  return j;
}

Json report_json(const DimensionReport& r) {
  Json j;
  j["m"] = r.m;
  j["n"] = r.n;
  j["class_number"] = r.class_number;
  j["field"] = r.dims.field;
  j["prime"] = r.dims.prime;
  j["e1_20"] = r.dims.e1_20;
  j["rank_d1"] = r.dims.rank_d1;
  j["e2_20"] = r.dims.e2_20;
  Json cusps = Json::array();
  for (const auto& t : r.dims.cusps) cusps.push_back(Json::array({t.h0, t.h1, t.h2}));
  j["cusp_torus_cohomology"] = cusps;
  j["d_squared_zero"] = r.dims.d_squared_zero;
  if (!r.dims.certificate.empty()) j["certificate"] = r.dims.certificate;
  j["singular_orbits"] = r.singular_orbits;
  j["h2"] = Json::array({r.h2_lower, r.h2_upper});
  j["h2_conjectural_upper"] = r.h2_conjectural_upper;
  j["eisenstein"] = r.eisenstein;
  j["cuspidal"] = Json::array({r.cusp_lower, r.cusp_upper});
  j["lift_lower_bound"] = r.lift_lower_bound ? Json(*r.lift_lower_bound) : Json();
  j["status"] = r.status;
  return j;
}

Json sweep_json(const SweepResult& s) {
  Json j;
  j["final"] = report_json(s.final);
  j["exact"] = s.exact ? report_json(*s.exact) : Json();
  Json mp = Json::array();
  for (const auto& r : s.modp)
    mp.push_back(Json{{"field", r.dims.field}, {"prime", r.dims.prime}, {"e2_20", r.dims.e2_20},
                      {"h2", Json::array({r.h2_lower, r.h2_upper})}, {"status", r.status}});
  j["primes"] = mp;
  j["early_exit"] = s.early_exit;
  j["equality_attained"] = s.exact ? Json(s.equality_attained) : Json();
  return j;
}

std::string polyhedron_off(const Polyhedron& poly) {
  const double sm = std::sqrt(static_cast<double>(poly.ctx.m));
  std::map<std::pair<Rational, Rational>, std::size_t> index;
  std::vector<std::string> verts;
  std::vector<std::vector<std::size_t>> faces;
  for (const auto& c : poly.cells) {
    const Hemisphere& s = poly.list.entries[c.entry];
    std::vector<std::size_t> face;
    for (const auto& z : c.polygon) {
      auto key = std::make_pair(z.r, z.w);
      auto it = index.find(key);
      if (it == index.end()) {
        const double h2 = Rational(s.r2 - norm(z - s.center)).get_d();
        const double x = z.chart_x().get_d(), y = z.chart_y().get_d() * sm;
        verts.push_back(fixed12(x) + " " + fixed12(y) + " " + fixed12(std::sqrt(std::max(0.0, h2))));
        it = index.emplace(key, verts.size() - 1).first;
      }
      face.push_back(it->second);
    }
    if (face.size() >= 3) faces.push_back(face);
  }
  std::ostringstream os;
  os << "OFF\n";
  os << "# non-certified floating-point rendering of exact data, 12 significant digits; see polyhedron.json\n";
  os << "# m = " << poly.ctx.m << ", boundary cells over D0 on their carrier hemispheres\n";
  os << verts.size() << " " << faces.size() << " 0\n";
  for (const auto& v : verts) os << v << "\n";
  for (const auto& f : faces) {
    os << f.size();
    for (auto i : f) os << " " << i;
    os << "\n";
  }
  return os.str();
}

LiftTable load_lift_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lift table " + path.string());
  Json j = Json::parse(in);
  LiftTable t;
  for (const auto& e : j.at("lifts")) t[{e.at("m").get<long>(), e.at("n").get<int>()}] = e.at("dim").get<long>();
  return t;
}

Json lift_table_json(const LiftTable& table) {
  Json arr = Json::array();
  for (const auto& [k, v] : table) arr.push_back(Json{{"m", k.first}, {"n", k.second}, {"dim", v}});
  return Json{{"lifts", arr}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string content_hash(const std::string& bytes) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunDirectory::RunDirectory(std::filesystem::path root, Json job) : root_(std::move(root)), job_(std::move(job)) {
  std::filesystem::create_directories(root_);
}

void RunDirectory::write(const std::string& name, const std::string& contents) {
  std::ofstream out(root_ / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + (root_ / name).string());
  out << contents;
  files_.push_back(Json{{"name", name}, {"bytes", contents.size()}, {"fnv1a64", content_hash(contents)}});
}

void RunDirectory::finish(bool ok) {
  Json m;
  m["job"] = job_;
  m["files"] = files_;
  m["ok"] = ok;
  std::ofstream out(root_ / "manifest.json", std::ios::binary);
  out << dump(m);
}

}  // namespace bianchi
