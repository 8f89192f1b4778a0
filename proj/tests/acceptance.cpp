// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exit status is nonzero if any criterion fails.

#include "bianchi/cohomology.hpp"
#include "bianchi/parallel.hpp"
#include "bianchi/verify.hpp"
#include "lift_oracle.hpp"

#include <chrono>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace bianchi;

namespace {

struct Outcome {
  bool ok = true;
  std::vector<std::string> lines;

  void note(bool good, const std::string& line) {
    ok = ok && good;
    lines.push_back(std::string(good ? "ok   " : "BAD  ") + line);
  }
};

const std::vector<long> class_one = {2, 7, 11, 19, 43, 67, 163};
const std::vector<long> class_two = {5, 6, 10, 13, 15};

struct Field {
  FieldContext ctx;
  Polyhedron poly;
  std::optional<GammaComplex> complex;
};

std::map<long, Field>& fields() {
  static std::map<long, Field> cache;
  return cache;
}

Field& field(long m) {
  auto it = fields().find(m);
  if (it != fields().end()) return it->second;
  FieldContext ctx = field_context(m);
  PolyhedronOptions po;
  po.workers = default_workers();
  Polyhedron poly = compute_polyhedron(ctx, po);
  return fields().emplace(m, Field{ctx, std::move(poly), std::nullopt}).first->second;
}

const GammaComplex& complex_of(long m) {
  Field& f = field(m);
  if (!f.complex) f.complex = rigid_quotient(f.poly);
  return *f.complex;
}

std::string str(const Integer& x) { return x.get_str(); }

Outcome bound_class_one() {
  Outcome o;
  for (long m : class_one) {
    Field& f = field(m);
    const Integer d = -f.ctx.discriminant, mu2 = f.poly.max_mu_norm();
    // |mu| <= (|D| + 1)/2  <=>  4 |mu|^2 <= (|D| + 1)^2
    o.note(4 * mu2 <= (d + 1) * (d + 1),
           "m=" + std::to_string(m) + " max|mu|^2=" + str(mu2) + " bound ((|D|+1)/2)^2=" +
               Rational(Rational((d + 1) * (d + 1)) / 4).get_str());
  }
  return o;
}

Outcome bound_class_two() {
  Outcome o;
  for (long m : class_two) {
    Field& f = field(m);
    const Integer d = -f.ctx.discriminant, mu2 = f.poly.max_mu_norm();
    // 3|D| when m = 3 mod 4, else (5 + 61/116)|D| = (641/116)|D|
    Rational bound = f.ctx.three_mod_4 ? Rational(9 * d * d) : Rational(641 * 641 * d * d, 116 * 116);
    bound.canonicalize();
    o.note(Rational(mu2) <= bound, "m=" + std::to_string(m) + " max|mu|^2=" + str(mu2) + " bound " + bound.get_str());
  }
  return o;
}

Outcome certificate() {
  Outcome o;
  std::vector<long> all = class_one;
  all.insert(all.end(), class_two.begin(), class_two.end());
  for (long m : all) {
    Field& f = field(m);
    CheckResult c = check_termination_certificate(f.poly);
    o.note(c.ok, "m=" + std::to_string(m) + " certificate: " + c.detail);
    CheckResult r = check_random_points_covered(f.poly, 1000, 20240601 + m);
    o.note(r.ok, "m=" + std::to_string(m) + " " + r.detail);
  }
  return o;
}

Outcome census() {
  Outcome o;
  int fields_checked = 0, bad = 0;
  for (long m = 2; m <= 100; ++m) {
    bool sf = true;
    for (long p = 2; p * p <= m; ++p) sf = sf && m % (p * p) != 0;
    if (!sf || m == 3) continue;
    FieldContext ctx = field_context(m);
    std::set<int> classes;
    for (const auto& s : singular_points(ctx)) classes.insert(s.cls.index);
    const int64_t h = lift_oracle::class_number(lift_oracle::fundamental_discriminant(m));
    ++fields_checked;
    if (static_cast<int64_t>(classes.size()) != h - 1) {
      ++bad;
      o.note(false, "m=" + std::to_string(m) + " classes " + std::to_string(classes.size()) + ", h-1 = " +
                        std::to_string(h - 1));
    }
  }
  o.note(bad == 0, std::to_string(fields_checked) + " squarefree m <= 100: singular classes = h - 1 (reduced-forms h)");
  FieldContext k5 = field_context(5);
  auto s5 = singular_points(k5);
  const KElem want = (k5.one() + k5.sqrt_minus_m()) / k5.from_int(2);
  o.note(s5.size() == 1 && s5[0].value == want, "m=5 singular set mod O is {(1+sqrt(-5))/2}");
  return o;
}

Outcome eisenstein() {
  Outcome o;
  int bad = 0, count = 0;
  for (long m : {2L, 7L, 11L, 19L, 5L, 6L, 10L, 13L, 15L}) {
    FieldContext ctx = field_context(m);
    for (int n = 0; n <= 12; ++n, ++count)
      if (eisenstein_dimension(ctx, n) != ctx.class_number - (n == 0 ? 1 : 0)) ++bad;
  }
  o.note(bad == 0, "eisenstein_dimension = h - delta(n,0) on " + std::to_string(count) + " (m, n)");
  bad = 0;
  count = 0;
  for (long m : {2L, 7L, 5L, 15L}) {
    FieldContext ctx = field_context(m);
    KField f(ctx);
    for (int n = 0; n <= 6; ++n, ++count) {
      ModuleEn mod{n};
      Matrix<KField> inv = unipotent_invariants(f, ctx, {ctx.one(), ctx.omega()}, n);
      bool good = inv.cols == 1;
      for (std::size_t i = 0; good && i < mod.dim(); ++i) good = inv.at(i, 0).is_zero() == (i != mod.index(n, 0));
      if (!good) ++bad;
    }
  }
  o.note(bad == 0, "unipotent invariants one-dimensional, spanned by x^n (x) yb^n, on " + std::to_string(count) + " (m, n)");
  bad = 0;
  count = 0;
  for (long m : class_two) {
    FieldContext ctx = field_context(m);
    KField f(ctx);
    for (const auto& s : singular_points(ctx)) {
      auto g = cusp_stabilizer_generators(ctx, s.value);
      for (int n = 0; n <= 6; ++n, ++count) {
        TorusCohomology t = torus_cohomology(f, g[0], g[1], n);
        if (t.h0 != 1 || t.h1 != 2 || t.h2 != 1) ++bad;
      }
    }
  }
  o.note(bad == 0, "cusp torus cohomology (1, 2, 1) on " + std::to_string(count) + " (cusp, n)");
  return o;
}

Outcome cuspidal() {
  Outcome o;
  struct Want {
    long m;
    int n;
    long excess;
  };
  std::vector<Want> rows;
  for (long m : {2L, 19L})
    for (int n = 0; n <= 10; ++n) rows.push_back({m, n, 0});
  rows.push_back({7, 10, 2});
  rows.push_back({11, 12, 2});
  for (const auto& w : rows) {
    const GammaComplex& x = complex_of(w.m);
    const long lift = lift_oracle::lift_dimension(w.m, w.n);
    SweepResult s = modp_sweep(x.ctx, x, w.n, 200, lift);
    const DimensionReport& r = s.final;
    std::ostringstream os;
    os << "m=" << w.m << " n=" << w.n << " cusp=" << r.cusp_lower;
    if (r.cusp_upper != r.cusp_lower) os << ".." << r.cusp_upper;
    os << " lift=" << lift << " excess=" << r.cusp_lower - lift << " want " << w.excess << " (" << r.status << ")";
    o.note(r.cusp_lower == r.cusp_upper && r.cusp_lower - lift == w.excess, os.str());
  }
  return o;
}

Outcome linear_algebra() {
  Outcome o;
  for (long m : {2L, 7L, 11L, 19L, 5L, 6L, 10L, 13L, 15L}) {
    const GammaComplex& x = complex_of(m);
    for (int n = 0; n <= 2; ++n) {
      for (const CheckResult& c : {check_cochain_squared(x, n), check_projectors(x, n),
                                   check_multiplicativity(x.ctx, n, 500, 7 + n),
                                   check_universal_coefficients(x.ctx, x, n, 200)})
        o.note(c.ok, "m=" + std::to_string(m) + " " + c.name + ": " + c.detail);
    }
  }
  return o;
}

Outcome trivial_coefficients() {
  Outcome o;
  for (auto& [m, f] : fields()) {
    CheckResult c = check_trivial_coefficients(complex_of(m));
    o.note(c.ok, "m=" + std::to_string(m) + " " + c.detail);
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "class-number-1 bound |mu| <= (|D|+1)/2", bound_class_one},
      {2, "class-number-2 bound on |mu|", bound_class_two},
      {3, "termination certificate and 1000 random points", certificate},
      {4, "singular-cusp census", census},
      {5, "Eisenstein dimension, unipotent invariants, torus cohomology", eisenstein},
      {6, "cuspidal dimension against the lift oracle", cuspidal},
      {7, "linear-algebra invariants and mod-p >= K", linear_algebra},
      {8, "n = 0 against the quotient complex", trivial_coefficients},
  };
  bool all = true;
  std::vector<std::string> summary;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.note(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && o.ok;
    std::ostringstream line;
    line << "criterion " << c.id << ": " << (o.ok ? "PASS" : "FAIL") << "  " << c.name;
    std::cout << line.str() << "  [" << std::fixed << std::setprecision(1) << secs << " s]\n";
    for (const auto& l : o.lines) std::cout << "    " << l << "\n";
    std::cout.flush();
    summary.push_back(line.str());
  }
  std::cout << "\nsummary\n";
  for (const auto& s : summary) std::cout << s << "\n";
  return all ? 0 : 1;
}
