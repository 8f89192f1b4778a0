// bianchi: polyhedron, cohomology, verify and lift-table driver.

#include "bianchi/cellcomplex.hpp"
#include "bianchi/cohomology.hpp"
#include "bianchi/parallel.hpp"
#include "bianchi/report_io.hpp"
#include "bianchi/swan.hpp"
#include "bianchi/verify.hpp"
#include "lift_oracle.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace bianchi;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::pair<int, int> parse_range(const std::string& s) {
  try {
    auto dots = s.find("..");
    if (dots == std::string::npos) {
      int n = std::stoi(s);
      return {n, n};
    }
    int a = std::stoi(s.substr(0, dots)), b = std::stoi(s.substr(dots + 2));
    if (a < 0 || b < a) throw UsageError("empty weight range " + s);
    return {a, b};
  } catch (const std::logic_error&) {
    throw UsageError("weight range must look like a..b, got " + s);
  }
}

FieldContext checked_field(long m) {
  try {
    return field_context(m);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("m = ") + std::to_string(m) + ": " + e.what());
  }
}

std::filesystem::path run_dir(const std::string& out, const std::string& name) {
  return out.empty() ? std::filesystem::path("runs") / name : std::filesystem::path(out);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_polyhedron(long m, const std::string& out, bool off, bool complex) {
  FieldContext ctx = checked_field(m);
  auto t0 = std::chrono::steady_clock::now();
  PolyhedronOptions po;
  po.workers = default_workers();
  Polyhedron poly = compute_polyhedron(ctx, po);
  const bool cert = termination_certificate(poly);
  Json job{{"command", "polyhedron"}, {"m", m}, {"off", off}, {"complex", complex}};
  RunDirectory dir(run_dir(out, "polyhedron-m" + std::to_string(m)), job);
  dir.write("polyhedron.json", dump(polyhedron_json(poly, cert)));
  if (off) dir.write("polyhedron.off", polyhedron_off(poly));
  if (complex) dir.write("complex.json", dump(complex_json(rigid_quotient(poly))));
  dir.finish(cert);
  std::cout << "m=" << m << " h=" << ctx.class_number << " hemispheres=" << poly.list.entries.size()
            << " max|mu|^2=" << poly.max_mu_norm() << " vertices=" << poly.vertices.size()
            << " singular=" << poly.singular.size() << " certificate=" << (cert ? "holds" : "FAILS") << "\n";
  std::cerr << "wrote " << dir.path().string() << " in " << std::fixed << std::setprecision(2) << seconds_since(t0)
            << " s\n";
  return cert ? 0 : 1;
}

int cmd_cohomology(long m, const std::string& range, uint64_t primes, const std::string& lifts_path,
                   const std::string& fields, const std::string& out) {
  FieldContext ctx = checked_field(m);
  auto [a, b] = parse_range(range);
  if (fields != "sweep" && fields != "exact") throw UsageError("--fields must be sweep or exact");
  std::optional<LiftTable> lifts;
  if (!lifts_path.empty()) lifts = load_lift_table(lifts_path);
  auto t0 = std::chrono::steady_clock::now();
  PolyhedronOptions po;
  po.workers = default_workers();
  Polyhedron poly = compute_polyhedron(ctx, po);
  GammaComplex x = rigid_quotient(poly);
  Json job{{"command", "cohomology"}, {"m", m}, {"n", Json::array({a, b})}, {"primes", primes},
           {"lifts", lifts_path.empty() ? Json() : Json(std::filesystem::path(lifts_path).filename().string())},
           {"fields", fields}};
  RunDirectory dir(run_dir(out, "cohomology-m" + std::to_string(m) + "-n" + std::to_string(a) + "-" + std::to_string(b)),
                   job);
  dir.write("complex.json", dump(complex_json(x)));
  Json table = Json::array();
  std::ostringstream tsv;
  tsv << "m\tn\th\tE2\th2_lower\th2_upper\teisenstein\tcusp_lower\tcusp_upper\tlift\tstatus\tfield\n";
  std::cout << std::left << std::setw(4) << "n" << std::setw(10) << "H2" << std::setw(6) << "Eis" << std::setw(10)
            << "cusp" << std::setw(6) << "lift" << "status\n";
  for (int n = a; n <= b; ++n) {
    std::optional<long> lift;
    if (lifts) {
      auto it = lifts->find({m, n});
      if (it != lifts->end()) lift = it->second;
    }
    Json rj;
    DimensionReport r;
    if (fields == "sweep") {
      SweepResult s = modp_sweep(ctx, x, n, primes, lift);
      r = s.final;
      rj = sweep_json(s);
    } else {
      r = h2_dimension(ctx, n, exact_dimensions(x, n), lift);
      rj = Json{{"final", report_json(r)}};
    }
    if (r.status == "interval") r.status = "uncertified";
    rj["final"]["status"] = r.status;
    dir.write("report-n" + std::to_string(n) + ".json", dump(rj));
    table.push_back(rj["final"]);
    auto iv = [](long lo, long hi) { return lo == hi ? std::to_string(lo) : "[" + std::to_string(lo) + "," + std::to_string(hi) + "]"; };
    tsv << m << "\t" << n << "\t" << ctx.class_number << "\t" << r.dims.e2_20 << "\t" << r.h2_lower << "\t"
        << r.h2_upper << "\t" << r.eisenstein << "\t" << r.cusp_lower << "\t" << r.cusp_upper << "\t"
        << (lift ? std::to_string(*lift) : "-") << "\t" << r.status << "\t" << r.dims.field << "\n";
    std::cout << std::left << std::setw(4) << n << std::setw(10) << iv(r.h2_lower, r.h2_upper) << std::setw(6)
              << r.eisenstein << std::setw(10) << iv(r.cusp_lower, r.cusp_upper) << std::setw(6)
              << (lift ? std::to_string(*lift) : "-") << r.status << "\n";
  }
  dir.write("table.json", dump(Json{{"m", m}, {"rows", table}}));
  dir.write("table.tsv", tsv.str());
  dir.finish(true);
  std::cerr << "wrote " << dir.path().string() << " in " << std::fixed << std::setprecision(2) << seconds_since(t0)
            << " s\n";
  return 0;
}

int cmd_verify(long m, const std::string& range, uint64_t primes, bool flip, const std::string& out) {
  FieldContext ctx = checked_field(m);
  auto [a, b] = parse_range(range);
  VerifyOptions opt;
  opt.n_min = a;
  opt.n_max = b;
  opt.prime_cap = primes;
  opt.inject_sign_flip = flip;
  auto results = run_invariant_suite(ctx, opt);
  bool all = true;
  Json arr = Json::array();
  for (const auto& r : results) {
    all = all && r.ok;
    std::cout << (r.ok ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
    arr.push_back(Json{{"check", r.name}, {"ok", r.ok}, {"detail", r.detail}});
  }
  Json job{{"command", "verify"}, {"m", m}, {"n", Json::array({a, b})}, {"primes", primes}, {"inject_sign_flip", flip}};
  RunDirectory dir(run_dir(out, "verify-m" + std::to_string(m)), job);
  dir.write("verify.json", dump(Json{{"m", m}, {"checks", arr}, {"ok", all}}));
  dir.finish(all);
  std::cout << (all ? "all checks pass" : "some checks FAIL") << "\n";
  return all ? 0 : 1;
}

int cmd_lifts(const std::vector<long>& ms, const std::string& range, const std::string& out) {
  auto [a, b] = parse_range(range);
  LiftTable t;
  for (long m : ms) {
    checked_field(m);
    for (int n = a; n <= b; ++n) t[{m, n}] = lift_oracle::lift_dimension(m, n);
  }
  std::string text = dump(lift_table_json(t));
  if (out.empty() || out == "-")
    std::cout << text;
  else {
    std::ofstream f(out);
    f << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bianchi groups: fundamental polyhedra, Floege complexes and cohomology dimensions"};
  app.require_subcommand(1);
  long m = 0;
  std::string out, range = "0", lifts_path, fields = "sweep";
  uint64_t primes = 200;
  bool off = false, complex = false, flip = false;
  std::vector<long> ms;

  auto* poly = app.add_subcommand("polyhedron", "compute the fundamental polyhedron");
  poly->add_option("-m", m, "squarefree m > 0, m != 1, 3")->required();
  poly->add_option("--out", out, "run directory (default runs/polyhedron-m<m>)");
  poly->add_flag("--off", off, "also write an OFF mesh of the boundary");
  poly->add_flag("--complex", complex, "also write the quotient cell complex");

  auto* coh = app.add_subcommand("cohomology", "dimensions of H^2(Gamma, E_{n,n})");
  coh->add_option("-m", m, "squarefree m > 0, m != 1, 3")->required();
  coh->add_option("-n", range, "weight range a..b")->required();
  coh->add_option("--primes", primes, "largest prime of the mod-p sweep")->capture_default_str();
  coh->add_option("--lifts", lifts_path, "lift lower-bound table (JSON)");
  coh->add_option("--fields", fields, "sweep (mod-p primes, then K) or exact (K only)")->capture_default_str();
  coh->add_option("--out", out, "run directory");

  auto* ver = app.add_subcommand("verify", "run the invariant suite");
  ver->add_option("-m", m, "squarefree m > 0, m != 1, 3")->required();
  ver->add_option("-n", range, "weight range a..b (default 0..2)");
  ver->add_option("--primes", primes, "largest prime for the mod-p comparison")->capture_default_str();
  ver->add_flag("--inject-sign-flip", flip, "test hook: corrupt one incidence sign")->group("");
  ver->add_option("--out", out, "run directory");

  auto* lifts = app.add_subcommand("lifts", "write the classical lift-dimension table");
  lifts->add_option("-m", ms, "fields")->required();
  lifts->add_option("-n", range, "weight range a..b")->required();
  lifts->add_option("--out", out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    if (*poly) return cmd_polyhedron(m, out, off, complex);
    if (*coh) return cmd_cohomology(m, range, primes, lifts_path, fields, out);
    if (*ver) {
      if (ver->count("-n") == 0) range = "0..2";
      return cmd_verify(m, range, primes, flip, out);
    }
    if (*lifts) return cmd_lifts(ms, range, out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
