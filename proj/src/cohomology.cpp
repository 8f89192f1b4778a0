#include "bianchi/cohomology.hpp"

#include <algorithm>

namespace bianchi {

namespace {

template <class F>
void add_block(const F& f, Matrix<F>& target, std::size_t row, std::size_t col, const Matrix<F>& block, int sign) {
  for (std::size_t i = 0; i < block.rows; ++i)
    for (std::size_t j = 0; j < block.cols; ++j) {
      const auto& v = block.at(i, j);
      if (f.is_zero(v)) continue;
      auto& t = target.at(row + i, col + j);
      t = sign > 0 ? f.add(t, v) : f.sub(t, v);
    }
}

template <class F>
Matrix<F> block_diagonal(const F& f, const std::vector<Matrix<F>>& blocks) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows;
    c += b.cols;
  }
  Matrix<F> out(f, r, c);
  r = c = 0;
  for (const auto& b : blocks) {
    add_block(f, out, r, c, b, 1);
    r += b.rows;
    c += b.cols;
  }
  return out;
}

void require_rigid(const GammaComplex& x) {
  if (!x.is_rigid()) throw ConsistencyError("equivariant complex: cell complex is not rigid");
  for (const auto& c : x.cells[2])
    for (const auto& g : c.stabilizer)
      if (!g.is_central()) throw ConsistencyError("equivariant complex: 2-cell with non-central stabilizer");
}

}  // namespace

template <class F>
EquivariantComplex<F> build_complex(const F& f, const GammaComplex& x, int n) {
  require_rigid(x);
  const FieldContext& ctx = x.ctx;
  EquivariantComplex<F> out;
  out.n = n;
  ModuleEn mod{n};
  const std::size_t d = mod.dim();
  out.module_dim = d;

  out.cusp.assign(x.cells[0].size(), std::nullopt);
  for (std::size_t v = 0; v < x.cells[0].size(); ++v) {
    const OrbitCell& cell = x.cells[0][v];
    if (cell.cusp) {
      if (cell.stabilizer.size() != 2) throw ConsistencyError("equivariant complex: cusp needs two generators");
      out.invariants[0].push_back(fixed_space(f, cell.stabilizer, n));
      out.cusp[v] = torus_cohomology(f, cell.stabilizer[0], cell.stabilizer[1], n);
    } else {
      out.invariants[0].push_back(invariants(f, ctx, cell.stabilizer, n));
    }
  }
  for (int dim = 1; dim <= 2; ++dim)
    for (const auto& cell : x.cells[dim]) out.invariants[dim].push_back(invariants(f, ctx, cell.stabilizer, n));

  std::size_t cols = 0;
  for (const auto& b : out.invariants[0]) {
    out.vertex_offset.push_back(cols);
    cols += b.cols;
  }
  for (std::size_t e = 0; e < x.cells[1].size(); ++e) out.edge_offset.push_back(e * d);
  for (std::size_t t = 0; t < x.cells[2].size(); ++t) out.face_offset.push_back(t * d);
  for (const auto& b : out.invariants[2]) out.e1_20 += b.cols;

  out.d0 = Matrix<F>(f, x.cells[1].size() * d, cols);
  for (std::size_t e = 0; e < x.cells[1].size(); ++e)
    for (const Face& face : x.cells[1][e].boundary) {
      Matrix<F> block = multiply(f, action_matrix(f, face.g, n), out.invariants[0][face.orbit]);
      add_block(f, out.d0, out.edge_offset[e], out.vertex_offset[face.orbit], block, face.sign);
    }

  out.d1_ambient = Matrix<F>(f, x.cells[2].size() * d, x.cells[1].size() * d);
  for (std::size_t t = 0; t < x.cells[2].size(); ++t)
    for (const Face& face : x.cells[2][t].boundary)
      add_block(f, out.d1_ambient, out.face_offset[t], out.edge_offset[face.orbit], action_matrix(f, face.g, n), face.sign);
  out.d1 = multiply(f, out.d1_ambient, block_diagonal(f, out.invariants[1]));

  if (!is_zero_matrix(f, multiply(f, out.d1_ambient, out.d0)))
    throw ConsistencyError("equivariant complex: d1 o d0 != 0");
  return out;
}

template <class F>
FieldDimensions field_dimensions(const F& f, const GammaComplex& x, int n) {
  EquivariantComplex<F> c = build_complex(f, x, n);
  FieldDimensions out;
  out.prime = f.characteristic();
  out.field = f.kind() == FieldKind::KRational ? "K" : f.kind() == FieldKind::PrimeSplit ? "F_p" : "F_p^2";
  out.e1_20 = c.e1_20;
  out.rank_d1 = rank(f, c.d1);
  if (out.rank_d1 > out.e1_20) throw ConsistencyError("field_dimensions: rank exceeds E1 dimension");
  out.e2_20 = out.e1_20 - out.rank_d1;
  out.d_squared_zero = true;
  for (const auto& t : c.cusp)
    if (t) out.cusps.push_back(*t);
  return out;
}

template EquivariantComplex<KField> build_complex(const KField&, const GammaComplex&, int);
template EquivariantComplex<SplitPrimeField> build_complex(const SplitPrimeField&, const GammaComplex&, int);
template EquivariantComplex<InertPrimeField> build_complex(const InertPrimeField&, const GammaComplex&, int);
template FieldDimensions field_dimensions(const KField&, const GammaComplex&, int);
template FieldDimensions field_dimensions(const SplitPrimeField&, const GammaComplex&, int);
template FieldDimensions field_dimensions(const InertPrimeField&, const GammaComplex&, int);

namespace {

/// r/s with |r|, s <= sqrt(M/2) and r == u * s mod M, if it exists.
std::optional<Rational> rational_reconstruction(const Integer& u, const Integer& modulus) {
  Integer bound = sqrt(Integer(modulus / 2));
  Integer r0 = modulus, r1 = u % modulus;
  if (r1 < 0) r1 += modulus;
  Integer s0 = 0, s1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1, s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (s1 == 0 || abs(s1) > bound) return std::nullopt;
  Rational out(r1, s1);
  out.canonicalize();
  Integer g = gcd(Integer(out.get_den()), modulus);
  if (g != 1) return std::nullopt;
  return out;
}

/// x == residue mod p, x == old mod modulus; modulus is updated.
void crt_update(Integer& value, const Integer& modulus, uint64_t residue, uint64_t p) {
  Integer pz(static_cast<unsigned long>(p));
  Integer diff = Integer(static_cast<unsigned long>(residue)) - value;
  diff %= pz;
  if (diff < 0) diff += pz;
  Integer minv;
  mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), pz.get_mpz_t());
  Integer k = (diff * minv) % pz;
  value += modulus * k;
}

/// psi^T (X (x) Y) computed as X^T Psi Y, Psi the (n+1)x(n+1) reshaping of psi.
std::vector<KElem> row_times_action(const KField& f, const std::vector<KElem>& psi, const GroupElement& g, int n) {
  auto [x, y] = action_factors(f, g, n);
  const std::size_t N = static_cast<std::size_t>(n + 1);
  std::vector<KElem> tmp(N * N, f.zero()), out(N * N, f.zero());
  // tmp = X^T Psi
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k) {
      const KElem& v = psi[i * N + k];
      if (v.is_zero()) continue;
      for (std::size_t j = 0; j < N; ++j)
        if (!x.at(i, j).is_zero()) tmp[j * N + k] += x.at(i, j) * v;
    }
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t k = 0; k < N; ++k) {
      const KElem& v = tmp[j * N + k];
      if (v.is_zero()) continue;
      for (std::size_t l = 0; l < N; ++l)
        if (!y.at(k, l).is_zero()) out[j * N + l] += v * y.at(k, l);
    }
  return out;
}

/// phi is a left null vector of d1 over K: for every edge orbit, the pulled back
/// row vector annihilates the edge invariants.
bool is_left_null(const KField& f, const GammaComplex& x, int n, const std::vector<KElem>& phi) {
  const std::size_t d = ModuleEn{n}.dim();
  for (std::size_t e = 0; e < x.cells[1].size(); ++e) {
    std::vector<KElem> psi(d, f.zero());
    bool any = false;
    for (std::size_t t = 0; t < x.cells[2].size(); ++t) {
      std::vector<KElem> slice(phi.begin() + static_cast<long>(t * d), phi.begin() + static_cast<long>((t + 1) * d));
      if (std::all_of(slice.begin(), slice.end(), [](const KElem& v) { return v.is_zero(); })) continue;
      for (const Face& face : x.cells[2][t].boundary) {
        if (face.orbit != e) continue;
        auto term = row_times_action(f, slice, face.g, n);
        for (std::size_t i = 0; i < d; ++i) psi[i] = face.sign > 0 ? psi[i] + term[i] : psi[i] - term[i];
        any = true;
      }
    }
    if (!any) continue;
    std::vector<KElem> total(d, f.zero());
    for (const auto& h : x.cells[1][e].stabilizer) {
      auto term = row_times_action(f, psi, h, n);
      for (std::size_t i = 0; i < d; ++i) total[i] += term[i];
    }
    for (const auto& v : total)
      if (!v.is_zero()) return false;
  }
  return true;
}

struct ModularKernel {
  std::size_t dim = 0;
  std::vector<std::size_t> pivots;  // of the transposed matrix
  Matrix<InertPrimeField> basis;
};

ModularKernel left_kernel_mod(const InertPrimeField& f, const EquivariantComplex<InertPrimeField>& c) {
  Matrix<InertPrimeField> t = transpose(f, c.d1);
  Matrix<InertPrimeField> r = t;
  ModularKernel out;
  out.pivots = rref(f, r);
  out.basis = kernel(f, t);
  out.dim = out.basis.cols;
  return out;
}

/// Torus cohomology over K from a large inert prime: every unipotent group has a
/// nonzero fixed vector and a nonzero coinvariant, so (1, 2, 1) modulo p is exact.
std::optional<TorusCohomology> exact_torus(const TorusCohomology& modp) {
  if (modp.h0 == 1 && modp.h1 == 2 && modp.h2 == 1) return modp;
  return std::nullopt;
}

}  // namespace

FieldDimensions exact_dimensions(const GammaComplex& x, int n, std::size_t max_primes) {
  require_rigid(x);
  const FieldContext& ctx = x.ctx;
  KField kf(ctx);
  const std::size_t d = ModuleEn{n}.dim();
  const std::size_t faces = x.cells[2].size();

  FieldDimensions out;
  out.field = "K";
  out.e1_20 = faces * d;

  std::optional<ModularKernel> best;
  std::vector<Integer> acc_a, acc_b;
  Integer modulus = 1;
  std::size_t used = 0;
  std::vector<uint64_t> primes = large_inert_primes(ctx, max_primes);
  for (uint64_t p : primes) {
    InertPrimeField f(ctx, p);
    EquivariantComplex<InertPrimeField> c = build_complex(f, x, n);
    if (c.e1_20 != out.e1_20) throw ConsistencyError("exact_dimensions: unexpected E1 dimension");
    if (used == 0 && !best) {
      for (std::size_t v = 0; v < c.cusp.size(); ++v) {
        if (!c.cusp[v]) continue;
        auto exact = exact_torus(*c.cusp[v]);
        const auto& gens = x.cells[0][v].stabilizer;
        out.cusps.push_back(exact ? *exact : torus_cohomology(kf, gens[0], gens[1], n));
      }
    }
    ModularKernel k = left_kernel_mod(f, c);
    // pivots modulo p are columns independent over K, so the K-rational pivot
    // set is the lexicographically smallest one seen
    bool reset = !best || k.dim < best->dim || (k.dim == best->dim && k.pivots < best->pivots);
    if (best && !reset && (k.dim != best->dim || k.pivots != best->pivots)) continue;  // unlucky prime
    if (reset) {
      best = k;
      modulus = 1;
      used = 0;
      acc_a.assign(k.basis.a.size(), Integer(0));
      acc_b.assign(k.basis.a.size(), Integer(0));
    }
    for (std::size_t i = 0; i < k.basis.a.size(); ++i) {
      crt_update(acc_a[i], modulus, k.basis.a[i].a, p);
      crt_update(acc_b[i], modulus, k.basis.a[i].b, p);
    }
    modulus *= Integer(static_cast<unsigned long>(p));
    ++used;
    out.d_squared_zero = true;

    if (best->dim == 0) {
      out.rank_d1 = out.e1_20;
      out.e2_20 = 0;
      out.certificate = "full rank modulo " + std::to_string(p);
      return out;
    }
    // reconstruct over K and check
    bool ok = true;
    std::vector<std::vector<KElem>> vectors(best->dim, std::vector<KElem>(best->basis.rows));
    for (std::size_t i = 0; i < best->basis.rows && ok; ++i)
      for (std::size_t j = 0; j < best->dim && ok; ++j) {
        const std::size_t idx = i * best->dim + j;
        auto ra = rational_reconstruction(acc_a[idx], modulus);
        auto rb = rational_reconstruction(acc_b[idx], modulus);
        if (!ra || !rb) {
          ok = false;
          break;
        }
        vectors[j][i] = ctx.elem(*ra, *rb);
      }
    if (!ok) continue;
    bool all = true;
    for (const auto& v : vectors)
      if (!is_left_null(kf, x, n, v)) {
        all = false;
        break;
      }
    if (!all) continue;
    // The reconstructed vectors are in echelon form on the free positions, hence
    // independent; together with rank over K >= rank modulo p this fixes the rank.
    out.e2_20 = best->dim;
    out.rank_d1 = out.e1_20 - out.e2_20;
    out.certificate = "left kernel of dimension " + std::to_string(best->dim) + " reconstructed from " +
                      std::to_string(used) + " inert primes and verified over K";
    return out;
  }
  throw ConsistencyError("exact_dimensions: could not certify the rank over K");
}

long eisenstein_dimension(const FieldContext& ctx, int n) {
  if (ctx.m == 1 || ctx.m == 3) throw std::invalid_argument("eisenstein_dimension: m = 1 and m = 3 are not supported");
  return ctx.class_number - (n == 0 ? 1 : 0);
}

DimensionReport h2_dimension(const FieldContext& ctx, int n, const FieldDimensions& dims,
                             std::optional<long> lift_lower_bound) {
  DimensionReport r;
  r.m = ctx.m;
  r.n = n;
  r.class_number = ctx.class_number;
  r.dims = dims;
  r.singular_orbits = static_cast<std::size_t>(ctx.class_number - 1);
  if (dims.cusps.size() != r.singular_orbits) throw ConsistencyError("h2_dimension: cusp orbit count differs from h - 1");
  const long e2 = static_cast<long>(dims.e2_20);
  const long s = static_cast<long>(r.singular_orbits);
  r.h2_upper = e2 + s;
  r.h2_lower = e2 + s - std::min(2 * s, e2);
  r.h2_conjectural_upper = std::max(r.h2_lower, e2);
  r.eisenstein = eisenstein_dimension(ctx, n);
  r.lift_lower_bound = lift_lower_bound;
  r.status = s == 0 ? "exact" : "interval";
  if (lift_lower_bound) {
    const long target = *lift_lower_bound + r.eisenstein;
    if (r.h2_upper < target) throw ConsistencyError("h2_dimension: dimension below the lift lower bound");
    if (r.h2_upper == target) {
      r.h2_lower = r.h2_upper;
      r.h2_conjectural_upper = r.h2_upper;
      r.status = "certified";
    } else {
      r.h2_lower = std::max(r.h2_lower, target);
    }
  }
  auto [lo, hi] = cuspidal_dimension(r);
  r.cusp_lower = lo;
  r.cusp_upper = hi;
  return r;
}

std::pair<long, long> cuspidal_dimension(const DimensionReport& report) {
  const long hi = report.h2_upper - report.eisenstein;
  if (hi < 0) throw ConsistencyError("cuspidal_dimension: negative cuspidal dimension");
  const long lo = std::max(0L, report.h2_lower - report.eisenstein);
  return {lo, hi};
}

SweepResult modp_sweep(const FieldContext& ctx, const GammaComplex& x, int n, uint64_t prime_cap,
                       std::optional<long> lift_lower_bound, bool stop_early) {
  SweepResult out;
  for (uint64_t p : good_primes(ctx, 5, prime_cap)) {
    FieldDimensions dims = splitting(ctx, p) == 1 ? field_dimensions(SplitPrimeField(ctx, p), x, n)
                                                  : field_dimensions(InertPrimeField(ctx, p), x, n);
    DimensionReport r = h2_dimension(ctx, n, dims, lift_lower_bound);
    out.modp.push_back(r);
    if (r.status == "certified" && !out.early_exit) {
      out.early_exit = true;
      out.final = r;
      if (stop_early) return out;
    }
  }
  DimensionReport exact = h2_dimension(ctx, n, exact_dimensions(x, n), lift_lower_bound);
  for (const auto& r : out.modp) {
    if (r.dims.e2_20 < exact.dims.e2_20)
      throw ConsistencyError("modp_sweep: dimension modulo " + std::to_string(r.dims.prime) + " below the K-rational one");
    if (r.dims.e2_20 == exact.dims.e2_20) out.equality_attained = true;
  }
  out.exact = exact;
  if (!out.early_exit) out.final = exact;
  return out;
}

std::vector<std::vector<long>> quotient_incidence(const GammaComplex& x) {
  std::vector<std::vector<long>> out(x.cells[2].size(), std::vector<long>(x.cells[1].size(), 0));
  for (std::size_t t = 0; t < x.cells[2].size(); ++t)
    for (const Face& face : x.cells[2][t].boundary) out[t][face.orbit] += face.sign;
  return out;
}

std::size_t quotient_h2(const GammaComplex& x) {
  auto inc = quotient_incidence(x);
  const std::size_t rows = inc.size(), cols = x.cells[1].size();
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = inc[i][j];
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && sgn(a[piv][col]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (sgn(a[i][col]) == 0) continue;
      Rational factor = a[i][col] / a[rank][col];
      for (std::size_t j = col; j < cols; ++j) a[i][j] -= factor * a[rank][j];
    }
    ++rank;
  }
  return rows - rank;
}

}  // namespace bianchi
