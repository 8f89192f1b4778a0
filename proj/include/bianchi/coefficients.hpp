#pragma once

// The modules E_{n,n} = Sym^n (x) conj-twisted Sym^n with their SL2(O) action.
//
// Basis vectors e_(a,b) = x^a y^(n-a) (x) xb^b yb^(n-b), index a*(n+1) + b.
// The first factor is the substitution (x, y) -> (a x + c y, b x + d y); the
// second is the same substitution for the conjugate of the inverse transpose,
// so that x^n (x) yb^n spans the invariants of the upper unipotent group.
// Matrices act on column vectors and g -> action_matrix(g) is multiplicative.

#include "bianchi/fields.hpp"
#include "bianchi/group.hpp"
#include "bianchi/linalg.hpp"

#include <stdexcept>

namespace bianchi {

struct ModuleEn {
  int n = 0;
  std::size_t dim() const { return static_cast<std::size_t>((n + 1) * (n + 1)); }
  std::size_t index(int a, int b) const { return static_cast<std::size_t>(a * (n + 1) + b); }
};

/// Column i: coefficients of (a x + c y)^i (b x + d y)^(n-i) in the basis x^j y^(n-j).
template <class F>
Matrix<F> sym_power(const F& f, const typename F::T& a, const typename F::T& b, const typename F::T& c,
                    const typename F::T& d, int n) {
  using T = typename F::T;
  const std::size_t N = static_cast<std::size_t>(n + 1);
  // pa[i][j]: coefficient of x^j y^(i-j) in (a x + c y)^i; pb likewise for (b x + d y)
  std::vector<std::vector<T>> pa(N), pb(N);
  pa[0] = {f.one()};
  pb[0] = {f.one()};
  for (std::size_t i = 1; i < N; ++i) {
    pa[i].assign(i + 1, f.zero());
    pb[i].assign(i + 1, f.zero());
    for (std::size_t j = 0; j < i; ++j) {
      pa[i][j + 1] = f.add(pa[i][j + 1], f.mul(pa[i - 1][j], a));
      pa[i][j] = f.add(pa[i][j], f.mul(pa[i - 1][j], c));
      pb[i][j + 1] = f.add(pb[i][j + 1], f.mul(pb[i - 1][j], b));
      pb[i][j] = f.add(pb[i][j], f.mul(pb[i - 1][j], d));
    }
  }
  Matrix<F> out(f, N, N);
  for (std::size_t i = 0; i < N; ++i) {
    const auto& u = pa[i];
    const auto& v = pb[N - 1 - i];
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (f.is_zero(u[j])) continue;
      for (std::size_t k = 0; k < v.size(); ++k) out.at(j + k, i) = f.add(out.at(j + k, i), f.mul(u[j], v[k]));
    }
  }
  return out;
}

template <class F>
Matrix<F> kronecker(const F& f, const Matrix<F>& x, const Matrix<F>& y) {
  Matrix<F> out(f, x.rows * y.rows, x.cols * y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) {
      const auto& v = x.at(i, j);
      if (f.is_zero(v)) continue;
      for (std::size_t k = 0; k < y.rows; ++k)
        for (std::size_t l = 0; l < y.cols; ++l) out.at(i * y.rows + k, j * y.cols + l) = f.mul(v, y.at(k, l));
    }
  return out;
}

/// The two tensor factors of the action of g.
template <class F>
std::pair<Matrix<F>, Matrix<F>> action_factors(const F& f, const GroupElement& g, int n) {
  Matrix<F> first = sym_power(f, f.reduce(g.a), f.reduce(g.b), f.reduce(g.c), f.reduce(g.d), n);
  // conj(g)^(-T) = (conj d, -conj c; -conj b, conj a)
  Matrix<F> second = sym_power(f, f.reduce_conj(g.d), f.neg(f.reduce_conj(g.c)), f.neg(f.reduce_conj(g.b)),
                               f.reduce_conj(g.a), n);
  return {std::move(first), std::move(second)};
}

template <class F>
Matrix<F> action_matrix(const F& f, const GroupElement& g, int n) {
  auto [x, y] = action_factors(f, g, n);
  return kronecker(f, x, y);
}

/// Sum of action matrices over the given elements.
template <class F>
Matrix<F> group_sum(const F& f, const std::vector<GroupElement>& elements, int n) {
  ModuleEn mod{n};
  Matrix<F> sum(f, mod.dim(), mod.dim());
  for (const auto& g : elements) sum = add(f, sum, action_matrix(f, g, n));
  return sum;
}

/// (1/|G|) * sum of action matrices over all elements of the finite group G.
template <class F>
Matrix<F> averaging_projector(const F& f, const std::vector<GroupElement>& group, int n) {
  if (group.empty()) throw std::invalid_argument("averaging_projector: empty group");
  const auto order = f.from_int(static_cast<long>(group.size()));
  if (f.is_zero(order)) throw std::invalid_argument("averaging_projector: group order not invertible");
  return scale(f, group_sum(f, group, n), f.inv(order));
}

/// Basis (columns) of M^G for the finite group generated by gens, via the
/// averaging projector.
template <class F>
Matrix<F> invariants(const F& f, const FieldContext& ctx, const std::vector<GroupElement>& gens, int n) {
  std::vector<GroupElement> group = close_group(ctx, gens);
  return column_basis(f, averaging_projector(f, group, n));
}

/// Joint kernel of (action(g) - 1) over the generators, stacked.
template <class F>
Matrix<F> fixed_space(const F& f, const std::vector<GroupElement>& gens, int n) {
  ModuleEn mod{n};
  const std::size_t d = mod.dim();
  Matrix<F> stacked(f, 0, d);
  const Matrix<F> id = identity_matrix(f, d);
  for (const auto& g : gens) {
    Matrix<F> a = action_matrix(f, g, n);
    for (std::size_t i = 0; i < a.a.size(); ++i) a.a[i] = f.sub(a.a[i], id.a[i]);
    stacked = vconcat(f, stacked, a);
  }
  if (gens.empty()) return id;
  return kernel(f, stacked);
}

/// Joint fixed space of the translations (1 t; 0 1).
template <class F>
Matrix<F> unipotent_invariants(const F& f, const FieldContext& ctx, const std::vector<KElem>& translations, int n) {
  std::vector<GroupElement> gens;
  for (const auto& t : translations) gens.push_back({ctx.one(), t, ctx.zero(), ctx.one()});
  return fixed_space(f, gens, n);
}

struct TorusCohomology {
  std::size_t h0 = 0, h1 = 0, h2 = 0;
};

/// Cohomology of Z^2 acting through two commuting elements, from the Koszul complex
/// M -> M^2 -> M, v -> ((A-1)v, (B-1)v), (u, w) -> (B-1)u - (A-1)w.
template <class F>
TorusCohomology torus_cohomology(const F& f, const GroupElement& ga, const GroupElement& gb, int n) {
  if (ga * gb != gb * ga) throw std::invalid_argument("torus_cohomology: generators do not commute");
  ModuleEn mod{n};
  const std::size_t d = mod.dim();
  Matrix<F> a = action_matrix(f, ga, n), b = action_matrix(f, gb, n);
  for (std::size_t i = 0; i < d; ++i) {
    a.at(i, i) = f.sub(a.at(i, i), f.one());
    b.at(i, i) = f.sub(b.at(i, i), f.one());
  }
  Matrix<F> d0 = vconcat(f, a, b);
  Matrix<F> minus_a = scale(f, a, f.neg(f.one()));
  Matrix<F> d1 = hconcat(f, b, minus_a);
  if (!is_zero_matrix(f, multiply(f, d1, d0))) throw ConsistencyError("torus_cohomology: Koszul differential does not square to zero");
  const std::size_t r0 = rank(f, d0), r1 = rank(f, d1);
  TorusCohomology out;
  out.h0 = d - r0;
  out.h1 = (2 * d - r1) - r0;
  out.h2 = d - r1;
  return out;
}

/// dim M^G over K from the character: (1/|G|) * sum of traces.
std::size_t invariant_dimension_by_character(const FieldContext& ctx, const std::vector<GroupElement>& group, int n);

}  // namespace bianchi
