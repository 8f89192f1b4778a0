#pragma once

// H^1(PSL2(O), Sym^n (x) conj Sym^n) from a finite presentation by Fox calculus,
// over a split prime field. Shares nothing with the library: its own ring
// arithmetic, symmetric powers and elimination.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fox {

/// r + w * omega, omega^2 = s * omega + t.
struct Ring {
  int64_t s, t;
};

struct Elt {
  int64_t r = 0, w = 0;
};

inline Elt mul(const Ring& o, Elt x, Elt y) {
  const int64_t ww = x.w * y.w;
  return {x.r * y.r + o.t * ww, x.r * y.w + x.w * y.r + o.s * ww};
}
inline Elt add(Elt x, Elt y) { return {x.r + y.r, x.w + y.w}; }
inline Elt neg(Elt x) { return {-x.r, -x.w}; }

using Mat2 = std::array<Elt, 4>;  // a b c d

inline Mat2 mul(const Ring& o, const Mat2& x, const Mat2& y) {
  return {add(mul(o, x[0], y[0]), mul(o, x[1], y[2])), add(mul(o, x[0], y[1]), mul(o, x[1], y[3])),
          add(mul(o, x[2], y[0]), mul(o, x[3], y[2])), add(mul(o, x[2], y[1]), mul(o, x[3], y[3]))};
}
inline Mat2 inverse(const Mat2& x) { return {x[3], neg(x[1]), neg(x[2]), x[0]}; }

using Word = std::vector<std::pair<int, int>>;  // (generator, +-1)

struct Presentation {
  Ring ring;
  std::vector<Mat2> gens;
  std::vector<Word> relators;
};

/// Every relator evaluates to +-I.
inline bool relators_hold(const Presentation& pr) {
  for (const auto& w : pr.relators) {
    Mat2 g{Elt{1, 0}, Elt{}, Elt{}, Elt{1, 0}};
    for (auto [i, e] : w) g = mul(pr.ring, g, e > 0 ? pr.gens[i] : inverse(pr.gens[i]));
    const bool diag = g[1].r == 0 && g[1].w == 0 && g[2].r == 0 && g[2].w == 0 && g[0].w == 0 && g[3].w == 0;
    if (!diag || g[0].r != g[3].r || (g[0].r != 1 && g[0].r != -1)) return false;
  }
  return true;
}

class Fp {
 public:
  explicit Fp(uint64_t p) : p_(p) {}
  uint64_t p() const { return p_; }
  uint64_t red(int64_t v) const { int64_t q = v % static_cast<int64_t>(p_); return static_cast<uint64_t>(q < 0 ? q + static_cast<int64_t>(p_) : q); }
  uint64_t mul(uint64_t a, uint64_t b) const { return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % p_); }
  uint64_t add(uint64_t a, uint64_t b) const { return (a + b) % p_; }
  uint64_t sub(uint64_t a, uint64_t b) const { return (a + p_ - b) % p_; }
  uint64_t inv(uint64_t a) const {
    uint64_t r = 1, e = p_ - 2;
    for (; e; e >>= 1, a = mul(a, a))
      if (e & 1) r = mul(r, a);
    return r;
  }

 private:
  uint64_t p_;
};

using Mat = std::vector<std::vector<uint64_t>>;

inline Mat matmul(const Fp& f, const Mat& x, const Mat& y) {
  Mat z(x.size(), std::vector<uint64_t>(y[0].size(), 0));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = 0; k < y.size(); ++k)
      if (x[i][k])
        for (std::size_t j = 0; j < y[0].size(); ++j) z[i][j] = f.add(z[i][j], f.mul(x[i][k], y[k][j]));
  return z;
}

inline std::size_t rank(const Fp& f, Mat m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    const uint64_t iv = f.inv(m[r][c]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const uint64_t k = f.mul(m[i][c], iv);
      for (std::size_t j = c; j < cols; ++j) m[i][j] = f.sub(m[i][j], f.mul(k, m[r][j]));
    }
    ++r;
  }
  return r;
}

/// Sym^n of (a b; c d) on X^i Y^(n-i): X -> aX + cY, Y -> bX + dY.
inline Mat sym(const Fp& f, uint64_t a, uint64_t b, uint64_t c, uint64_t d, int n) {
  const std::size_t N = static_cast<std::size_t>(n + 1);
  Mat out(N, std::vector<uint64_t>(N, 0));
  for (int i = 0; i <= n; ++i) {
    // (aX + cY)^i (bX + dY)^(n-i)
    std::vector<uint64_t> poly{1};  // coefficient of X^k
    auto times = [&](uint64_t x, uint64_t y) {
      std::vector<uint64_t> q(poly.size() + 1, 0);
      for (std::size_t k = 0; k < poly.size(); ++k) {
        q[k + 1] = f.add(q[k + 1], f.mul(poly[k], x));
        q[k] = f.add(q[k], f.mul(poly[k], y));
      }
      poly = q;
    };
    for (int k = 0; k < i; ++k) times(a, c);
    for (int k = i; k < n; ++k) times(b, d);
    for (std::size_t k = 0; k < N; ++k) out[k][static_cast<std::size_t>(i)] = poly[k];
  }
  return out;
}

inline Mat kron(const Fp& f, const Mat& x, const Mat& y) {
  Mat z(x.size() * y.size(), std::vector<uint64_t>(x[0].size() * y[0].size(), 0));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x[0].size(); ++j)
      for (std::size_t k = 0; k < y.size(); ++k)
        for (std::size_t l = 0; l < y[0].size(); ++l) z[i * y.size() + k][j * y[0].size() + l] = f.mul(x[i][j], y[k][l]);
  return z;
}

/// dim H^1 over F_p, p split with omega -> root and conj(omega) -> s - root.
inline std::size_t h1(const Presentation& pr, uint64_t p, int n) {
  const Fp f(p);
  uint64_t root = 0;
  for (; root < p; ++root) {
    // root^2 - s root - t == 0
    uint64_t v = f.sub(f.sub(f.mul(root, root), f.mul(f.red(pr.ring.s), root)), f.red(pr.ring.t));
    if (v == 0) break;
  }
  if (root == p) throw std::invalid_argument("fox::h1: prime not split");
  const uint64_t other = f.sub(f.red(pr.ring.s), root);
  auto at = [&](Elt x, uint64_t rt) { return f.add(f.red(x.r), f.mul(f.red(x.w), rt)); };
  auto rho = [&](const Mat2& g) {
    return kron(f, sym(f, at(g[0], root), at(g[1], root), at(g[2], root), at(g[3], root), n),
                sym(f, at(g[0], other), at(g[1], other), at(g[2], other), at(g[3], other), n));
  };
  const std::size_t d = static_cast<std::size_t>((n + 1) * (n + 1)), ng = pr.gens.size();
  std::vector<Mat> r, ri;
  for (const auto& g : pr.gens) {
    r.push_back(rho(g));
    ri.push_back(rho(inverse(g)));
  }
  Mat id(d, std::vector<uint64_t>(d, 0));
  for (std::size_t i = 0; i < d; ++i) id[i][i] = 1;
  Mat z(pr.relators.size() * d, std::vector<uint64_t>(ng * d, 0));
  for (std::size_t k = 0; k < pr.relators.size(); ++k) {
    Mat prefix = id;
    for (auto [i, e] : pr.relators[k]) {
      const std::size_t gi = static_cast<std::size_t>(i);
      Mat blk = e > 0 ? prefix : matmul(f, prefix, ri[gi]);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
          uint64_t& cell = z[k * d + a][gi * d + b];
          cell = e > 0 ? f.add(cell, blk[a][b]) : f.sub(cell, blk[a][b]);
        }
      prefix = matmul(f, prefix, e > 0 ? r[gi] : ri[gi]);
    }
  }
  Mat bnd(ng * d, std::vector<uint64_t>(d, 0));
  for (std::size_t i = 0; i < ng; ++i)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) bnd[i * d + a][b] = f.sub(r[i][a][b], a == b ? 1 : 0);
  return ng * d - rank(f, z) - rank(f, bnd);
}

/// <a, t, u | a^2, (at)^3, [t, u], (a u^-1 a u)^2>, u = (1 sqrt(-2); 0 1).
inline Presentation psl2_m2() {
  Presentation pr{{0, -2}, {}, {}};
  pr.gens = {Mat2{Elt{}, Elt{-1, 0}, Elt{1, 0}, Elt{}}, Mat2{Elt{1, 0}, Elt{1, 0}, Elt{}, Elt{1, 0}},
             Mat2{Elt{1, 0}, Elt{0, 1}, Elt{}, Elt{1, 0}}};
  pr.relators = {{{0, 1}, {0, 1}},
                 {{0, 1}, {1, 1}, {0, 1}, {1, 1}, {0, 1}, {1, 1}},
                 {{1, 1}, {2, 1}, {1, -1}, {2, -1}},
                 {{0, 1}, {2, -1}, {0, 1}, {2, 1}, {0, 1}, {2, -1}, {0, 1}, {2, 1}}};
  return pr;
}

/// <a, t, u | a^2, (at)^3, [t, u], (a t u^-1 a u)^2>, u = (1 (1+sqrt(-7))/2; 0 1).
inline Presentation psl2_m7() {
  Presentation pr{{-1, -2}, {}, {}};
  pr.gens = {Mat2{Elt{}, Elt{-1, 0}, Elt{1, 0}, Elt{}}, Mat2{Elt{1, 0}, Elt{1, 0}, Elt{}, Elt{1, 0}},
             Mat2{Elt{1, 0}, Elt{1, 1}, Elt{}, Elt{1, 0}}};
  pr.relators = {{{0, 1}, {0, 1}},
                 {{0, 1}, {1, 1}, {0, 1}, {1, 1}, {0, 1}, {1, 1}},
                 {{1, 1}, {2, 1}, {1, -1}, {2, -1}},
                 {{0, 1}, {1, 1}, {2, -1}, {0, 1}, {2, 1}, {0, 1}, {1, 1}, {2, -1}, {0, 1}, {2, 1}}};
  return pr;
}

}  // namespace fox
