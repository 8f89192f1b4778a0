#pragma once

// Dense linear algebra over any of the coefficient fields.

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bianchi {

template <class F>
struct Matrix {
  using T = typename F::T;
  std::size_t rows = 0, cols = 0;
  std::vector<T> a;

  Matrix() = default;
  Matrix(const F& f, std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, f.zero()) {}

  T& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const T& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

template <class F>
Matrix<F> identity_matrix(const F& f, std::size_t n) {
  Matrix<F> m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
  return m;
}

template <class F>
Matrix<F> multiply(const F& f, const Matrix<F>& x, const Matrix<F>& y) {
  if (x.cols != y.rows) throw std::invalid_argument("multiply: shape mismatch");
  Matrix<F> out(f, x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const auto& v = x.at(i, k);
      if (f.is_zero(v)) continue;
      for (std::size_t j = 0; j < y.cols; ++j) out.at(i, j) = f.add(out.at(i, j), f.mul(v, y.at(k, j)));
    }
  return out;
}

template <class F>
Matrix<F> add(const F& f, const Matrix<F>& x, const Matrix<F>& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("add: shape mismatch");
  Matrix<F> out = x;
  for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] = f.add(out.a[i], y.a[i]);
  return out;
}

template <class F>
Matrix<F> scale(const F& f, const Matrix<F>& x, const typename F::T& s) {
  Matrix<F> out = x;
  for (auto& v : out.a) v = f.mul(v, s);
  return out;
}

template <class F>
Matrix<F> transpose(const F& f, const Matrix<F>& x) {
  Matrix<F> out(f, x.cols, x.rows);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) out.at(j, i) = x.at(i, j);
  return out;
}

template <class F>
bool is_zero_matrix(const F& f, const Matrix<F>& x) {
  for (const auto& v : x.a)
    if (!f.is_zero(v)) return false;
  return true;
}

template <class F>
bool equal(const F& f, const Matrix<F>& x, const Matrix<F>& y) {
  if (x.rows != y.rows || x.cols != y.cols) return false;
  for (std::size_t i = 0; i < x.a.size(); ++i)
    if (!f.eq(x.a[i], y.a[i])) return false;
  return true;
}

/// Reduced row echelon form in place; returns the pivot columns.
template <class F>
std::vector<std::size_t> rref(const F& f, Matrix<F>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t piv = row;
    while (piv < m.rows && f.is_zero(m.at(piv, col))) ++piv;
    if (piv == m.rows) continue;
    if (piv != row)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
    const auto inv = f.inv(m.at(row, col));
    for (std::size_t j = col; j < m.cols; ++j) m.at(row, j) = f.mul(m.at(row, j), inv);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == row) continue;
      const auto factor = m.at(i, col);
      if (f.is_zero(factor)) continue;
      for (std::size_t j = col; j < m.cols; ++j) {
        const auto& v = m.at(row, j);
        if (!f.is_zero(v)) m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, v));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Rank by forward elimination only.
template <class F>
std::size_t rank(const F& f, Matrix<F> m) {
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t piv = row;
    while (piv < m.rows && f.is_zero(m.at(piv, col))) ++piv;
    if (piv == m.rows) continue;
    if (piv != row)
      for (std::size_t j = col; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
    const auto inv = f.inv(m.at(row, col));
    for (std::size_t i = row + 1; i < m.rows; ++i) {
      const auto factor = f.mul(m.at(i, col), inv);
      if (f.is_zero(factor)) continue;
      for (std::size_t j = col; j < m.cols; ++j) {
        const auto& v = m.at(row, j);
        if (!f.is_zero(v)) m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, v));
      }
    }
    ++row;
  }
  return row;
}

/// Basis of the null space {v : m v = 0} as the columns of the result, one per
/// free column, with a 1 in that free position.
template <class F>
Matrix<F> kernel(const F& f, const Matrix<F>& m) {
  Matrix<F> r = m;
  std::vector<std::size_t> pivots = rref(f, r);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < m.cols; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix<F> out(f, m.cols, free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    out.at(free[k], k) = f.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) out.at(pivots[i], k) = f.neg(r.at(i, free[k]));
  }
  return out;
}

/// Basis of the column space, as a subset of the columns of m.
template <class F>
Matrix<F> column_basis(const F& f, const Matrix<F>& m) {
  Matrix<F> r = m;
  std::vector<std::size_t> pivots = rref(f, r);
  Matrix<F> out(f, m.rows, pivots.size());
  for (std::size_t k = 0; k < pivots.size(); ++k)
    for (std::size_t i = 0; i < m.rows; ++i) out.at(i, k) = m.at(i, pivots[k]);
  return out;
}

/// Side-by-side concatenation [x | y].
template <class F>
Matrix<F> hconcat(const F& f, const Matrix<F>& x, const Matrix<F>& y) {
  if (x.rows != y.rows) throw std::invalid_argument("hconcat: row mismatch");
  Matrix<F> out(f, x.rows, x.cols + y.cols);
  for (std::size_t i = 0; i < x.rows; ++i) {
    for (std::size_t j = 0; j < x.cols; ++j) out.at(i, j) = x.at(i, j);
    for (std::size_t j = 0; j < y.cols; ++j) out.at(i, x.cols + j) = y.at(i, j);
  }
  return out;
}

/// Stacked [x; y].
template <class F>
Matrix<F> vconcat(const F& f, const Matrix<F>& x, const Matrix<F>& y) {
  if (x.cols != y.cols) throw std::invalid_argument("vconcat: column mismatch");
  Matrix<F> out(f, x.rows + y.rows, x.cols);
  for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = x.a[i];
  for (std::size_t i = 0; i < y.a.size(); ++i) out.a[x.a.size() + i] = y.a[i];
  return out;
}

}  // namespace bianchi
