#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mord/error.hpp"
#include "mord/matrix.hpp"

namespace mord {

// Exact linear algebra over a field F (K = Frac(R), Q, F_p). Row-vector
// conventions throughout: kernels are left kernels {x : x*M = 0}.

template <class F>
struct Echelon {
  Matrix<F> rref;                    // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;   // pivot column per row
};

template <class F>
Echelon<F> row_echelon(Matrix<F> m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m(piv, c) == F(0)) ++piv;
    if (piv == rows) continue;
    m.swap_rows(piv, r);
    const F inv = F(1) / m(r, c);
    for (std::size_t j = c; j < cols; ++j) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == F(0)) continue;
      const F f = m(i, c);
      for (std::size_t j = c; j < cols; ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {m.block(0, 0, r, cols), std::move(pivots)};
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  return row_echelon(m).pivots.size();
}

// Reduce v modulo the row space of an echelon form; zero iff v is in it.
template <class F>
std::vector<F> reduce_mod(std::vector<F> v, const Echelon<F>& e) {
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    const F f = v[e.pivots[i]];
    if (f == F(0)) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = v[j] - f * e.rref(i, j);
  }
  return v;
}

template <class F>
bool in_row_space(const std::vector<F>& v, const Echelon<F>& e) {
  for (const auto& x : reduce_mod(v, e))
    if (!(x == F(0))) return false;
  return true;
}

// Basis (rows) of {x : x*M = 0}.
template <class F>
Matrix<F> left_kernel(const Matrix<F>& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  Matrix<F> aug(rows, cols + rows, F(0));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug(i, j) = m(i, j);
    aug(i, cols + i) = F(1);
  }
  // Eliminate on the left block only, keeping all rows.
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && aug(piv, c) == F(0)) ++piv;
    if (piv == rows) continue;
    aug.swap_rows(piv, r);
    const F inv = F(1) / aug(r, c);
    for (std::size_t j = 0; j < cols + rows; ++j) aug(r, j) = aug(r, j) * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || aug(i, c) == F(0)) continue;
      const F f = aug(i, c);
      for (std::size_t j = 0; j < cols + rows; ++j) aug(i, j) = aug(i, j) - f * aug(r, j);
    }
    ++r;
  }
  Matrix<F> ker = aug.block(r, cols, rows - r, rows);
  if (ker.rows() == 0) return Matrix<F>(0, rows);
  return row_echelon(ker).rref;
}

// Basis (rows) of {x : M*x^T = 0}, i.e. the right kernel written as rows.
template <class F>
Matrix<F> right_kernel(const Matrix<F>& m) {
  return left_kernel(m.transpose());
}

template <class F>
F determinant(Matrix<F> m) {
  if (m.rows() != m.cols()) fail(errc::invalid_argument, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  F det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c) == F(0)) ++piv;
    if (piv == n) return F(0);
    if (piv != c) {
      m.swap_rows(piv, c);
      det = -det;
    }
    det = det * m(c, c);
    const F inv = F(1) / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == F(0)) continue;
      const F f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) = m(i, j) - f * m(c, j);
    }
  }
  return det;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  if (m.rows() != m.cols()) fail(errc::invalid_argument, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  Matrix<F> aug(n, 2 * n, F(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = F(1);
  }
  auto e = row_echelon(std::move(aug));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  return e.rref.block(0, n, n, n);
}

template <class F>
Matrix<F> inverse_or_throw(const Matrix<F>& m) {
  auto inv = inverse(m);
  if (!inv) fail(errc::rank_deficient, "singular matrix");
  return *inv;
}

// Solve x*M = b; nullopt when inconsistent. Returns one solution.
template <class F>
std::optional<std::vector<F>> solve_left(const Matrix<F>& m, std::span<const F> b) {
  // Work with the transpose system M^T x^T = b^T.
  const std::size_t rows = m.cols(), cols = m.rows();
  Matrix<F> aug(rows, cols + 1, F(0));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug(i, j) = m(j, i);
    aug(i, cols) = b[i];
  }
  auto e = row_echelon(std::move(aug));
  std::vector<F> x(cols, F(0));
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == cols) return std::nullopt;
    x[e.pivots[i]] = e.rref(i, cols);
  }
  return x;
}

// Characteristic polynomial det(xI - A), coefficients from the leading 1 down
// to the constant term. Division-free (Berkowitz), so valid over any
// commutative ring; used here over fields of every characteristic.
template <class F>
std::vector<F> charpoly(const Matrix<F>& a) {
  if (a.rows() != a.cols()) fail(errc::invalid_argument, "charpoly of non-square matrix");
  const std::size_t n = a.rows();
  std::vector<F> vec{F(1)};
  for (std::size_t ii = n; ii-- > 0;) {
    const std::size_t m = n - 1 - ii;  // size of trailing block
    // Toeplitz first column: 1, -a_ii, -R C, -R A1 C, ..., -R A1^{m-1} C
    std::vector<F> t;
    t.reserve(m + 2);
    t.push_back(F(1));
    t.push_back(-a(ii, ii));
    std::vector<F> col(m);
    for (std::size_t k = 0; k < m; ++k) col[k] = a(ii + 1 + k, ii);
    for (std::size_t p = 0; p < m; ++p) {
      F s(0);
      for (std::size_t k = 0; k < m; ++k) s = s + a(ii, ii + 1 + k) * col[k];
      t.push_back(-s);
      if (p + 1 < m) {
        std::vector<F> next(m, F(0));
        for (std::size_t r = 0; r < m; ++r)
          for (std::size_t k = 0; k < m; ++k) next[r] = next[r] + a(ii + 1 + r, ii + 1 + k) * col[k];
        col = std::move(next);
      }
    }
    std::vector<F> out(m + 2, F(0));
    for (std::size_t j = 0; j < m + 2; ++j)
      for (std::size_t l = 0; l <= j && l < vec.size(); ++l) out[j] = out[j] + t[j - l] * vec[l];
    vec = std::move(out);
  }
  return vec;
}

template <class F>
F trace(const Matrix<F>& a) {
  F s(0);
  for (std::size_t i = 0; i < a.rows() && i < a.cols(); ++i) s = s + a(i, i);
  return s;
}

}  // namespace mord
