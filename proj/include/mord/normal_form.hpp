#pragma once

#include <cstddef>
#include <vector>

#include "mord/error.hpp"
#include "mord/frac.hpp"
#include "mord/matrix.hpp"
#include "mord/ring.hpp"

namespace mord {

// Hermite and Smith normal forms over the ground ring R. Entries never
// leave R: every elimination step is a 2x2 unimodular transform built from
// an extended gcd, so no fractions appear.

template <class E>
struct HnfResult {
  Matrix<E> h;                       // same shape as input, zero rows last
  Matrix<E> u;                       // unimodular, h = u * m
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

template <class E>
struct SnfResult {
  Matrix<E> s;   // diagonal, s = u * m * v
  Matrix<E> u;
  Matrix<E> v;
  std::vector<E> diagonal() const {
    std::vector<E> d;
    for (std::size_t i = 0; i < s.rows() && i < s.cols(); ++i) d.push_back(s(i, i));
    return d;
  }
};

namespace detail {

// rows a, b  <-  [[s, t], [-b/g, a/g]] * [a; b] acting on whole rows.
template <class E>
void row_combine(Matrix<E>& m, std::size_t ra, std::size_t rb, const E& s, const E& t, const E& x,
                 const E& y) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    E a = m(ra, j), b = m(rb, j);
    m(ra, j) = s * a + t * b;
    m(rb, j) = x * a + y * b;
  }
}

template <class E>
void col_combine(Matrix<E>& m, std::size_t ca, std::size_t cb, const E& s, const E& t, const E& x,
                 const E& y) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    E a = m(i, ca), b = m(i, cb);
    m(i, ca) = s * a + t * b;
    m(i, cb) = x * a + y * b;
  }
}

template <class E>
void row_addmul(Matrix<E>& m, std::size_t dst, std::size_t src, const E& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) = m(dst, j) - q * m(src, j);
}

template <class E>
void row_scale(Matrix<E>& m, std::size_t r, const E& s) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = m(r, j) * s;
}

}  // namespace detail

template <ground_ring_element E>
HnfResult<E> hnf(Matrix<E> m, bool track_transform = true) {
  using T = ring_traits<E>;
  const std::size_t rows = m.rows(), cols = m.cols();
  Matrix<E> u = track_transform ? Matrix<E>::identity(rows) : Matrix<E>();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t k = r;
    while (k < rows && T::is_zero(m(k, c))) ++k;
    if (k == rows) continue;
    m.swap_rows(k, r);
    if (track_transform) u.swap_rows(k, r);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (T::is_zero(m(i, c))) continue;
      const E a = m(r, c), b = m(i, c);
      E s, t;
      const E g = xgcd(a, b, s, t);
      const E ag = exact_div(a, g), bg = exact_div(b, g);
      detail::row_combine(m, r, i, s, t, E(-bg), ag);
      if (track_transform) detail::row_combine(u, r, i, s, t, E(-bg), ag);
    }
    const E unit = T::unit_part(m(r, c));
    if (!(unit == T::one())) {
      const E inv = T::unit_inverse(unit);
      detail::row_scale(m, r, inv);
      if (track_transform) detail::row_scale(u, r, inv);
    }
    for (std::size_t i = 0; i < r; ++i) {
      E q, rem;
      T::divmod(m(i, c), m(r, c), q, rem);
      if (T::is_zero(q)) continue;
      detail::row_addmul(m, i, r, q);
      if (track_transform) detail::row_addmul(u, i, r, q);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(u), std::move(pivots)};
}

template <ground_ring_element E>
SnfResult<E> snf(Matrix<E> m) {
  using T = ring_traits<E>;
  const std::size_t rows = m.rows(), cols = m.cols();
  Matrix<E> u = Matrix<E>::identity(rows), v = Matrix<E>::identity(cols);
  const std::size_t dmax = rows < cols ? rows : cols;
  for (std::size_t t = 0; t < dmax; ++t) {
    // Smallest nonzero entry of the trailing block as pivot.
    bool found = false;
    std::size_t pi = t, pj = t;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (T::is_zero(m(i, j))) continue;
        if (!found || T::size_less(m(i, j), m(pi, pj))) {
          pi = i;
          pj = j;
          found = true;
        }
      }
    if (!found) break;
    m.swap_rows(pi, t);
    u.swap_rows(pi, t);
    m.swap_cols(pj, t);
    v.swap_cols(pj, t);
    for (;;) {
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (T::is_zero(m(i, t))) continue;
        const E a = m(t, t), b = m(i, t);
        if (divides(a, b)) {
          const E q = exact_div(b, a);
          detail::row_addmul(m, i, t, q);
          detail::row_addmul(u, i, t, q);
          continue;
        }
        E s, w;
        const E g = xgcd(a, b, s, w);
        const E ag = exact_div(a, g), bg = exact_div(b, g);
        detail::row_combine(m, t, i, s, w, E(-bg), ag);
        detail::row_combine(u, t, i, s, w, E(-bg), ag);
      }
      bool row_dirty = false;
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (T::is_zero(m(t, j))) continue;
        const E a = m(t, t), b = m(t, j);
        if (divides(a, b)) {
          const E q = exact_div(b, a);
          for (std::size_t i = 0; i < rows; ++i) m(i, j) = m(i, j) - q * m(i, t);
          for (std::size_t i = 0; i < cols; ++i) v(i, j) = v(i, j) - q * v(i, t);
          continue;
        }
        row_dirty = true;
        E s, w;
        const E g = xgcd(a, b, s, w);
        const E ag = exact_div(a, g), bg = exact_div(b, g);
        detail::col_combine(m, t, j, s, w, E(-bg), ag);
        detail::col_combine(v, t, j, s, w, E(-bg), ag);
      }
      bool col_dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i)
        if (!T::is_zero(m(i, t))) col_dirty = true;
      if (row_dirty && col_dirty) continue;
      if (col_dirty) continue;
      // Divisibility: fold any offending row into the pivot row.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!divides(m(t, t), m(i, j))) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      for (std::size_t j = 0; j < cols; ++j) m(t, j) = m(t, j) + m(bad, j);
      for (std::size_t j = 0; j < rows; ++j) u(t, j) = u(t, j) + u(bad, j);
    }
    const E unit = T::unit_part(m(t, t));
    if (!(unit == T::one())) {
      const E inv = T::unit_inverse(unit);
      detail::row_scale(m, t, inv);
      detail::row_scale(u, t, inv);
    }
  }
  return {std::move(m), std::move(u), std::move(v)};
}

// Basis (rows, in HNF) of {x in R^rows : x*M = 0}.
template <ground_ring_element E>
Matrix<E> integral_left_kernel(const Matrix<E>& m) {
  auto res = hnf(m, true);
  const std::size_t k = m.rows() - res.rank();
  if (k == 0) return Matrix<E>(0, m.rows());
  Matrix<E> ker = res.u.block(res.rank(), 0, k, m.rows());
  auto h = hnf(ker, false);
  return h.h.block(0, 0, h.rank(), m.rows());
}

// Scale a matrix over K to one over R: returns (d, d*m) with d the
// unit-normal least common denominator.
template <ground_ring_element E>
std::pair<E, Matrix<E>> clear_denominators(const Matrix<Frac<E>>& m) {
  E d = ring_traits<E>::one();
  for (const auto& x : m.data()) d = mord::lcm(d, x.den());
  Matrix<E> out(m.rows(), m.cols(), ring_traits<E>::zero());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& x = m(i, j);
      out(i, j) = x.num() * exact_div(d, x.den());
    }
  return {d, std::move(out)};
}

template <ground_ring_element E>
Matrix<Frac<E>> to_field(const Matrix<E>& m) {
  Matrix<Frac<E>> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Frac<E>(m(i, j));
  return out;
}

template <ground_ring_element E>
bool is_integral(const Matrix<Frac<E>>& m) {
  for (const auto& x : m.data())
    if (!x.is_integral()) return false;
  return true;
}

// Entries of an integral matrix over K as ring elements.
template <ground_ring_element E>
Matrix<E> to_ring(const Matrix<Frac<E>>& m) {
  Matrix<E> out(m.rows(), m.cols(), ring_traits<E>::zero());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_integral())
        fail(errc::input_not_integral, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                           ") = " + m(i, j).str() + " is not in the ground ring");
      out(i, j) = m(i, j).num();
    }
  return out;
}

}  // namespace mord
