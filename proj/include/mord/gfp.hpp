#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "mord/error.hpp"

namespace mord::gfp {

// Arithmetic modulo a runtime modulus m < 2^63 (usually a prime p; the
// iterated-trace radical also works modulo p^k).
struct Mod {
  std::uint64_t m;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= m ? s - m : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + m - b; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
  }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : m - a; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t acc = 1 % m;
    while (e) {
      if (e & 1u) acc = mul(acc, a);
      a = mul(a, a);
      e >>= 1u;
    }
    return acc;
  }
  // Inverse modulo a prime.
  std::uint64_t inv(std::uint64_t a) const {
    if (a == 0) fail(errc::internal_error, "inverse of zero modulo p");
    return pow(a, m - 2);
  }
};

using Vec = std::vector<std::uint64_t>;

// Dense row-major matrix over Z/m.
struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<std::uint64_t> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
  std::uint64_t& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  std::uint64_t operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  Vec row(std::size_t i) const { return Vec(a.begin() + static_cast<long>(i * cols), a.begin() + static_cast<long>((i + 1) * cols)); }
  void append_row(const Vec& v) {
    if (rows == 0 && cols == 0) cols = v.size();
    a.insert(a.end(), v.begin(), v.end());
    ++rows;
  }
  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
};

inline Mat mul(const Mod& f, const Mat& x, const Mat& y) {
  Mat z(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const std::uint64_t v = x(i, k);
      if (v == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) z(i, j) = f.add(z(i, j), f.mul(v, y(k, j)));
    }
  return z;
}

inline Mat power(const Mod& f, Mat b, std::uint64_t e) {
  Mat acc = Mat::identity(b.rows);
  for (std::size_t i = 0; i < acc.a.size(); ++i) acc.a[i] %= f.m;
  while (e) {
    if (e & 1u) acc = mul(f, acc, b);
    e >>= 1u;
    if (e) b = mul(f, b, b);
  }
  return acc;
}

inline Vec vec_mul(const Mod& f, const Vec& v, const Mat& m) {
  Vec out(m.cols, 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols; ++j) out[j] = f.add(out[j], f.mul(v[i], m(i, j)));
  }
  return out;
}

// Reduced row echelon form over the prime field, zero rows dropped.
struct Echelon {
  Mat rref;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

inline Echelon echelon(const Mod& f, Mat m) {
  std::size_t r = 0;
  std::vector<std::size_t> piv;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t k = r;
    while (k < m.rows && m(k, c) == 0) ++k;
    if (k == m.rows) continue;
    if (k != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(k, j), m(r, j));
    const std::uint64_t inv = f.inv(m(r, c));
    for (std::size_t j = 0; j < m.cols; ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const std::uint64_t g = m(i, c);
      for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = f.sub(m(i, j), f.mul(g, m(r, j)));
    }
    piv.push_back(c);
    ++r;
  }
  Mat out(r, m.cols);
  std::copy(m.a.begin(), m.a.begin() + static_cast<long>(r * m.cols), out.a.begin());
  return {std::move(out), std::move(piv)};
}

inline Vec reduce(const Mod& f, Vec v, const Echelon& e) {
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    const std::uint64_t c = v[e.pivots[i]];
    if (c == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f.sub(v[j], f.mul(c, e.rref(i, j)));
  }
  return v;
}

inline bool is_zero(const Vec& v) {
  for (auto x : v)
    if (x) return false;
  return true;
}

// Basis (rows, RREF) of {x : x*M = 0}.
inline Mat left_kernel(const Mod& f, const Mat& m) {
  Mat aug(m.rows, m.cols + m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
    aug(i, m.cols + i) = 1;
  }
  // Echelon on the whole augmented matrix; kernel rows are those whose
  // left block vanished.
  auto e = echelon(f, aug);
  Mat ker(0, m.rows);
  for (std::size_t i = 0; i < e.rref.rows; ++i) {
    if (e.pivots[i] < m.cols) continue;
    Vec v(m.rows);
    for (std::size_t j = 0; j < m.rows; ++j) v[j] = e.rref(i, m.cols + j);
    ker.append_row(v);
  }
  if (ker.rows == 0) return Mat(0, m.rows);
  return echelon(f, ker).rref;
}

// Span of the rows of a and b.
inline Echelon sum(const Mod& f, const Mat& a, const Mat& b) {
  Mat m = a;
  if (m.rows == 0) m.cols = b.cols;
  for (std::size_t i = 0; i < b.rows; ++i) m.append_row(b.row(i));
  return echelon(f, m);
}

}  // namespace mord::gfp
