#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "mord/algebra.hpp"
#include "mord/error.hpp"
#include "mord/poly.hpp"

namespace mord {

namespace detail {

template <ground_ring_element E>
using MulTable = std::vector<std::vector<std::vector<Frac<E>>>>;

template <ground_ring_element E>
MulTable<E> empty_table(std::size_t n) {
  return MulTable<E>(n, std::vector<std::vector<Frac<E>>>(n, std::vector<Frac<E>>(n, Frac<E>(0))));
}

inline std::string unit_name(std::size_t i, std::size_t j, std::size_t n) {
  if (n <= 9) return "e" + std::to_string(i + 1) + std::to_string(j + 1);
  return "e" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

}  // namespace detail

// Mat_n(K) with the matrix units e_ij, index i*n + j.
template <ground_ring_element E>
AlgebraPtr<E> matrix_algebra(std::size_t n) {
  using K = Frac<E>;
  if (n == 0) fail(errc::invalid_argument, "matrix algebra of size 0");
  const std::size_t d = n * n;
  auto mul = detail::empty_table<E>(d);
  std::vector<std::string> names;
  std::vector<K> one(d, K(0));
  for (std::size_t i = 0; i < n; ++i) {
    one[i * n + i] = K(1);
    for (std::size_t j = 0; j < n; ++j) {
      names.push_back(detail::unit_name(i, j, n));
      for (std::size_t l = 0; l < n; ++l) mul[i * n + j][j * n + l][i * n + l] = K(1);
    }
  }
  return std::make_shared<const Algebra<E>>(names, mul, one, false);
}

// Upper-triangular matrices in Mat_n(K), basis e_ij (i <= j) row by row.
template <ground_ring_element E>
AlgebraPtr<E> upper_triangular(std::size_t n) {
  using K = Frac<E>;
  if (n == 0) fail(errc::invalid_argument, "matrix algebra of size 0");
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      idx.emplace_back(i, j);
      names.push_back(detail::unit_name(i, j, n));
    }
  auto pos = [&](std::size_t i, std::size_t j) {
    for (std::size_t a = 0; a < idx.size(); ++a)
      if (idx[a].first == i && idx[a].second == j) return a;
    return idx.size();
  };
  const std::size_t d = idx.size();
  auto mul = detail::empty_table<E>(d);
  std::vector<K> one(d, K(0));
  for (std::size_t a = 0; a < d; ++a) {
    if (idx[a].first == idx[a].second) one[a] = K(1);
    for (std::size_t b = 0; b < d; ++b)
      if (idx[a].second == idx[b].first) mul[a][b][pos(idx[a].first, idx[b].second)] = K(1);
  }
  return std::make_shared<const Algebra<E>>(names, mul, one, false);
}

// Quaternion algebra (a, b | K): i^2 = a, j^2 = b, ij = -ji = k.
template <ground_ring_element E>
AlgebraPtr<E> quaternion_algebra(const Frac<E>& a, const Frac<E>& b) {
  using K = Frac<E>;
  if (a.is_zero() || b.is_zero()) fail(errc::invalid_argument, "quaternion parameters must be nonzero");
  auto mul = detail::empty_table<E>(4);
  auto set = [&](std::size_t x, std::size_t y, std::size_t z, K c) { mul[x][y][z] = c; };
  for (std::size_t x = 0; x < 4; ++x) {
    set(0, x, x, K(1));
    set(x, 0, x, K(1));
  }
  set(1, 1, 0, a);
  set(2, 2, 0, b);
  set(3, 3, 0, -(a * b));
  set(1, 2, 3, K(1));
  set(2, 1, 3, K(-1));
  set(1, 3, 2, a);
  set(3, 1, 2, -a);
  set(2, 3, 1, -b);
  set(3, 2, 1, b);
  return std::make_shared<const Algebra<E>>(std::vector<std::string>{"1", "i", "j", "k"}, mul,
                                           std::vector<K>{K(1), K(0), K(0), K(0)}, true);
}

// K[x]/(f) with basis 1, x, ..., x^{d-1}.
template <ground_ring_element E>
AlgebraPtr<E> poly_quotient(const Poly<Frac<E>>& modulus) {
  using K = Frac<E>;
  if (modulus.degree() < 1) fail(errc::invalid_argument, "modulus must have positive degree");
  const Poly<K> f = modulus.monic();
  const std::size_t d = static_cast<std::size_t>(f.degree());
  auto mul = detail::empty_table<E>(d);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < d; ++i) names.push_back(i == 0 ? "1" : i == 1 ? "x" : "x^" + std::to_string(i));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Poly<K> r = Poly<K>::monomial(K(1), i + j) % f;
      for (std::size_t k = 0; k < d; ++k) mul[i][j][k] = r.coeff(k);
    }
  std::vector<K> one(d, K(0));
  one[0] = K(1);
  return std::make_shared<const Algebra<E>>(names, mul, one, false);
}

// Direct product; factor t occupies a contiguous block of coordinates.
template <ground_ring_element E>
AlgebraPtr<E> product_algebra(const std::vector<AlgebraPtr<E>>& algs) {
  using K = Frac<E>;
  if (algs.empty()) fail(errc::invalid_argument, "empty product");
  if (algs.size() == 1) return algs[0];
  std::size_t d = 0;
  for (const auto& a : algs) d += a->dim();
  auto mul = detail::empty_table<E>(d);
  std::vector<std::string> names;
  std::vector<K> one(d, K(0));
  std::size_t off = 0;
  for (std::size_t t = 0; t < algs.size(); ++t) {
    const auto& a = *algs[t];
    for (std::size_t i = 0; i < a.dim(); ++i) {
      names.push_back(a.basis_names()[i] + "_" + std::to_string(t + 1));
      one[off + i] = a.one()[i];
      for (std::size_t j = 0; j < a.dim(); ++j)
        for (const auto& term : a.terms(i, j)) mul[off + i][off + j][off + term.k] = term.c;
    }
    off += a.dim();
  }
  return std::make_shared<const Algebra<E>>(names, mul, one, false);
}

// Mat_n(D): basis e_ij (x) d_k at index (i*n + j)*dim D + k.
template <ground_ring_element E>
AlgebraPtr<E> matrix_over(const AlgebraPtr<E>& D, std::size_t n) {
  using K = Frac<E>;
  if (n == 1) return D;
  const std::size_t m = D->dim(), d = n * n * m;
  auto mul = detail::empty_table<E>(d);
  std::vector<std::string> names;
  std::vector<K> one(d, K(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        names.push_back(detail::unit_name(i, j, n) + "*" + D->basis_names()[k]);
        if (i == j) one[(i * n + j) * m + k] = D->one()[k];
        for (std::size_t l = 0; l < n; ++l)
          for (std::size_t k2 = 0; k2 < m; ++k2)
            for (const auto& term : D->terms(k, k2))
              mul[(i * n + j) * m + k][(j * n + l) * m + k2][(i * n + l) * m + term.k] = term.c;
      }
  return std::make_shared<const Algebra<E>>(names, mul, one, false);
}

}  // namespace mord
