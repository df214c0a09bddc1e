#pragma once

#include <vector>

#include "mord/algebra.hpp"
#include "mord/integer.hpp"
#include "mord/linalg.hpp"

// Brute-force reference for maximal orders over Z. Shares only the field
// arithmetic with the engine: no Hermite forms, radicals or idealizers.
namespace mord::testing {

using Q = Frac<Integer>;

inline bool in_lattice(const Matrix<Q>& basis_inv, const std::vector<Q>& v) {
  for (const auto& c : vec_mul<Q>(v, basis_inv))
    if (!c.is_integral()) return false;
  return true;
}

inline bool is_ring(const Algebra<Integer>& alg, const Matrix<Q>& b) {
  const auto inv = *inverse(b);
  if (!in_lattice(inv, alg.one())) return false;
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j)
      if (!in_lattice(inv, alg.mul(b.row_vector(i), b.row_vector(j)))) return false;
  return true;
}

inline Integer gram_discriminant(const Algebra<Integer>& alg, const Matrix<Q>& b) {
  Matrix<Q> g(b.rows(), b.rows());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j) g(i, j) = alg.trace(alg.mul(b.row_vector(i), b.row_vector(j)));
  return determinant(g).num();
}

// Repeatedly adjoin (1/p) v for v in L \ pL whenever L + Z (v/p) is still a
// ring; stops when no index-p superorder exists for any p with p^2 | disc.
inline Matrix<Q> saturate_by_superlattices(const Algebra<Integer>& alg, Matrix<Q> b) {
  const std::size_t n = b.rows();
  for (;;) {
    const Integer d = abs(gram_discriminant(alg, b));
    bool grown = false;
    for (const auto& [p, e] : ring_traits<Integer>::factor(d)) {
      if (e < 2) continue;
      const unsigned long pp = p.get_ui();
      std::vector<unsigned long> v(n, 0);
      for (;;) {
        std::size_t k = 0;
        while (k < n && ++v[k] == pp) v[k++] = 0;
        if (k == n) break;
        std::size_t lead = n;
        for (std::size_t t = 0; t < n; ++t)
          if (v[t]) {
            lead = t;
            break;
          }
        if (v[lead] != 1) continue;
        Matrix<Q> c = b;
        for (std::size_t col = 0; col < n; ++col) {
          Q w(0);
          for (std::size_t t = 0; t < n; ++t) w += Q(static_cast<long long>(v[t])) * b(t, col);
          c(lead, col) = w / Q(Integer(p));
        }
        if (is_ring(alg, c)) {
          b = std::move(c);
          grown = true;
          break;
        }
      }
      if (grown) break;
    }
    if (!grown) return b;
  }
}

inline bool same_lattice(const Matrix<Q>& a, const Matrix<Q>& b) {
  const auto ai = *inverse(a), bi = *inverse(b);
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (!in_lattice(bi, a.row_vector(i)) || !in_lattice(ai, b.row_vector(i))) return false;
  return true;
}

}  // namespace mord::testing
