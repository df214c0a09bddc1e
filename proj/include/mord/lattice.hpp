#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mord/error.hpp"
#include "mord/frac.hpp"
#include "mord/linalg.hpp"
#include "mord/matrix.hpp"
#include "mord/normal_form.hpp"

namespace mord {

// Hermite normal form of a matrix given over K whose entries must lie in R.
template <ground_ring_element E>
HnfResult<E> hnf(const Matrix<Frac<E>>& m) {
  return hnf(to_ring(m), true);
}

template <ground_ring_element E>
SnfResult<E> snf(const Matrix<Frac<E>>& m) {
  return snf(to_ring(m));
}

// Finitely generated R-submodule of K^n, stored as the rows of its Hermite
// normal form (after clearing a common denominator). Two submodules are
// equal iff their stored bases are identical.
template <ground_ring_element E>
class Submodule {
 public:
  using K = Frac<E>;

  explicit Submodule(std::size_t ambient = 0) : basis_(0, ambient) {}

  static Submodule from_generators(const Matrix<K>& gens) {
    Submodule s(gens.cols());
    if (gens.rows() == 0) return s;
    auto [d, scaled] = clear_denominators(gens);
    auto res = hnf(std::move(scaled), false);
    const std::size_t k = res.rank();
    const K inv = K(ring_traits<E>::one(), d);
    s.basis_ = Matrix<K>(k, gens.cols());
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < gens.cols(); ++j) s.basis_(i, j) = K(res.h(i, j)) * inv;
    s.pivots_ = std::move(res.pivots);
    return s;
  }

  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t rank() const { return basis_.rows(); }
  bool is_zero() const { return rank() == 0; }
  const Matrix<K>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  // Coefficients of v in the basis when v lies in the K-span; the module
  // contains v iff they are all integral.
  std::optional<std::vector<K>> span_coordinates(std::span<const K> v) const {
    if (v.size() != ambient_dim()) fail(errc::invalid_argument, "vector length mismatch");
    std::vector<K> w(v.begin(), v.end());
    std::vector<K> c(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
      const std::size_t p = pivots_[i];
      if (w[p].is_zero()) continue;
      c[i] = w[p] / basis_(i, p);
      for (std::size_t j = p; j < w.size(); ++j) w[j] = w[j] - c[i] * basis_(i, j);
    }
    for (const auto& x : w)
      if (!x.is_zero()) return std::nullopt;
    return c;
  }

  std::optional<std::vector<E>> coordinates(std::span<const K> v) const {
    auto c = span_coordinates(v);
    if (!c) return std::nullopt;
    std::vector<E> out;
    out.reserve(c->size());
    for (const auto& x : *c) {
      if (!x.is_integral()) return std::nullopt;
      out.push_back(x.num());
    }
    return out;
  }

  bool contains(std::span<const K> v) const { return coordinates(v).has_value(); }

  bool contains(const Submodule& o) const {
    if (o.ambient_dim() != ambient_dim()) fail(errc::invalid_argument, "ambient dimension mismatch");
    for (std::size_t i = 0; i < o.rank(); ++i)
      if (!contains(o.basis_.row(i))) return false;
    return true;
  }

  friend Submodule operator+(const Submodule& a, const Submodule& b) {
    Matrix<K> g = a.basis_;
    g.append_rows(b.basis_);
    if (g.cols() == 0) return Submodule(a.ambient_dim());
    return from_generators(g);
  }

  Submodule scaled(const K& s) const {
    if (s.is_zero()) return Submodule(ambient_dim());
    return from_generators(basis_.scaled(s));
  }

  friend bool operator==(const Submodule& a, const Submodule& b) {
    return a.basis_ == b.basis_;
  }

 protected:
  Matrix<K> basis_;
  std::vector<std::size_t> pivots_;
};

// Full-rank R-lattice in K^n.
template <ground_ring_element E>
class Lattice : public Submodule<E> {
 public:
  using K = Frac<E>;
  using Submodule<E>::basis;
  using Submodule<E>::rank;
  using Submodule<E>::ambient_dim;

  Lattice() = default;
  explicit Lattice(Submodule<E> s) : Submodule<E>(std::move(s)) {
    if (rank() != ambient_dim())
      fail(errc::rank_deficient, "lattice has rank " + std::to_string(rank()) + " in dimension " +
                                     std::to_string(ambient_dim()));
  }
  static Lattice from_generators(const Matrix<K>& gens) {
    return Lattice(Submodule<E>::from_generators(gens));
  }
  static Lattice standard(std::size_t n) {
    return from_generators(Matrix<K>::identity(n));
  }

  // Determinant of the HNF basis (product of the diagonal).
  K det() const {
    K d(1);
    for (std::size_t i = 0; i < rank(); ++i) d = d * basis()(i, i);
    return d;
  }

  // Coordinates of v (any vector of K^n) in the lattice basis.
  std::vector<K> coordinates_in_basis(std::span<const K> v) const {
    return *this->span_coordinates(v);
  }

  // Basis matrix of another lattice expressed in this lattice's basis.
  Matrix<K> express(const Submodule<E>& other) const {
    Matrix<K> out(other.rank(), ambient_dim());
    for (std::size_t i = 0; i < other.rank(); ++i) {
      auto c = coordinates_in_basis(other.basis().row(i));
      for (std::size_t j = 0; j < c.size(); ++j) out(i, j) = c[j];
    }
    return out;
  }

  Lattice scaled(const K& s) const { return Lattice(Submodule<E>::scaled(s)); }
};

// Generalized index [sup : sub] = det(sub)/det(sup), unit-normal.
template <ground_ring_element E>
E lattice_index(const Lattice<E>& sub, const Lattice<E>& sup) {
  if (sub.ambient_dim() != sup.ambient_dim()) fail(errc::invalid_argument, "ambient dimension mismatch");
  if (!sup.contains(sub)) fail(errc::not_sublattice, "first lattice is not contained in the second");
  const Frac<E> r = sub.det() / sup.det();
  if (!r.is_integral()) fail(errc::internal_error, "index of a sublattice is not integral");
  return normalize(r.num());
}

// Smallest submodule of `ambient` containing l whose quotient is
// torsion-free: ambient intersected with the K-span of l.
template <ground_ring_element E>
Submodule<E> saturate(const Submodule<E>& l, const Submodule<E>& ambient) {
  using K = Frac<E>;
  const std::size_t n = ambient.ambient_dim();
  if (l.ambient_dim() != n) fail(errc::invalid_argument, "ambient dimension mismatch");
  if (l.is_zero()) return Submodule<E>(n);
  // Columns of perp span {y : l * y = 0}; x is in span(l) iff x * perp = 0.
  Matrix<K> perp = right_kernel(l.basis()).transpose();
  // l must lie in the K-span of ambient.
  auto amb_span = row_echelon(ambient.basis());
  for (std::size_t i = 0; i < l.rank(); ++i)
    if (!in_row_space(l.basis().row_vector(i), amb_span))
      fail(errc::not_sublattice, "submodule is not inside the ambient span");
  if (perp.cols() == 0) return ambient;
  auto [d, integral] = clear_denominators(ambient.basis() * perp);
  Matrix<E> coeffs = integral_left_kernel(integral);
  if (coeffs.rows() == 0) return Submodule<E>(n);
  return Submodule<E>::from_generators(to_field(coeffs) * ambient.basis());
}

template <ground_ring_element E>
Lattice<E> saturate(const Lattice<E>& l, const Lattice<E>& ambient) {
  return Lattice<E>(saturate(static_cast<const Submodule<E>&>(l), static_cast<const Submodule<E>&>(ambient)));
}

// The lattice {x in K^n : x * g in R^N} for g (n x N) of full row rank.
template <ground_ring_element E>
Lattice<E> integral_preimage(const Matrix<Frac<E>>& g) {
  using K = Frac<E>;
  const std::size_t n = g.rows();
  auto [d, g0] = clear_denominators(g);
  auto res = snf(std::move(g0));
  Matrix<K> gens(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= res.s.cols() || ring_traits<E>::is_zero(res.s(i, i)))
      fail(errc::rank_deficient, "preimage of a lattice under a non-injective map");
    const K scale(d, res.s(i, i));
    for (std::size_t j = 0; j < n; ++j) gens(i, j) = scale * K(res.u(i, j));
  }
  return Lattice<E>::from_generators(gens);
}

// {x in K^n : x * g in L} for a full-rank lattice L in K^N.
template <ground_ring_element E>
Lattice<E> preimage(const Matrix<Frac<E>>& g, const Lattice<E>& target) {
  return integral_preimage(g * inverse_or_throw(target.basis()));
}

// Elementary divisors of sup/sub for lattices sub <= sup: the non-unit
// diagonal entries of the Smith form of sub's basis in sup's coordinates.
template <ground_ring_element E>
std::vector<E> elementary_divisors(const Lattice<E>& sub, const Lattice<E>& sup) {
  if (!sup.contains(sub)) fail(errc::not_sublattice, "first lattice is not contained in the second");
  auto res = snf(to_ring(sup.express(sub)));
  std::vector<E> out;
  for (auto& d : res.diagonal())
    if (!ring_traits<E>::is_unit(d)) out.push_back(d);
  return out;
}

}  // namespace mord
