#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include "mord/constructions.hpp"
#include "mord/order.hpp"
#include "mord/serre.hpp"

// Small named orders and modules shared by the test suites.
namespace mord::testing {

using Z = Integer;
using Q = Frac<Integer>;
using F2t = Poly<Fp<2>>;
using K2 = Frac<F2t>;
using Elt = std::vector<Q>;

inline Q q(long n, long d = 1) { return Q(Z(n), Z(d)); }

inline Matrix<Q> rows(std::initializer_list<std::initializer_list<Q>> r) {
  std::vector<std::vector<Q>> v;
  for (auto& x : r) v.emplace_back(x);
  return Matrix<Q>::from_rows(v, v[0].size());
}

inline QPoly qpoly(std::initializer_list<long> low_first) {
  std::vector<Q> c;
  for (long x : low_first) c.emplace_back(x);
  return QPoly(c);
}

inline AlgebraPtr<Z> rationals() { return poly_quotient<Z>(qpoly({0, 1})); }
inline AlgebraPtr<Z> quadratic(long d) { return poly_quotient<Z>(qpoly({-d, 0, 1})); }

template <ground_ring_element E>
Order<E> standard(const AlgebraPtr<E>& a) {
  return Order<E>::from_basis(a, Matrix<Frac<E>>::identity(a->dim()));
}

inline Order<Z> lipschitz() { return standard(quaternion_algebra<Z>(Q(-1), Q(-1))); }

inline Order<Z> hurwitz() {
  auto h = quaternion_algebra<Z>(Q(-1), Q(-1));
  return Order<Z>::from_basis(h, rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {q(1, 2), q(1, 2), q(1, 2), q(1, 2)}}));
}

inline F2t tpoly(const char* s) { return ring_traits<F2t>::parse(s); }

// {1, t x} in F_2(t)[x]/(x^2 - t)
inline Order<F2t> insep_order() {
  std::vector<K2> c{K2(tpoly("t")), K2(0), K2(1)};
  auto alg = poly_quotient<F2t>(Poly<K2>(c));
  Matrix<K2> b(2, 2, K2(0));
  b(0, 0) = K2(1);
  b(1, 1) = K2(tpoly("t"));
  return Order<F2t>::from_basis(alg, b);
}

inline Order<Z> z_plus_5_mat2() {
  auto m2 = matrix_algebra<Z>(2);
  return Order<Z>::from_basis(m2, rows({{1, 0, 0, 1}, {0, 5, 0, 0}, {0, 0, 5, 0}, {0, 0, 0, 5}}));
}

template <class E>
bool lattice_in_powers(const Lattice<E>& l, const std::vector<Lattice<E>>& powers) {
  for (auto& p : powers)
    if (p == l) return true;
  return false;
}

inline bool squarefree(long d) {
  for (long k = 2; k * k <= (d < 0 ? -d : d); ++k)
    if (d % (k * k) == 0) return false;
  return true;
}

// E an elliptic curve without CM, A = E^2, O upper triangular in Mat_2(Z).
struct UpperTriangularExample {
  AlgebraPtr<Z> t2 = upper_triangular<Z>(2);
  Order<Z> o = standard(t2);
  serre::IsogenyType type{{{"E", 1, rationals(), 2}}};
  Matrix<Q> emb = rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
  Elt e11{1, 0, 0}, e12{0, 1, 0}, e22{0, 0, 1}, zero{0, 0, 0}, one{1, 0, 1};
  serre::ModulePresentation m1{o, 1, 1, {{e11}}};
  serre::ModulePresentation m2{o, 1, 1, {{e22}}};
  serre::ModulePresentation m3{o, 2, 1, {{e12}, {e22}}};

  // T(E^2) = Z^2 (x) T(E): index 2*i + u, Mat_2 acting on the first factor
  serre::PeriodLattice tate() const {
    serre::PeriodLattice t;
    t.basis = Matrix<Q>::identity(4);
    for (auto [a, b] : {std::pair{0, 0}, {0, 1}, {1, 1}}) {
      Matrix<Q> m(4, 4, Q(0));
      for (int u = 0; u < 2; ++u) m(2 * b + u, 2 * a + u) = Q(1);
      t.action.push_back(m);
    }
    return t;
  }
};

// O acting on itself by left multiplication.
inline serre::PeriodLattice regular_lattice(const Order<Z>& o) {
  serre::PeriodLattice t;
  t.basis = o.basis();
  for (std::size_t k = 0; k < o.dim(); ++k) t.action.push_back(o.algebra()->left_mult(o.basis().row_vector(k)));
  return t;
}

inline Elt random_element(const Order<Z>& o, std::mt19937_64& rng, int range = 2) {
  std::uniform_int_distribution<int> d(-range, range);
  Elt x(o.algebra()->dim(), Q(0));
  for (std::size_t k = 0; k < o.dim(); ++k) {
    const Q c(d(rng));
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += c * o.basis()(k, j);
  }
  return x;
}

inline serre::ModulePresentation random_presentation(const Order<Z>& o, std::mt19937_64& rng, std::size_t r, std::size_t s) {
  serre::ModulePresentation m{o, r, s, {}};
  for (std::size_t i = 0; i < r; ++i) {
    m.alpha.emplace_back();
    for (std::size_t j = 0; j < s; ++j) m.alpha.back().push_back(random_element(o, rng));
  }
  return m;
}

inline serre::ModuleMap identity_map(const Order<Z>& o, std::size_t s) {
  serre::ModuleMap phi(s, std::vector<Elt>(s, Elt(o.algebra()->dim(), Q(0))));
  for (std::size_t i = 0; i < s; ++i) phi[i][i] = o.algebra()->one();
  return phi;
}

}  // namespace mord::testing
