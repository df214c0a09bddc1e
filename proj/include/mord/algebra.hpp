#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mord/error.hpp"
#include "mord/frac.hpp"
#include "mord/linalg.hpp"
#include "mord/matrix.hpp"
#include "mord/poly.hpp"
#include "mord/qfactor.hpp"
#include "mord/ring.hpp"

namespace mord {

// Finite-dimensional algebra over K = Frac(R) given by structure constants
// b_i * b_j = sum_k c[i][j][k] b_k. Products are stored sparsely.
template <ground_ring_element E>
class Algebra {
 public:
  using K = Frac<E>;
  using Vec = std::vector<K>;
  struct Term {
    std::size_t k;
    K c;
  };

  // mul[i][j] holds the coordinates of b_i * b_j.
  Algebra(std::vector<std::string> names, const std::vector<std::vector<Vec>>& mul, Vec one,
          bool check_axioms = true)
      : names_(std::move(names)), one_(std::move(one)) {
    const std::size_t n = names_.size();
    if (n == 0) fail(errc::not_an_algebra, "algebra of dimension 0");
    if (mul.size() != n || one_.size() != n)
      fail(errc::not_an_algebra, "structure constant table does not match the dimension");
    terms_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (mul[i].size() != n) fail(errc::not_an_algebra, "structure constant table does not match the dimension");
      for (std::size_t j = 0; j < n; ++j) {
        if (mul[i][j].size() != n)
          fail(errc::not_an_algebra, "structure constant table does not match the dimension");
        for (std::size_t k = 0; k < n; ++k)
          if (!mul[i][j][k].is_zero()) terms_[i * n + j].push_back({k, mul[i][j][k]});
      }
    }
    traces_.assign(n, K(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& t : terms_[i * n + j])
          if (t.k == j) traces_[i] += t.c;
    if (check_axioms) check();
  }

  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& basis_names() const { return names_; }
  const Vec& one() const { return one_; }
  const std::vector<Term>& terms(std::size_t i, std::size_t j) const { return terms_[i * dim() + j]; }

  Vec zero() const { return Vec(dim(), K(0)); }
  Vec basis_vector(std::size_t i) const {
    Vec v = zero();
    v[i] = K(1);
    return v;
  }
  Vec basis_product(std::size_t i, std::size_t j) const {
    Vec v = zero();
    for (const auto& t : terms(i, j)) v[t.k] = t.c;
    return v;
  }

  Vec mul(const Vec& a, const Vec& b) const {
    const std::size_t n = dim();
    Vec out = zero();
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b[j].is_zero()) continue;
        const K ab = a[i] * b[j];
        for (const auto& t : terms(i, j)) out[t.k] += ab * t.c;
      }
    }
    return out;
  }

  // Trace of left multiplication by a.
  K trace(const Vec& a) const {
    K s(0);
    for (std::size_t i = 0; i < dim(); ++i)
      if (!a[i].is_zero()) s += a[i] * traces_[i];
    return s;
  }

  // Matrix of x -> a*x acting on column vectors: L_{ab} = L_a L_b.
  Matrix<K> regular_matrix(const Vec& a) const { return left_mult(a).transpose(); }

  // Row convention: (coords of x) * right_mult(b) = coords of x*b.
  Matrix<K> right_mult(const Vec& b) const {
    const std::size_t n = dim();
    Matrix<K> m(n, n, K(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (b[j].is_zero()) continue;
        for (const auto& t : terms(i, j)) m(i, t.k) += b[j] * t.c;
      }
    return m;
  }

  // Row convention: (coords of x) * left_mult(b) = coords of b*x.
  Matrix<K> left_mult(const Vec& b) const {
    const std::size_t n = dim();
    Matrix<K> m(n, n, K(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (b[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& t : terms(i, j)) m(j, t.k) += b[i] * t.c;
    }
    return m;
  }

  bool is_commutative() const {
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = i + 1; j < dim(); ++j)
        if (!(basis_product(i, j) == basis_product(j, i))) return false;
    return true;
  }

  friend bool operator==(const Algebra& a, const Algebra& b) {
    if (a.dim() != b.dim() || !(a.one_ == b.one_)) return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j)
        if (!(a.basis_product(i, j) == b.basis_product(i, j))) return false;
    return true;
  }

 private:
  void check() const {
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec b = basis_vector(i);
      if (!(mul(one_, b) == b) || !(mul(b, one_) == b))
        fail(errc::not_an_algebra, "unit is not a two-sided identity on basis element " + names_[i]);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Vec ij = basis_product(i, j);
        for (std::size_t k = 0; k < n; ++k) {
          if (!(mul(ij, basis_vector(k)) == mul(basis_vector(i), basis_product(j, k))))
            fail(errc::not_an_algebra, "structure constants are not associative at (" + names_[i] + "," +
                                           names_[j] + "," + names_[k] + ")");
        }
      }
  }

  std::vector<std::string> names_;
  Vec one_;
  std::vector<std::vector<Term>> terms_;
  Vec traces_;
};

template <ground_ring_element E>
using AlgebraPtr = std::shared_ptr<const Algebra<E>>;

template <ground_ring_element E>
struct Element {
  AlgebraPtr<E> alg;
  std::vector<Frac<E>> coords;
};

template <ground_ring_element E>
void require_same_algebra(const AlgebraPtr<E>& a, const AlgebraPtr<E>& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b)) fail(errc::algebra_mismatch, "elements belong to different algebras");
}

template <ground_ring_element E>
Element<E> multiply(const Element<E>& a, const Element<E>& b) {
  require_same_algebra(a.alg, b.alg);
  return {a.alg, a.alg->mul(a.coords, b.coords)};
}

template <ground_ring_element E>
Matrix<Frac<E>> regular_representation(const Element<E>& a) {
  return a.alg->regular_matrix(a.coords);
}

// Basis (rows) of the center {x : x b_j = b_j x for all j}, in RREF.
template <ground_ring_element E>
Matrix<Frac<E>> center_basis(const Algebra<E>& alg) {
  using K = Frac<E>;
  const std::size_t n = alg.dim();
  Matrix<K> sys(n, n * n, K(0));
  for (std::size_t j = 0; j < n; ++j) {
    const auto b = alg.basis_vector(j);
    Matrix<K> d = alg.right_mult(b) - alg.left_mult(b);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) sys(r, j * n + c) = d(r, c);
  }
  return left_kernel(sys);
}

template <ground_ring_element E>
std::vector<Element<E>> center(const AlgebraPtr<E>& alg) {
  auto z = center_basis(*alg);
  std::vector<Element<E>> out;
  for (std::size_t i = 0; i < z.rows(); ++i) out.push_back({alg, z.row_vector(i)});
  return out;
}

// Gram matrix of the trace form (x, y) -> Tr(L_{xy}) on the basis.
template <ground_ring_element E>
Matrix<Frac<E>> trace_form(const Algebra<E>& alg) {
  const std::size_t n = alg.dim();
  Matrix<Frac<E>> g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = alg.trace(alg.basis_product(i, j));
  return g;
}

template <ground_ring_element E>
bool is_separable_semisimple(const Algebra<E>& alg) {
  return !determinant(trace_form(alg)).is_zero();
}

// Minimal polynomial of a over K, from the first linear dependency among
// 1, a, a^2, ...
template <ground_ring_element E>
Poly<Frac<E>> minimal_polynomial(const Algebra<E>& alg, const std::vector<Frac<E>>& a) {
  using K = Frac<E>;
  const std::size_t n = alg.dim();
  Matrix<K> powers(0, n);
  std::vector<K> p = alg.one();
  for (std::size_t d = 0; d <= n; ++d) {
    Matrix<K> trial = powers;
    trial.append_row(p);
    if (rank(trial) == d) {
      auto c = solve_left(powers, std::span<const K>(p));
      std::vector<K> coeffs(d + 1, K(0));
      for (std::size_t i = 0; i < d; ++i) coeffs[i] = -(*c)[i];
      coeffs[d] = K(1);
      return Poly<K>(std::move(coeffs));
    }
    powers = std::move(trial);
    p = alg.mul(p, a);
  }
  fail(errc::internal_error, "no linear dependency among powers");
}

template <ground_ring_element E>
std::vector<Frac<E>> evaluate(const Algebra<E>& alg, const Poly<Frac<E>>& f, const std::vector<Frac<E>>& a) {
  using K = Frac<E>;
  std::vector<K> acc = alg.zero();
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    acc = alg.mul(acc, a);
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += f.coeffs()[i] * alg.one()[k];
  }
  return acc;
}

// Check that idems are nonzero, central, orthogonal idempotents summing to 1.
template <ground_ring_element E>
void verify_idempotents(const Algebra<E>& alg, const std::vector<std::vector<Frac<E>>>& idems) {
  using K = Frac<E>;
  if (idems.empty()) fail(errc::bad_idempotents, "empty idempotent system");
  std::vector<K> sum = alg.zero();
  for (std::size_t a = 0; a < idems.size(); ++a) {
    const auto& e = idems[a];
    if (e.size() != alg.dim()) fail(errc::bad_idempotents, "idempotent has the wrong length");
    bool nonzero = false;
    for (const auto& x : e) nonzero = nonzero || !x.is_zero();
    if (!nonzero) fail(errc::bad_idempotents, "idempotent " + std::to_string(a) + " is zero");
    for (std::size_t j = 0; j < alg.dim(); ++j) {
      const auto b = alg.basis_vector(j);
      if (!(alg.mul(e, b) == alg.mul(b, e)))
        fail(errc::bad_idempotents, "idempotent " + std::to_string(a) + " is not central");
    }
    for (std::size_t b = 0; b < idems.size(); ++b) {
      const auto p = alg.mul(e, idems[b]);
      const auto expect = a == b ? e : alg.zero();
      if (!(p == expect))
        fail(errc::bad_idempotents, a == b ? "element " + std::to_string(a) + " is not idempotent"
                                           : "idempotents " + std::to_string(a) + " and " + std::to_string(b) +
                                                 " are not orthogonal");
    }
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += e[k];
  }
  if (!(sum == alg.one())) fail(errc::bad_idempotents, "idempotents do not sum to 1");
}

// Complete set of primitive central idempotents. Over Q: the minimal
// polynomial of a random central element of full degree splits the center
// by CRT. Over F_p(t) only the simple-center case is decided here.
template <ground_ring_element E>
std::vector<std::vector<Frac<E>>> central_idempotents(const Algebra<E>& alg, std::uint64_t seed = 42) {
  using K = Frac<E>;
  const Matrix<K> z = center_basis(alg);
  const std::size_t m = z.rows();
  if (m == 1) return {alg.one()};
  if constexpr (ring_traits<E>::characteristic != 0) {
    fail(errc::needs_supplied_idempotents,
         "center has dimension " + std::to_string(m) + " over " + ring_traits<E>::name() +
             "; supply central idempotents");
  } else {
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 400; ++attempt) {
      // {-2..2} first; widen if the center has many factors.
      const long range = 2 + attempt / 20;
      std::uniform_int_distribution<long> dist(-range, range);
      std::vector<K> x = alg.zero();
      for (std::size_t i = 0; i < m; ++i) {
        const K r(static_cast<long long>(dist(rng)));
        for (std::size_t k = 0; k < x.size(); ++k) x[k] += r * z(i, k);
      }
      const QPoly mu = minimal_polynomial(alg, x);
      if (static_cast<std::size_t>(mu.degree()) < m) continue;
      if (QPoly::gcd(mu, mu.derivative()).degree() > 0)
        fail(errc::not_semisimple, "center is not reduced (minimal polynomial has a repeated factor)");
      std::vector<std::vector<K>> idems;
      for (const auto& g : factor_squarefree_rational(mu)) {
        const QPoly co = mu / g;
        QPoly s, t;
        QPoly::xgcd(co, g, s, t);
        idems.push_back(evaluate(alg, (co * s) % mu, x));
      }
      verify_idempotents(alg, idems);
      return idems;
    }
    fail(errc::not_semisimple, "no central element with separable minimal polynomial of full degree");
  }
}

// Peirce blocks A e_i as algebras with unit e_i.
template <ground_ring_element E>
struct Decomposition {
  using K = Frac<E>;
  std::vector<std::vector<K>> idempotents;
  std::vector<AlgebraPtr<E>> factors;
  std::vector<Matrix<K>> embeddings;  // rows: factor basis in parent coordinates (RREF)
  std::vector<std::vector<std::size_t>> pivots;

  // Coordinates of x*e_i in factor i.
  std::vector<K> project(std::size_t i, const std::vector<K>& x, const Algebra<E>& parent) const {
    const auto y = parent.mul(x, idempotents[i]);
    std::vector<K> out;
    for (auto p : pivots[i]) out.push_back(y[p]);
    return out;
  }
  std::vector<K> embed(std::size_t i, const std::vector<K>& y) const {
    return vec_mul<K>(y, embeddings[i]);
  }
};

template <ground_ring_element E>
struct Subalgebra {
  AlgebraPtr<E> alg;
  Matrix<Frac<E>> basis;  // rows, in parent coordinates
};

// The subalgebra spanned by the given rows, which must be independent,
// closed under multiplication and contain 1 (or the given unit, for Peirce
// blocks).
template <ground_ring_element E>
Subalgebra<E> subalgebra(const Algebra<E>& parent, const Matrix<Frac<E>>& rows,
                         std::vector<std::string> names = {}, const std::vector<Frac<E>>* unit = nullptr) {
  using K = Frac<E>;
  const std::size_t d = rows.rows();
  if (rank(rows) != d) fail(errc::invalid_argument, "subalgebra basis is not linearly independent");
  auto coords = [&](const std::vector<K>& v) {
    auto c = solve_left(rows, std::span<const K>(v));
    if (!c) fail(errc::invalid_argument, "subspace is not closed under multiplication");
    return *c;
  };
  std::vector<std::vector<std::vector<K>>> mul(d, std::vector<std::vector<K>>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) mul[i][j] = coords(parent.mul(rows.row_vector(i), rows.row_vector(j)));
  auto one = solve_left(rows, std::span<const K>(unit ? *unit : parent.one()));
  if (!one) fail(errc::invalid_argument, "subspace does not contain 1");
  if (names.size() != d) {
    names.clear();
    for (std::size_t i = 0; i < d; ++i) names.push_back("u" + std::to_string(i + 1));
  }
  return {std::make_shared<const Algebra<E>>(std::move(names), mul, *one, false), rows};
}

template <ground_ring_element E>
Decomposition<E> decompose(const Algebra<E>& alg, const std::vector<std::vector<Frac<E>>>& idems) {
  using K = Frac<E>;
  verify_idempotents(alg, idems);
  Decomposition<E> out;
  out.idempotents = idems;
  std::size_t total = 0;
  for (const auto& e : idems) {
    Matrix<K> span(alg.dim(), alg.dim());
    for (std::size_t j = 0; j < alg.dim(); ++j) {
      const auto v = alg.mul(alg.basis_vector(j), e);
      for (std::size_t k = 0; k < alg.dim(); ++k) span(j, k) = v[k];
    }
    auto ech = row_echelon(span);
    std::vector<std::string> names;
    for (std::size_t a = 0; a < ech.pivots.size(); ++a) {
      bool unit_row = true;
      for (std::size_t k = 0; k < alg.dim(); ++k)
        if (k != ech.pivots[a] && !ech.rref(a, k).is_zero()) unit_row = false;
      names.push_back(unit_row ? alg.basis_names()[ech.pivots[a]] : "u" + std::to_string(a + 1));
    }
    auto sub = subalgebra(alg, ech.rref, names, &e);
    total += ech.pivots.size();
    out.factors.push_back(sub.alg);
    out.embeddings.push_back(ech.rref);
    out.pivots.push_back(ech.pivots);
  }
  if (total != alg.dim()) fail(errc::bad_idempotents, "Peirce blocks do not fill the algebra");
  return out;
}

}  // namespace mord
