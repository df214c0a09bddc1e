#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mord/algebra.hpp"
#include "mord/constructions.hpp"
#include "mord/error.hpp"
#include "mord/frac.hpp"
#include "mord/gfp.hpp"
#include "mord/integer.hpp"
#include "mord/lattice.hpp"
#include "mord/linalg.hpp"

namespace mord {

template <class K>
std::string format_vector(const std::vector<K>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + "]";
}

// A full-rank lattice in A containing 1 and closed under multiplication.
template <ground_ring_element E>
class Order {
 public:
  using K = Frac<E>;

  Order(AlgebraPtr<E> alg, Lattice<E> lat, bool check = true) : alg_(std::move(alg)), lat_(std::move(lat)) {
    if (lat_.ambient_dim() != alg_->dim()) fail(errc::invalid_argument, "lattice dimension differs from the algebra");
    if (check) verify();
  }
  static Order from_basis(AlgebraPtr<E> alg, const Matrix<K>& rows, bool check = true) {
    return Order(std::move(alg), Lattice<E>::from_generators(rows), check);
  }

  const AlgebraPtr<E>& algebra() const { return alg_; }
  const Lattice<E>& lattice() const { return lat_; }
  const Matrix<K>& basis() const { return lat_.basis(); }
  std::size_t dim() const { return lat_.rank(); }
  bool contains(const std::vector<K>& x) const { return lat_.contains(std::span<const K>(x)); }

  // Coordinates of b_i b_j in the order basis; entries lie in R.
  const std::vector<std::vector<E>>& structure() const {
    if (structure_.empty()) {
      const std::size_t n = dim();
      structure_.resize(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          auto c = lat_.coordinates(alg_->mul(basis().row_vector(i), basis().row_vector(j)));
          if (!c) fail(errc::not_an_order, "lattice is not closed under multiplication");
          structure_[i * n + j] = std::move(*c);
        }
    }
    return structure_;
  }

  friend bool operator==(const Order& a, const Order& b) { return a.lat_ == b.lat_; }

 private:
  void verify() const {
    if (!contains(alg_->one())) fail(errc::not_an_order, "lattice does not contain 1");
    structure();
  }

  AlgebraPtr<E> alg_;
  Lattice<E> lat_;
  mutable std::vector<std::vector<E>> structure_;
};

enum class Side { left, right, two_sided };

template <ground_ring_element E>
struct LatticeIdeal {
  Lattice<E> lattice;
  Side side = Side::two_sided;
};

// R-span of all products a_i b_j.
template <ground_ring_element E>
Submodule<E> product_span(const Algebra<E>& alg, const Submodule<E>& a, const Submodule<E>& b) {
  Matrix<Frac<E>> gens(0, alg.dim());
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j)
      gens.append_row(alg.mul(a.basis().row_vector(i), b.basis().row_vector(j)));
  if (gens.rows() == 0) return Submodule<E>(alg.dim());
  return Submodule<E>::from_generators(gens);
}

// Integral over R iff the characteristic polynomial of L_x has coefficients in R.
template <ground_ring_element E>
void require_integral(const Algebra<E>& alg, const std::vector<Frac<E>>& x) {
  const auto cp = charpoly(alg.regular_matrix(x));
  for (std::size_t i = 0; i < cp.size(); ++i)
    if (!cp[i].is_integral())
      fail(errc::not_integral, "element " + format_vector(x) + " is not integral: characteristic polynomial coefficient " +
                                   cp[i].str() + " at degree " + std::to_string(cp.size() - 1 - i));
}

// Smallest order containing the given elements (rows) and 1.
template <ground_ring_element E>
Order<E> order_closure(const AlgebraPtr<E>& alg, const Matrix<Frac<E>>& gens) {
  const std::size_t n = alg->dim();
  Matrix<Frac<E>> g(0, n);
  g.append_row(alg->one());
  for (std::size_t i = 0; i < gens.rows(); ++i) {
    require_integral(*alg, gens.row_vector(i));
    g.append_row(gens.row(i));
  }
  Submodule<E> s = Submodule<E>::from_generators(g);
  for (std::size_t round = 0;; ++round) {
    Submodule<E> next = s + product_span(*alg, s, s);
    if (next == s) break;
    s = std::move(next);
    for (std::size_t i = 0; i < s.rank(); ++i) require_integral(*alg, s.basis().row_vector(i));
    if (round > 64 * n * n)
      fail(errc::not_integral, "ring generated by the elements is not finitely generated over the ground ring");
  }
  if (s.rank() != n)
    fail(errc::not_full_rank, "generated order has rank " + std::to_string(s.rank()) + " in dimension " + std::to_string(n));
  return Order<E>(alg, Lattice<E>(std::move(s)), false);
}

// det of [Tr(b_i b_j)] on the order basis.
template <ground_ring_element E>
E discriminant(const Order<E>& o) {
  const auto& alg = *o.algebra();
  const std::size_t n = o.dim();
  Matrix<Frac<E>> g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      g(i, j) = alg.trace(alg.mul(o.basis().row_vector(i), o.basis().row_vector(j)));
      g(j, i) = g(i, j);
    }
  const Frac<E> d = determinant(g);
  if (!d.is_integral()) fail(errc::internal_error, "discriminant of an order is not integral");
  return d.num();
}

template <ground_ring_element E>
void require_prime(const E& p) {
  if (!ring_traits<E>::is_prime(p))
    fail(errc::not_prime, ring_traits<E>::to_string(p) + " is not a prime of " + ring_traits<E>::name());
}

// Unit-normal prime divisors of a nonzero ring element.
template <ground_ring_element E>
std::vector<E> prime_divisors(const E& a) {
  std::vector<E> out;
  if (ring_traits<E>::is_zero(a)) return out;
  for (auto& [p, e] : ring_traits<E>::factor(a)) out.push_back(p);
  return out;
}

namespace detail {

// Lambda / pi Lambda as an algebra over the prime field F_p, with basis
// beta_u omega_i at index i*f + u where beta_u is the F_p-basis of R/pi.
template <ground_ring_element E>
struct Residue {
  using T = ring_traits<E>;
  E pi;
  std::uint64_t p = 0;
  std::size_t n = 0, f = 0, N = 0;
  gfp::Mod mod{2};
  std::vector<std::uint64_t> c;  // c[(a*N + b)*N + k]
  gfp::Vec one;

  gfp::Vec mul(const gfp::Vec& x, const gfp::Vec& y) const {
    gfp::Vec out(N, 0);
    for (std::size_t a = 0; a < N; ++a) {
      if (!x[a]) continue;
      for (std::size_t b = 0; b < N; ++b) {
        if (!y[b]) continue;
        const std::uint64_t s = mod.mul(x[a], y[b]);
        const std::uint64_t* row = &c[(a * N + b) * N];
        for (std::size_t k = 0; k < N; ++k)
          if (row[k]) out[k] = mod.add(out[k], mod.mul(s, row[k]));
      }
    }
    return out;
  }
  gfp::Vec basis(std::size_t a) const {
    gfp::Vec v(N, 0);
    v[a] = 1;
    return v;
  }
  gfp::Vec sub(gfp::Vec x, const gfp::Vec& y) const {
    for (std::size_t k = 0; k < N; ++k) x[k] = mod.sub(x[k], y[k]);
    return x;
  }
  gfp::Vec pow(gfp::Vec x, std::uint64_t e) const {
    gfp::Vec acc = one;
    while (e) {
      if (e & 1u) acc = mul(acc, x);
      e >>= 1u;
      if (e) x = mul(x, x);
    }
    return acc;
  }

  // Matrix of y -> x*y in row convention (row b = coords of x*a_b).
  gfp::Mat left_matrix(const gfp::Vec& x) const {
    gfp::Mat m(N, N);
    for (std::size_t b = 0; b < N; ++b) {
      auto v = mul(x, basis(b));
      for (std::size_t k = 0; k < N; ++k) m(b, k) = v[k];
    }
    return m;
  }

  gfp::Vec reduce(const std::vector<E>& coords) const {
    gfp::Vec v(N, 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto r = T::residue_coords(coords[i], pi);
      for (std::size_t u = 0; u < f; ++u) v[i * f + u] = r[u];
    }
    return v;
  }
  std::vector<E> lift(const gfp::Vec& v) const {
    std::vector<E> out;
    for (std::size_t i = 0; i < n; ++i)
      out.push_back(T::residue_lift(std::span<const std::uint64_t>(v.data() + i * f, f), pi));
    return out;
  }
};

template <ground_ring_element E>
Residue<E> residue_algebra(const Order<E>& o, const E& pi) {
  using T = ring_traits<E>;
  require_prime(pi);
  Residue<E> r;
  r.pi = pi;
  r.p = T::residue_char(pi);
  r.f = T::residue_degree(pi);
  r.n = o.dim();
  r.N = r.n * r.f;
  r.mod = gfp::Mod{r.p};
  std::vector<E> beta;
  for (std::size_t u = 0; u < r.f; ++u) {
    std::vector<std::uint64_t> e(r.f, 0);
    e[u] = 1;
    beta.push_back(T::residue_lift(std::span<const std::uint64_t>(e), pi));
  }
  const auto& st = o.structure();
  const std::size_t N = r.N, f = r.f;
  r.c.assign(N * N * N, 0);
  for (std::size_t i = 0; i < r.n; ++i)
    for (std::size_t j = 0; j < r.n; ++j)
      for (std::size_t u = 0; u < f; ++u)
        for (std::size_t v = 0; v < f; ++v) {
          const E bb = beta[u] * beta[v];
          const std::size_t a = i * f + u, b = j * f + v;
          for (std::size_t k = 0; k < r.n; ++k) {
            const E& cijk = st[i * r.n + j][k];
            if (T::is_zero(cijk)) continue;
            auto w = T::residue_coords(E(bb * cijk), pi);
            for (std::size_t x = 0; x < f; ++x) r.c[(a * N + b) * N + k * f + x] = w[x];
          }
        }
  // 1 in order coordinates
  r.one = r.reduce(*o.lattice().coordinates(o.algebra()->one()));
  return r;
}

// Jacobson radical of an F_p-algebra (rows, RREF) by the iterated trace
// method: I_i = {x in I_{i-1} : g_i(xy) = 0 for all y} with
// g_i(x) = Tr(L^(p^i)) / p^i mod p for an integral lift L of L_x.
template <ground_ring_element E>
gfp::Echelon residue_radical(const Residue<E>& r) {
  const std::size_t N = r.N;
  gfp::Mat I = gfp::Mat::identity(N);
  std::size_t l = 0;
  for (std::uint64_t q = r.p; q <= N; q *= r.p) ++l;
  std::uint64_t pi_pow = 1;  // p^i
  for (std::size_t i = 0; i <= l && I.rows > 0; ++i) {
    const gfp::Mod big{pi_pow * r.p};
    gfp::Mat g(I.rows, N);
    for (std::size_t s = 0; s < I.rows; ++s) {
      const auto x = I.row(s);
      for (std::size_t j = 0; j < N; ++j) {
        const auto m = r.left_matrix(r.mul(x, r.basis(j)));
        const auto mp = gfp::power(big, m, pi_pow);
        std::uint64_t tr = 0;
        for (std::size_t k = 0; k < N; ++k) tr = big.add(tr, mp(k, k));
        if (tr % pi_pow != 0) fail(errc::internal_error, "iterated trace not divisible by p^i");
        g(s, j) = (tr / pi_pow) % r.p;
      }
    }
    const auto ker = gfp::left_kernel(r.mod, g);
    I = gfp::echelon(r.mod, gfp::mul(r.mod, ker, I)).rref;
    if (ker.rows == 0) I = gfp::Mat(0, N);
    pi_pow *= r.p;
  }
  return gfp::echelon(r.mod, I);
}

// Structure of Lambda/rad: the preimage of its center and of the
// Frobenius-fixed part of the center (both contain rad).
template <ground_ring_element E>
struct ResidueStructure {
  Residue<E> res;
  gfp::Echelon rad;
  gfp::Echelon fixed;        // {x central mod rad : x^p = x mod rad}
  std::size_t simple_factors = 0;
};

template <ground_ring_element E>
ResidueStructure<E> residue_structure(const Order<E>& o, const E& pi) {
  ResidueStructure<E> s{residue_algebra(o, pi), {}, {}, 0};
  const auto& r = s.res;
  s.rad = residue_radical(r);
  const std::size_t N = r.N;
  // center of Lambda/rad, pulled back
  gfp::Mat sys(N, N * N);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t j = 0; j < N; ++j) {
      const auto comm = gfp::reduce(r.mod, r.sub(r.mul(r.basis(a), r.basis(j)), r.mul(r.basis(j), r.basis(a))), s.rad);
      for (std::size_t k = 0; k < N; ++k) sys(a, j * N + k) = comm[k];
    }
  const auto cen = gfp::left_kernel(r.mod, sys);
  gfp::Mat frob(cen.rows, N);
  for (std::size_t i = 0; i < cen.rows; ++i) {
    const auto x = cen.row(i);
    const auto d = gfp::reduce(r.mod, r.sub(r.pow(x, r.p), x), s.rad);
    for (std::size_t k = 0; k < N; ++k) frob(i, k) = d[k];
  }
  const auto ker = gfp::left_kernel(r.mod, frob);
  s.fixed = gfp::echelon(r.mod, gfp::mul(r.mod, ker, cen));
  s.simple_factors = s.fixed.rank() - s.rad.rank();
  return s;
}

template <ground_ring_element E>
Lattice<E> lift_residue_span(const Order<E>& o, const Residue<E>& r, const gfp::Mat& rows) {
  using K = Frac<E>;
  const std::size_t n = o.dim();
  Matrix<K> gens(0, n);
  for (std::size_t i = 0; i < rows.rows; ++i) {
    auto c = r.lift(rows.row(i));
    std::vector<K> v;
    for (auto& x : c) v.emplace_back(x);
    gens.append_row(v);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<K> v(n, K(0));
    v[i] = K(r.pi);
    gens.append_row(v);
  }
  return Lattice<E>::from_generators(gens * o.basis());
}

// Central primitive idempotents of Lambda/rad, as vectors of Lambda/pi Lambda.
template <ground_ring_element E>
std::vector<gfp::Vec> residue_central_idempotents(const ResidueStructure<E>& s) {
  const auto& r = s.res;
  const auto& f = r.mod;
  auto nonzero = [&](const gfp::Vec& v) { return !gfp::is_zero(gfp::reduce(f, v, s.rad)); };
  std::vector<gfp::Vec> idems{r.one};
  std::vector<gfp::Vec> fixed_basis;
  for (std::size_t i = 0; i < s.fixed.rank(); ++i)
    if (nonzero(s.fixed.rref.row(i))) fixed_basis.push_back(s.fixed.rref.row(i));
  std::uint64_t shift = 0;
  while (idems.size() < s.simple_factors) {
    if (shift > 4096 + r.p) fail(errc::internal_error, "failed to split the residue center");
    for (const auto& y0 : fixed_basis) {
      gfp::Vec y = y0;
      for (std::size_t k = 0; k < r.N; ++k) y[k] = f.add(y[k], f.mul(shift % r.p, r.one[k]));
      std::vector<gfp::Vec> next;
      for (const auto& e : idems) {
        std::vector<gfp::Vec> parts;
        const auto ey = r.mul(e, y);
        if (r.p == 2) {
          parts = {ey, r.sub(e, ey)};
        } else {
          const auto z = r.pow(ey, (r.p - 1) / 2);
          const auto z2 = r.mul(z, z);
          const std::uint64_t half = f.inv(2);
          gfp::Vec plus(r.N), minus(r.N);
          for (std::size_t k = 0; k < r.N; ++k) {
            plus[k] = f.mul(half, f.add(z2[k], z[k]));
            minus[k] = f.mul(half, f.sub(z2[k], z[k]));
          }
          parts = {plus, minus, r.sub(e, z2)};
        }
        for (auto& q : parts)
          if (nonzero(q)) next.push_back(r.mul(q, e));
      }
      idems = std::move(next);
      if (idems.size() >= s.simple_factors) break;
    }
    ++shift;
  }
  return idems;
}

}  // namespace detail

// rad_p(Lambda): the preimage of the Jacobson radical of Lambda / p Lambda.
template <ground_ring_element E>
LatticeIdeal<E> radical_mod_p(const Order<E>& o, const E& p) {
  auto r = detail::residue_algebra(o, p);
  auto rad = detail::residue_radical(r);
  return {detail::lift_residue_span(o, r, rad.rref), Side::two_sided};
}

// O_l(I) = {x : xI in I} (side left) or O_r(I) = {x : Ix in I}.
template <ground_ring_element E>
Order<E> idealizer(const Order<E>& o, const LatticeIdeal<E>& ideal, Side side) {
  using K = Frac<E>;
  const auto& alg = *o.algebra();
  const std::size_t n = alg.dim();
  const Matrix<K> binv = inverse_or_throw(ideal.lattice.basis());
  Matrix<K> g(n, n * n);
  for (std::size_t l = 0; l < n; ++l) {
    const auto beta = ideal.lattice.basis().row_vector(l);
    const Matrix<K> m = (side == Side::right ? alg.left_mult(beta) : alg.right_mult(beta)) * binv;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, l * n + j) = m(i, j);
  }
  return Order<E>(o.algebra(), integral_preimage(g));
}

template <ground_ring_element E>
Submodule<E> ideal_product(const Order<E>& o, const Lattice<E>& a, const Lattice<E>& b) {
  return product_span(*o.algebra(), a, b);
}

// Lambda intersected with the center, as an order in the center algebra.
template <ground_ring_element E>
Order<E> center_order(const Order<E>& o) {
  using K = Frac<E>;
  const auto& alg = *o.algebra();
  const Matrix<K> zb = center_basis(alg);
  auto zalg = subalgebra(alg, zb).alg;
  const Submodule<E> inter = saturate(Submodule<E>::from_generators(zb), static_cast<const Submodule<E>&>(o.lattice()));
  Matrix<K> rows(0, zb.rows());
  for (std::size_t i = 0; i < inter.rank(); ++i)
    rows.append_row(*solve_left(zb, inter.basis().row(i)));
  return Order<E>::from_basis(zalg, rows);
}

struct PrimeVerdict {
  bool idealizer_fixed = false;
  bool residue_simple = false;
  bool verdict() const { return idealizer_fixed && residue_simple; }
};

// Maximality at p: hereditary (left and right idealizers of rad_p are
// Lambda) and one maximal two-sided ideal over each prime of the center
// (the number of simple factors of Lambda/rad equals that of the center
// order; for central simple algebras this says Lambda/rad is simple).
template <ground_ring_element E>
PrimeVerdict is_maximal_at_p(const Order<E>& o, const E& p) {
  require_prime(p);
  PrimeVerdict v;
  auto s = detail::residue_structure(o, p);
  const LatticeIdeal<E> rad{detail::lift_residue_span(o, s.res, s.rad.rref), Side::two_sided};
  v.idealizer_fixed = idealizer(o, rad, Side::left) == o && idealizer(o, rad, Side::right) == o;
  const auto zo = center_order(o);
  std::size_t center_factors = s.simple_factors;
  if (zo.dim() != o.dim()) center_factors = detail::residue_structure(zo, p).simple_factors;
  v.residue_simple = s.simple_factors == center_factors;
  return v;
}

// Maximal two-sided ideals of Lambda containing p.
template <ground_ring_element E>
std::vector<LatticeIdeal<E>> maximal_ideals_over_p(const Order<E>& o, const E& p) {
  auto s = detail::residue_structure(o, p);
  const auto& r = s.res;
  std::vector<LatticeIdeal<E>> out;
  for (const auto& e : detail::residue_central_idempotents(s)) {
    const auto ce = r.sub(r.one, e);
    gfp::Mat gens = s.rad.rref;
    if (gens.rows == 0) gens = gfp::Mat(0, r.N);
    for (std::size_t a = 0; a < r.N; ++a) gens.append_row(r.mul(r.basis(a), ce));
    out.push_back({detail::lift_residue_span(o, r, gfp::echelon(r.mod, gens).rref), Side::two_sided});
  }
  return out;
}

// Radical-idealizer iteration at p, extended by idealizers of maximal
// ideals once the order is hereditary at p.
template <ground_ring_element E>
Order<E> p_maximal_order(const Order<E>& o, const E& p) {
  require_prime(p);
  const std::size_t n = o.dim();
  const E d = discriminant(o);
  std::size_t bound = 64 * n * n;
  if (!ring_traits<E>::is_zero(d)) bound = n * n * static_cast<std::size_t>(std::max<long>(1, valuation(d, p)));
  Order<E> cur = o;
  for (std::size_t step = 0; step <= bound; ++step) {
    auto s = detail::residue_structure(cur, p);
    const LatticeIdeal<E> rad{detail::lift_residue_span(cur, s.res, s.rad.rref), Side::two_sided};
    auto next = idealizer(cur, rad, Side::left);
    if (!(next == cur)) {
      cur = std::move(next);
      continue;
    }
    next = idealizer(cur, rad, Side::right);
    if (!(next == cur)) {
      cur = std::move(next);
      continue;
    }
    const auto zo = center_order(cur);
    const std::size_t cf = zo.dim() == cur.dim() ? s.simple_factors : detail::residue_structure(zo, p).simple_factors;
    if (s.simple_factors == cf) return cur;
    bool grew = false;
    for (const auto& m : maximal_ideals_over_p(cur, p)) {
      for (Side side : {Side::left, Side::right}) {
        auto bigger = idealizer(cur, m, side);
        if (!(bigger == cur)) {
          cur = std::move(bigger);
          grew = true;
          break;
        }
      }
      if (grew) break;
    }
    if (!grew) fail(errc::internal_error, "hereditary order with several maximal ideals over a prime did not grow");
  }
  fail(errc::internal_error, "p-maximalization exceeded its step bound");
}

template <ground_ring_element E>
struct MaximalityCertificate {
  std::vector<E> candidate_primes;
  std::vector<std::pair<E, PrimeVerdict>> per_prime;
  bool verdict() const {
    for (auto& [p, v] : per_prime)
      if (!v.verdict()) return false;
    return true;
  }
};

template <ground_ring_element E>
std::vector<E> candidate_primes(const Order<E>& o, const std::vector<E>& extra) {
  const E d = discriminant(o);
  if (ring_traits<E>::is_zero(d) && extra.empty())
    fail(errc::needs_supplied_primes, "discriminant is 0 (inseparable or non-semisimple algebra); supply candidate primes");
  std::vector<E> out = prime_divisors(d);
  for (const auto& p : extra) {
    require_prime(p);
    const E q = normalize(p);
    bool seen = false;
    for (auto& x : out) seen = seen || x == q;
    if (!seen) out.push_back(q);
  }
  return out;
}

template <ground_ring_element E>
MaximalityCertificate<E> certify(const Order<E>& o, const std::vector<std::type_identity_t<E>>& extra = {}) {
  MaximalityCertificate<E> c;
  c.candidate_primes = candidate_primes(o, extra);
  for (const auto& p : c.candidate_primes) c.per_prime.emplace_back(p, is_maximal_at_p(o, p));
  return c;
}

template <ground_ring_element E>
Order<E> maximalize_at(Order<E> o, const std::vector<E>& primes) {
  for (const auto& p : primes) o = p_maximal_order(o, p);
  return o;
}

// Embed the orders of the factors back into A and add them up.
template <ground_ring_element E>
Order<E> assemble(const AlgebraPtr<E>& alg, const Decomposition<E>& d, const std::vector<Order<E>>& parts) {
  Matrix<Frac<E>> gens(0, alg->dim());
  for (std::size_t i = 0; i < parts.size(); ++i) gens.append_rows(parts[i].basis() * d.embeddings[i]);
  return Order<E>::from_basis(alg, gens);
}

struct MaximalOrderOptions {
  bool trust_semisimple = false;
  std::uint64_t seed = 42;
};

// Global maximal order containing start: split by central idempotents,
// maximalize the center order of each factor, adjoin it, then maximalize
// the factor at each candidate prime.
template <ground_ring_element E>
Order<E> maximal_order(const Order<E>& start,
                       std::optional<std::vector<std::vector<Frac<std::type_identity_t<E>>>>> idems = std::nullopt,
                       const std::vector<std::type_identity_t<E>>& extra_primes = {}, MaximalOrderOptions opt = {}) {
  using K = Frac<E>;
  const auto& alg = start.algebra();
  const E disc = discriminant(start);
  if constexpr (ring_traits<E>::characteristic == 0) {
    if (ring_traits<E>::is_zero(disc) && !opt.trust_semisimple)
      fail(errc::not_semisimple, "trace form is degenerate: algebra is not semisimple");
  }
  const auto primes = candidate_primes(start, extra_primes);
  std::vector<std::vector<K>> es;
  if (idems) {
    es = *idems;
  } else if (ring_traits<E>::characteristic != 0 && alg->is_commutative()) {
    es = {alg->one()};
  } else {
    es = central_idempotents(*alg, opt.seed);
  }
  const auto d = decompose(*alg, es);
  std::vector<Order<E>> parts;
  for (std::size_t i = 0; i < d.factors.size(); ++i) {
    const auto& fa = d.factors[i];
    Matrix<K> proj(0, fa->dim());
    for (std::size_t r = 0; r < start.dim(); ++r) proj.append_row(d.project(i, start.basis().row_vector(r), *alg));
    Order<E> li = Order<E>::from_basis(fa, proj);
    // maximal order of the center, adjoined
    const Matrix<K> zb = center_basis(*fa);
    if (zb.rows() > 1) {
      const auto zo = center_order(li);
      std::vector<E> zprimes;
      const E zd = discriminant(zo);
      zprimes = ring_traits<E>::is_zero(zd) ? extra_primes : prime_divisors(zd);
      if (ring_traits<E>::is_zero(zd) && zprimes.empty())
        fail(errc::needs_supplied_primes, "center discriminant is 0; supply candidate primes");
      const auto zmax = maximalize_at(zo, zprimes);
      Matrix<K> gens = li.basis();
      gens.append_rows(zmax.basis() * zb);
      li = order_closure(fa, gens);
    }
    parts.push_back(maximalize_at(li, primes));
  }
  return assemble(alg, d, parts);
}

template <ground_ring_element E>
Order<E> integral_closure_commutative(const Order<E>& o, const std::vector<std::type_identity_t<E>>& extra_primes = {}) {
  if (!o.algebra()->is_commutative()) fail(errc::not_commutative, "integral closure requires a commutative algebra");
  return maximalize_at(o, candidate_primes(o, extra_primes));
}

// Two-sided ideals I with p Lambda <= I <= Lambda, by closing sums of
// principal ideals in Lambda / p Lambda.
template <ground_ring_element E>
std::vector<LatticeIdeal<E>> two_sided_ideals_over_p(const Order<E>& o, const E& p, std::size_t max_dim = 16,
                                                     std::uint64_t max_size = std::uint64_t(1) << 20) {
  auto r = detail::residue_algebra(o, p);
  const std::size_t N = r.N;
  if (N > max_dim) fail(errc::dimension_too_large, "Lambda/p has dimension " + std::to_string(N) + " > " + std::to_string(max_dim));
  {
    long double size = 1;
    for (std::size_t i = 0; i < N; ++i) size *= static_cast<long double>(r.p);
    if (size > static_cast<long double>(max_size))
      fail(errc::dimension_too_large, "Lambda/p has more than " + std::to_string(max_size) + " elements");
  }
  auto generate = [&](const gfp::Mat& base, const gfp::Vec& v) {
    gfp::Mat g = base;
    if (g.rows == 0) g = gfp::Mat(0, N);
    for (std::size_t j = 0; j < N; ++j) {
      const auto vb = r.mul(v, r.basis(j));
      for (std::size_t i = 0; i < N; ++i) g.append_row(r.mul(r.basis(i), vb));
    }
    return gfp::echelon(r.mod, g);
  };
  std::vector<gfp::Echelon> found{gfp::Echelon{gfp::Mat(0, N), {}}};
  auto known = [&](const gfp::Echelon& e) {
    for (const auto& x : found)
      if (x.pivots == e.pivots && x.rref.a == e.rref.a) return true;
    return false;
  };
  for (std::size_t idx = 0; idx < found.size(); ++idx) {
    const gfp::Echelon cur = found[idx];
    std::vector<std::size_t> free;
    for (std::size_t k = 0, t = 0; k < N; ++k) {
      if (t < cur.pivots.size() && cur.pivots[t] == k) {
        ++t;
        continue;
      }
      free.push_back(k);
    }
    // vectors supported on the free coordinates, first nonzero entry 1
    std::vector<std::uint64_t> digits(free.size(), 0);
    for (;;) {
      std::size_t k = 0;
      while (k < digits.size() && ++digits[k] == r.p) digits[k++] = 0;
      if (k == digits.size()) break;
      std::size_t lead = digits.size();
      for (std::size_t t = digits.size(); t-- > 0;)
        if (digits[t]) {
          lead = t;
          break;
        }
      if (digits[lead] != 1) continue;
      gfp::Vec v(N, 0);
      for (std::size_t t = 0; t < free.size(); ++t) v[free[t]] = digits[t];
      auto e = generate(cur.rref, v);
      if (!known(e)) found.push_back(std::move(e));
    }
  }
  std::vector<LatticeIdeal<E>> out;
  for (const auto& e : found) out.push_back({detail::lift_residue_span(o, r, e.rref), Side::two_sided});
  return out;
}

// Powers P^0 = Lambda, P, P^2, ... of the radical that contain p Lambda.
template <ground_ring_element E>
std::vector<Lattice<E>> radical_powers_over_p(const Order<E>& o, const E& p) {
  const Lattice<E> rad = radical_mod_p(o, p).lattice;
  const Lattice<E> pl = o.lattice().scaled(Frac<E>(p));
  std::vector<Lattice<E>> out{o.lattice()};
  Lattice<E> cur = rad;
  while (cur.contains(pl)) {
    out.push_back(cur);
    if (cur == pl) break;
    cur = Lattice<E>(ideal_product(o, cur, rad));
  }
  return out;
}

// Hom_Delta(M, M) inside Mat_r(D) acting on column vectors of D^r, for a
// right Delta-lattice M in D^r (coordinates i*dim D + k).
template <ground_ring_element E>
Order<E> endomorphism_order(const Order<E>& delta, const Lattice<E>& m, std::size_t r) {
  using K = Frac<E>;
  const auto& D = *delta.algebra();
  const std::size_t dd = D.dim();
  if (m.ambient_dim() != r * dd) fail(errc::invalid_argument, "lattice dimension is not r * dim D");
  // M must be a right Delta-module.
  for (std::size_t l = 0; l < m.rank(); ++l)
    for (std::size_t b = 0; b < delta.dim(); ++b) {
      std::vector<K> w(r * dd, K(0));
      for (std::size_t i = 0; i < r; ++i) {
        std::vector<K> comp(m.basis().row(l).begin() + static_cast<long>(i * dd),
                            m.basis().row(l).begin() + static_cast<long>((i + 1) * dd));
        auto prod = D.mul(comp, delta.basis().row_vector(b));
        for (std::size_t k = 0; k < dd; ++k) w[i * dd + k] = prod[k];
      }
      if (!m.contains(std::span<const K>(w)))
        fail(errc::not_delta_lattice, "lattice is not stable under right multiplication by the order");
    }
  auto alg = matrix_over(delta.algebra(), r);
  const std::size_t n = alg->dim(), s = m.rank();
  const Matrix<K> minv = inverse_or_throw(m.basis());
  Matrix<K> g(n, s * s, K(0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < dd; ++k) {
        const std::size_t row = (i * r + j) * dd + k;
        for (std::size_t l = 0; l < s; ++l) {
          std::vector<K> comp(m.basis().row(l).begin() + static_cast<long>(j * dd),
                              m.basis().row(l).begin() + static_cast<long>((j + 1) * dd));
          auto prod = D.mul(D.basis_vector(k), comp);
          std::vector<K> w(r * dd, K(0));
          for (std::size_t t = 0; t < dd; ++t) w[i * dd + t] = prod[t];
          auto c = vec_mul<K>(w, minv);
          for (std::size_t t = 0; t < s; ++t) g(row, l * s + t) = c[t];
        }
      }
  return Order<E>(alg, integral_preimage(g));
}

// w(a) = v_p(det L_a) / n^2 for a central simple algebra of degree n over
// K; det L_a = Nrd(a)^n, so this is v_p(Nrd a) / n.
template <ground_ring_element E>
Frac<Integer> valuation_w(const Algebra<E>& alg, const std::vector<Frac<E>>& a, const E& p, std::size_t degree) {
  require_prime(p);
  const std::size_t z = center_basis(alg).rows();
  if (z != 1) fail(errc::not_central_simple, "center has dimension " + std::to_string(z));
  if (degree == 0 || degree * degree != alg.dim())
    fail(errc::not_central_simple, "dimension " + std::to_string(alg.dim()) + " is not degree^2");
  const Frac<E> det = determinant(alg.regular_matrix(a));
  if (det.is_zero()) fail(errc::zero_element, "valuation of zero (or a zero divisor)");
  const long v = (ring_traits<E>::is_unit(det.num()) ? 0 : valuation(det.num(), p)) -
                 (ring_traits<E>::is_unit(det.den()) ? 0 : valuation(det.den(), p));
  return Frac<Integer>(Integer(v), Integer(static_cast<unsigned long>(degree * degree)));
}

template <ground_ring_element E>
Frac<Integer> valuation_w(const Algebra<E>& alg, const std::vector<Frac<E>>& a, const E& p) {
  std::size_t n = 1;
  while (n * n < alg.dim()) ++n;
  return valuation_w(alg, a, p, n);
}

}  // namespace mord
