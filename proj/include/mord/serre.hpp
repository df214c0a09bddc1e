#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mord/algebra.hpp"
#include "mord/constructions.hpp"
#include "mord/lattice.hpp"
#include "mord/order.hpp"

// Serre's tensor construction M (x)_O A, with abelian varieties modeled by
// isogeny types (for the rational class) and period lattices carrying an
// O-action (for the integral structure).
namespace mord::serre {

using Z = Integer;
using Q = Frac<Integer>;

struct IsogenyFactor {
  std::string label;
  std::size_t dim_b = 1;           // dim B_i
  AlgebraPtr<Z> endo;              // D_i = End^0(B_i)
  std::size_t multiplicity = 0;    // n_i (or m_i in a result)
};

struct IsogenyType {
  std::vector<IsogenyFactor> factors;

  void validate() const {
    std::set<std::string> seen;
    for (const auto& f : factors) {
      if (!seen.insert(f.label).second) fail(errc::invalid_argument, "duplicate factor label " + f.label);
      if (f.dim_b == 0) fail(errc::invalid_argument, "factor " + f.label + " has dimension 0");
      if (!f.endo) fail(errc::invalid_argument, "factor " + f.label + " has no endomorphism algebra");
    }
  }

  std::size_t dimension() const {
    std::size_t d = 0;
    for (const auto& f : factors) d += f.multiplicity * f.dim_b;
    return d;
  }

  bool is_zero() const { return dimension() == 0; }

  friend bool operator==(const IsogenyType& a, const IsogenyType& b) {
    if (a.factors.size() != b.factors.size()) return false;
    for (std::size_t i = 0; i < a.factors.size(); ++i)
      if (a.factors[i].label != b.factors[i].label || a.factors[i].multiplicity != b.factors[i].multiplicity ||
          a.factors[i].dim_b != b.factors[i].dim_b)
        return false;
    return true;
  }
};

// E = prod Mat_{n_i}(D_i) over the factors with n_i > 0, with the coordinate
// range of each block.
struct EndomorphismAlgebra {
  AlgebraPtr<Z> alg;
  std::vector<std::size_t> factor;   // index into IsogenyType::factors per block
  std::vector<std::size_t> offset;
  std::vector<std::size_t> size;
};

inline EndomorphismAlgebra endomorphism_algebra(const IsogenyType& t) {
  EndomorphismAlgebra e;
  std::vector<AlgebraPtr<Z>> blocks;
  std::size_t off = 0;
  for (std::size_t i = 0; i < t.factors.size(); ++i) {
    const auto& f = t.factors[i];
    if (f.multiplicity == 0) continue;
    blocks.push_back(matrix_over<Z>(f.endo, f.multiplicity));
    e.factor.push_back(i);
    e.offset.push_back(off);
    e.size.push_back(blocks.back()->dim());
    off += blocks.back()->dim();
  }
  if (!blocks.empty()) e.alg = product_algebra<Z>(blocks);
  return e;
}

// coker(alpha : O^r -> O^s) as a right O-module; row i of alpha is the image
// of the i-th generator of O^r.
struct ModulePresentation {
  Order<Z> order;
  std::size_t r = 0, s = 0;
  std::vector<std::vector<std::vector<Q>>> alpha;   // r x s algebra elements

  void validate() const {
    if (alpha.size() != r) fail(errc::invalid_argument, "alpha has " + std::to_string(alpha.size()) + " rows, expected " + std::to_string(r));
    for (std::size_t i = 0; i < r; ++i) {
      if (alpha[i].size() != s) fail(errc::invalid_argument, "alpha row " + std::to_string(i) + " has wrong length");
      for (std::size_t j = 0; j < s; ++j) {
        if (alpha[i][j].size() != order.algebra()->dim())
          fail(errc::invalid_argument, "alpha entry (" + std::to_string(i) + "," + std::to_string(j) + ") has wrong length");
        if (!order.contains(alpha[i][j]))
          fail(errc::not_contained, "alpha entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                                        format_vector(alpha[i][j]) + " is not in the order");
      }
    }
  }
};

// A lattice T in Q^N (rows of basis) with a left action of the order: the
// vector v maps to v * action[k] under the k-th order basis element.
struct PeriodLattice {
  std::string prime = "generic";
  Matrix<Q> basis;
  std::vector<Matrix<Q>> action;
};

// A module map M1 -> M2 lifted to the free modules: generator j of M1 goes
// to sum_k g'_k * phi[j][k].
using ModuleMap = std::vector<std::vector<std::vector<Q>>>;

struct KernelAtPrime {
  Z prime;
  std::vector<Z> divisors;
};

struct IsogenyDescriptor {
  IsogenyType source, target;
  std::vector<KernelAtPrime> per_prime;
  Z degree;
  std::vector<PeriodLattice> lattices;   // T' = O' T for each input lattice
};

struct TensorLattice {
  PeriodLattice lattice;         // torsion-free part, standard basis of Z^f
  std::vector<Z> kernel_divisors;
  Matrix<Z> projection;          // Z^{sN} -> Z^f, rows indexed by (generator, lattice basis)
  Matrix<Z> section;             // f x sN with section * projection = 1
};

namespace detail {

inline std::vector<Q> order_coordinates(const Order<Z>& o, const std::vector<Q>& x) {
  return o.lattice().coordinates_in_basis(x);
}

inline Matrix<Q> act(const std::vector<Matrix<Q>>& a, const std::vector<Q>& y) {
  const std::size_t dim = a.empty() ? 0 : a[0].rows();
  Matrix<Q> m(dim, dim, Q(0));
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!y[k].is_zero()) m = m + a[k].scaled(y[k]);
  return m;
}

// Action matrices in the lattice's own basis, checked to be integral and
// multiplicative.
inline std::vector<Matrix<Q>> lattice_action(const Order<Z>& o, const PeriodLattice& t) {
  const std::size_t n = o.dim();
  if (t.action.size() != n)
    fail(errc::action_mismatch, "lattice has " + std::to_string(t.action.size()) + " action matrices, order has rank " + std::to_string(n));
  const std::size_t dim = t.basis.rows();
  if (t.basis.cols() != dim) fail(errc::action_mismatch, "lattice basis is not square");
  const auto binv = inverse(t.basis);
  if (!binv) fail(errc::action_mismatch, "lattice basis is singular");
  std::vector<Matrix<Q>> a;
  for (std::size_t k = 0; k < n; ++k) {
    if (t.action[k].rows() != dim || t.action[k].cols() != dim)
      fail(errc::action_mismatch, "action matrix " + std::to_string(k) + " has the wrong shape");
    a.push_back(t.basis * t.action[k] * *binv);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        if (!a.back()(i, j).is_integral())
          fail(errc::action_mismatch, "lattice is not stable under order basis element " + std::to_string(k));
  }
  const auto& alg = *o.algebra();
  if (act(a, order_coordinates(o, alg.one())) != Matrix<Q>::identity(dim))
    fail(errc::action_mismatch, "the unit does not act as the identity");
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      const auto prod = alg.mul(o.basis().row_vector(k), o.basis().row_vector(l));
      if (act(a, order_coordinates(o, prod)) != a[l] * a[k])
        fail(errc::action_mismatch, "action is not multiplicative on basis elements " + std::to_string(k) + ", " + std::to_string(l));
    }
  return a;
}

// Block matrix of x in Mat_{s1 x s2}(O) acting on T^{s1} -> T^{s2}.
inline Matrix<Q> block_action(const Order<Z>& o, const std::vector<Matrix<Q>>& a,
                              const std::vector<std::vector<std::vector<Q>>>& x, std::size_t s2) {
  const std::size_t dim = a.empty() ? 0 : a[0].rows();
  Matrix<Q> m(x.size() * dim, s2 * dim, Q(0));
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t k = 0; k < s2; ++k) {
      const auto b = act(a, order_coordinates(o, x[j][k]));
      for (std::size_t u = 0; u < dim; ++u)
        for (std::size_t v = 0; v < dim; ++v) m(j * dim + u, k * dim + v) = b(u, v);
    }
  return m;
}

// The Z-lattice N = sum_i alpha_i * O inside O^s (algebra coordinates).
inline Submodule<Z> relation_module(const ModulePresentation& p) {
  const auto& alg = *p.order.algebra();
  const std::size_t n = alg.dim();
  Matrix<Q> g(0, p.s * n);
  for (std::size_t i = 0; i < p.r; ++i)
    for (std::size_t l = 0; l < p.order.dim(); ++l) {
      const auto b = p.order.basis().row_vector(l);
      std::vector<Q> row(p.s * n, Q(0));
      for (std::size_t j = 0; j < p.s; ++j) {
        const auto c = alg.mul(p.alpha[i][j], b);
        std::copy(c.begin(), c.end(), row.begin() + static_cast<long>(j * n));
      }
      g.append_row(row);
    }
  return Submodule<Z>::from_generators(g);
}

inline Matrix<Z> integer_inverse(const Matrix<Z>& v) { return to_ring(inverse_or_throw(to_field(v))); }

}  // namespace detail

// Checks that phi carries the relations of m1 into those of m2.
inline void require_module_map(const ModulePresentation& m1, const ModulePresentation& m2, const ModuleMap& phi) {
  if (m1.order.lattice() != m2.order.lattice() || !(*m1.order.algebra() == *m2.order.algebra()))
    fail(errc::algebra_mismatch, "presentations are over different orders");
  const auto& alg = *m1.order.algebra();
  const std::size_t n = alg.dim();
  if (phi.size() != m1.s) fail(errc::not_a_module_map, "map has " + std::to_string(phi.size()) + " rows, expected " + std::to_string(m1.s));
  for (std::size_t j = 0; j < m1.s; ++j) {
    if (phi[j].size() != m2.s) fail(errc::not_a_module_map, "map row " + std::to_string(j) + " has wrong length");
    for (std::size_t k = 0; k < m2.s; ++k)
      if (!m1.order.contains(phi[j][k]))
        fail(errc::not_a_module_map, "map entry (" + std::to_string(j) + "," + std::to_string(k) + ") is not in the order");
  }
  const auto n2 = detail::relation_module(m2);
  for (std::size_t i = 0; i < m1.r; ++i) {
    std::vector<Q> img(m2.s * n, Q(0));
    for (std::size_t k = 0; k < m2.s; ++k) {
      std::vector<Q> acc(n, Q(0));
      for (std::size_t j = 0; j < m1.s; ++j) {
        const auto c = alg.mul(phi[j][k], m1.alpha[i][j]);
        for (std::size_t t = 0; t < n; ++t) acc[t] += c[t];
      }
      std::copy(acc.begin(), acc.end(), img.begin() + static_cast<long>(k * n));
    }
    bool zero = std::all_of(img.begin(), img.end(), [](const Q& x) { return x.is_zero(); });
    if (!zero && (n2.rank() == 0 || !n2.contains(img)))
      fail(errc::not_a_module_map, "relation " + std::to_string(i) + " of the source does not map to a relation of the target");
  }
}

// Multiplicities m_i of V (x)_C [A], from the E-module M (x)_O E =
// E^s / sum_i phi(alpha_i) E split along the simple factors of E.
// embedding: rows are the images in E of the order's basis.
inline IsogenyType tensor_isogeny_class(const ModulePresentation& m, const IsogenyType& type,
                                        const std::optional<Matrix<Q>>& embedding = std::nullopt) {
  m.validate();
  type.validate();
  IsogenyType out = type;
  for (auto& f : out.factors) f.multiplicity = 0;
  const auto e = endomorphism_algebra(type);
  if (!e.alg) return out;
  const auto& ealg = *e.alg;
  const std::size_t de = ealg.dim(), no = m.order.dim();
  if (m.s * de > 4096) fail(errc::dimension_too_large, "s * dim E = " + std::to_string(m.s * de) + " exceeds 4096");

  Matrix<Q> emb;
  if (embedding) {
    emb = *embedding;
    if (emb.rows() != no || emb.cols() != de)
      fail(errc::embedding_not_algebra_map, "embedding must be " + std::to_string(no) + " x " + std::to_string(de));
  } else {
    if (!(*m.order.algebra() == ealg))
      fail(errc::embedding_not_algebra_map, "no embedding given and the order's algebra is not End^0(A)");
    emb = m.order.basis();
  }
  const auto phi = [&](const std::vector<Q>& x) { return vec_mul<Q>(detail::order_coordinates(m.order, x), emb); };
  const auto& calg = *m.order.algebra();
  if (phi(calg.one()) != ealg.one()) fail(errc::embedding_not_algebra_map, "embedding does not send 1 to 1");
  for (std::size_t k = 0; k < no; ++k)
    for (std::size_t l = 0; l < no; ++l) {
      const auto prod = calg.mul(m.order.basis().row_vector(k), m.order.basis().row_vector(l));
      if (phi(prod) != ealg.mul(emb.row_vector(k), emb.row_vector(l)))
        fail(errc::embedding_not_algebra_map, "embedding is not multiplicative on basis elements " + std::to_string(k) + ", " + std::to_string(l));
    }

  std::vector<std::vector<std::vector<Q>>> gens;   // per relation and basis element of E, a vector of E^s
  std::vector<std::vector<Q>> images(m.s);
  for (std::size_t i = 0; i < m.r; ++i) {
    for (std::size_t j = 0; j < m.s; ++j) images[j] = phi(m.alpha[i][j]);
    for (std::size_t b = 0; b < de; ++b) {
      std::vector<std::vector<Q>> g(m.s);
      for (std::size_t j = 0; j < m.s; ++j) g[j] = ealg.mul(images[j], ealg.basis_vector(b));
      gens.push_back(std::move(g));
    }
  }
  for (std::size_t blk = 0; blk < e.factor.size(); ++blk) {
    const std::size_t off = e.offset[blk], sz = e.size[blk];
    Matrix<Q> rel(0, m.s * sz);
    for (const auto& g : gens) {
      std::vector<Q> row(m.s * sz);
      for (std::size_t j = 0; j < m.s; ++j)
        for (std::size_t c = 0; c < sz; ++c) row[j * sz + c] = g[j][off + c];
      rel.append_row(row);
    }
    const std::size_t dim_w = m.s * sz - (rel.rows() ? rank(rel) : 0);
    const auto& f = type.factors[e.factor[blk]];
    const std::size_t simple = f.multiplicity * f.endo->dim();
    if (dim_w % simple != 0)
      fail(errc::invalid_argument, "block " + f.label + " has dimension " + std::to_string(dim_w) +
                                       ", not a multiple of the simple module dimension " + std::to_string(simple));
    out.factors[e.factor[blk]].multiplicity = dim_w / simple;
  }
  return out;
}

inline std::size_t tensor_dimension(const IsogenyType& t) { return t.dimension(); }

// M (x)_O T = coker(T^r -> T^s); returns the torsion-free quotient and the
// elementary divisors of the torsion subgroup.
inline TensorLattice tensor_lattice(const ModulePresentation& m, const PeriodLattice& t) {
  m.validate();
  const auto a = detail::lattice_action(m.order, t);
  const std::size_t dim = t.basis.rows(), total = m.s * dim;
  const Matrix<Z> rel = to_ring(detail::block_action(m.order, a, m.alpha, m.s));
  TensorLattice out;
  Matrix<Z> v = Matrix<Z>::identity(total);
  std::size_t rk = 0;
  if (rel.rows() > 0 && total > 0) {
    auto res = snf(rel);
    for (const auto& d : res.diagonal()) {
      if (d == 0) break;
      ++rk;
      if (!ring_traits<Z>::is_unit(d)) out.kernel_divisors.push_back(d);
    }
    v = std::move(res.v);
  }
  const std::size_t f = total - rk;
  out.projection = v.block(0, rk, total, f);
  out.section = detail::integer_inverse(v).block(rk, 0, f, total);
  out.lattice.prime = t.prime;
  out.lattice.basis = Matrix<Q>::identity(f);
  return out;
}

// Matrix (in the bases of the two tensor lattices) of the map induced by
// phi : M1 -> M2.
inline Matrix<Z> induced_lattice_map(const ModulePresentation& m1, const ModulePresentation& m2, const ModuleMap& phi,
                                     const PeriodLattice& t) {
  require_module_map(m1, m2, phi);
  const auto a = detail::lattice_action(m1.order, t);
  const auto l1 = tensor_lattice(m1, t), l2 = tensor_lattice(m2, t);
  const Matrix<Z> f = to_ring(detail::block_action(m1.order, a, phi, m2.s));
  return l1.section * f * l2.projection;
}

// xi_2 o (phi (x) 1) = T(phi_A) o xi_1 on every generator of T^{s1}, with
// xi the projection onto the torsion-free quotient.
inline bool check_naturality(const ModulePresentation& m1, const ModulePresentation& m2, const ModuleMap& phi,
                             const PeriodLattice& t) {
  require_module_map(m1, m2, phi);
  const auto a = detail::lattice_action(m1.order, t);
  const auto l1 = tensor_lattice(m1, t), l2 = tensor_lattice(m2, t);
  const Matrix<Z> f = to_ring(detail::block_action(m1.order, a, phi, m2.s));
  const Matrix<Z> g = l1.section * f * l2.projection;
  return l1.projection * g == f * l2.projection;
}

// The isogeny A_0 -> O' (x)_O A_0: at each lattice T, T' = O' T and the
// kernel is T'/T.
inline IsogenyDescriptor minimal_isogeny(const Order<Z>& o, const Order<Z>& o2, const IsogenyType& type,
                                         const std::vector<PeriodLattice>& lattices) {
  if (!(*o.algebra() == *o2.algebra())) fail(errc::algebra_mismatch, "orders live in different algebras");
  if (!o2.lattice().contains(o.lattice())) fail(errc::not_contained, "the first order is not contained in the second");
  IsogenyDescriptor d;
  d.source = type;
  d.target = type;
  d.degree = 1;
  std::map<Z, std::vector<Z>> per_prime;
  std::set<std::string> primes_seen;
  for (const auto& t : lattices) {
    if (!primes_seen.insert(t.prime).second) fail(errc::invalid_argument, "two lattices for prime " + t.prime);
    const auto a = detail::lattice_action(o, t);
    const std::size_t dim = t.basis.rows();
    Matrix<Q> gens(0, dim);
    std::vector<Matrix<Q>> a2;
    for (std::size_t k = 0; k < o2.dim(); ++k) {
      a2.push_back(detail::act(a, detail::order_coordinates(o, o2.basis().row_vector(k))));
      gens.append_rows(a2.back());
    }
    const auto tp = Lattice<Z>::from_generators(gens);
    for (const auto& m : a2)
      for (std::size_t i = 0; i < dim; ++i)
        if (!tp.contains(vec_mul<Q>(tp.basis().row_vector(i), m)))
          fail(errc::internal_error, "O' T is not stable under O'");
    const auto divs = elementary_divisors(Lattice<Z>::standard(dim), tp);
    std::optional<Z> ell;
    if (t.prime != "generic") {
      ell = ring_traits<Z>::parse(t.prime);
      require_prime(*ell);
    }
    for (const auto& dv : divs)
      for (const auto& [p, e] : ring_traits<Z>::factor(dv)) {
        if (ell && p != *ell) continue;
        Z q = 1;
        for (std::size_t i = 0; i < e; ++i) q *= p;
        per_prime[p].push_back(q);
        d.degree *= q;
      }
    PeriodLattice out;
    out.prime = t.prime;
    out.basis = tp.basis() * t.basis;
    const auto tb = inverse_or_throw(t.basis);
    for (const auto& m : a2) out.action.push_back(tb * m * t.basis);
    d.lattices.push_back(std::move(out));
  }
  for (auto& [p, v] : per_prime) d.per_prime.push_back({p, v});
  return d;
}

}  // namespace mord::serre
