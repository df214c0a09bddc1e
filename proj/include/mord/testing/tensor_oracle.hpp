#pragma once

#include <vector>

#include "mord/serre.hpp"

// Multiplicities of V (x)_C E computed the long way: V (x)_Q E modulo
// vc (x) e - v (x) c e, with V = C^s / (relations) never formed explicitly.
namespace mord::testing {

inline std::vector<std::size_t> multiplicities_by_quotient(const serre::ModulePresentation& m, const serre::IsogenyType& type,
                                                           const Matrix<Frac<Integer>>& emb) {
  using Q = Frac<Integer>;
  const auto e = serre::endomorphism_algebra(type);
  std::vector<std::size_t> out(type.factors.size(), 0);
  if (!e.alg) return out;
  const auto& calg = *m.order.algebra();
  const auto& ealg = *e.alg;
  const std::size_t c = calg.dim(), de = ealg.dim(), sc = m.s * c, cols = sc * de;
  if (cols > 4096) fail(errc::dimension_too_large, "oracle space too large");
  const auto phi = [&](const std::vector<Q>& x) {
    return vec_mul<Q>(m.order.lattice().coordinates_in_basis(x), emb);
  };
  // v (x) e with v in C^s, stored at (v index)*de + e index
  const auto tensor = [&](const std::vector<Q>& v, const std::vector<Q>& w) {
    std::vector<Q> t(cols, Q(0));
    for (std::size_t i = 0; i < sc; ++i)
      if (!v[i].is_zero())
        for (std::size_t j = 0; j < de; ++j) t[i * de + j] = v[i] * w[j];
    return t;
  };
  const auto right_mult = [&](const std::vector<Q>& v, const std::vector<Q>& x) {
    std::vector<Q> w(sc, Q(0));
    for (std::size_t j = 0; j < m.s; ++j) {
      std::vector<Q> comp(v.begin() + static_cast<long>(j * c), v.begin() + static_cast<long>((j + 1) * c));
      const auto p = calg.mul(comp, x);
      std::copy(p.begin(), p.end(), w.begin() + static_cast<long>(j * c));
    }
    return w;
  };
  Matrix<Q> rel(0, cols);
  for (std::size_t i = 0; i < m.r; ++i) {
    std::vector<Q> row(sc, Q(0));
    for (std::size_t j = 0; j < m.s; ++j)
      for (std::size_t k = 0; k < c; ++k) row[j * c + k] = m.alpha[i][j][k];
    for (std::size_t b = 0; b < c; ++b)
      for (std::size_t f = 0; f < de; ++f) rel.append_row(tensor(right_mult(row, calg.basis_vector(b)), ealg.basis_vector(f)));
  }
  for (std::size_t v = 0; v < sc; ++v) {
    std::vector<Q> unit(sc, Q(0));
    unit[v] = Q(1);
    for (std::size_t b = 0; b < c; ++b) {
      const auto cb = calg.basis_vector(b);
      const auto vc = right_mult(unit, cb);
      const auto pc = phi(cb);
      for (std::size_t f = 0; f < de; ++f) {
        auto lhs = tensor(vc, ealg.basis_vector(f));
        const auto rhs = tensor(unit, ealg.mul(pc, ealg.basis_vector(f)));
        for (std::size_t t = 0; t < cols; ++t) lhs[t] -= rhs[t];
        rel.append_row(lhs);
      }
    }
  }
  const std::size_t base = rel.rows() ? rank(rel) : 0;
  for (std::size_t blk = 0; blk < e.factor.size(); ++blk) {
    std::vector<Q> eps(de, Q(0));
    for (std::size_t t = 0; t < e.size[blk]; ++t) eps[e.offset[blk] + t] = ealg.one()[e.offset[blk] + t];
    Matrix<Q> all = rel;
    for (std::size_t v = 0; v < sc; ++v) {
      std::vector<Q> unit(sc, Q(0));
      unit[v] = Q(1);
      for (std::size_t f = 0; f < de; ++f) all.append_row(tensor(unit, ealg.mul(ealg.basis_vector(f), eps)));
    }
    const std::size_t dim = rank(all) - base;
    const auto& fac = type.factors[e.factor[blk]];
    out[e.factor[blk]] = dim / (fac.multiplicity * fac.endo->dim());
  }
  return out;
}

}  // namespace mord::testing
