#include <gtest/gtest.h>

#include <random>

#include "mord/algebra.hpp"
#include "mord/constructions.hpp"
#include "mord/integer.hpp"

using namespace mord;

namespace {

using Z = Integer;
using Q = Frac<Integer>;
using F2t = Poly<Fp<2>>;
using K2 = Frac<F2t>;
using Vec = std::vector<Q>;

QPoly qpoly(std::initializer_list<long> low_first) {
  std::vector<Q> c;
  for (long x : low_first) c.emplace_back(x);
  return QPoly(c);
}

Vec vec(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

Vec random_vec(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  Vec v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(d(rng));
  return v;
}

AlgebraPtr<Z> qxq() { return product_algebra<Z>({poly_quotient<Z>(qpoly({0, 1})), poly_quotient<Z>(qpoly({0, 1}))}); }

}  // namespace

TEST(Multiply, UnitAndRelations) {
  auto m2 = matrix_algebra<Z>(2);
  auto x = Element<Z>{m2, vec({3, 1, 4, 1})};
  EXPECT_EQ(multiply(Element<Z>{m2, m2->one()}, x).coords, x.coords);
  auto c = poly_quotient<Z>(qpoly({-1, 0, 1}));
  EXPECT_EQ(c->mul(vec({0, 1}), vec({0, 1})), vec({1, 0}));
  // e12 * e21 = e11
  EXPECT_EQ(m2->mul(vec({0, 1, 0, 0}), vec({0, 0, 1, 0})), vec({1, 0, 0, 0}));
}

TEST(Multiply, AlgebraMismatch) {
  auto a = matrix_algebra<Z>(2), b = quaternion_algebra<Z>(Q(-1), Q(-1));
  try {
    multiply(Element<Z>{a, a->one()}, Element<Z>{b, b->one()});
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::algebra_mismatch);
  }
}

TEST(Multiply, QuaternionTable) {
  auto h = quaternion_algebra<Z>(Q(-1), Q(-1));
  const Vec i = vec({0, 1, 0, 0}), j = vec({0, 0, 1, 0}), k = vec({0, 0, 0, 1});
  EXPECT_EQ(h->mul(i, i), vec({-1, 0, 0, 0}));
  EXPECT_EQ(h->mul(i, j), k);
  EXPECT_EQ(h->mul(j, i), vec({0, 0, 0, -1}));
  EXPECT_EQ(h->mul(k, k), vec({-1, 0, 0, 0}));
  EXPECT_EQ(h->mul(j, k), i);
}

TEST(Algebra, RejectsNonAssociativeTable) {
  // b1*b1 = b0 + b1 with b0 as unit is fine; break it with b1*b1 depending on order.
  std::vector<std::vector<Vec>> mul(2, std::vector<Vec>(2));
  mul[0][0] = vec({1, 0});
  mul[0][1] = vec({0, 1});
  mul[1][0] = vec({0, 1});
  mul[1][1] = vec({0, 1});
  EXPECT_NO_THROW(Algebra<Z>({"1", "x"}, mul, vec({1, 0})));
  mul[1][0] = vec({0, 2});
  try {
    Algebra<Z>({"1", "x"}, mul, vec({1, 0}));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::not_an_algebra);
  }
}

TEST(RegularRepresentation, Examples) {
  auto c = poly_quotient<Z>(qpoly({-1, 0, 1}));
  EXPECT_EQ(regular_representation(Element<Z>{c, c->one()}), Matrix<Q>::identity(2));
  Matrix<Q> expect(2, 2, Q(0));
  expect(0, 1) = Q(1);
  expect(1, 0) = Q(1);
  EXPECT_EQ(regular_representation(Element<Z>{c, vec({0, 1})}), expect);
  EXPECT_TRUE(regular_representation(Element<Z>{c, vec({0, 0})}).is_zero());
}

TEST(RegularRepresentation, IsHomomorphism) {
  std::mt19937_64 rng(1);
  for (auto alg : {matrix_algebra<Z>(2), quaternion_algebra<Z>(Q(-1), Q(3)), upper_triangular<Z>(3),
                   poly_quotient<Z>(qpoly({5, 0, -1, 1}))}) {
    for (int t = 0; t < 10; ++t) {
      Element<Z> a{alg, random_vec(alg->dim(), rng)}, b{alg, random_vec(alg->dim(), rng)};
      EXPECT_EQ(regular_representation(multiply(a, b)), regular_representation(a) * regular_representation(b));
    }
  }
}

TEST(Center, Examples) {
  auto m2 = matrix_algebra<Z>(2);
  auto z = center_basis(*m2);
  ASSERT_EQ(z.rows(), 1u);
  EXPECT_EQ(z.row_vector(0), vec({1, 0, 0, 1}));
  EXPECT_EQ(center_basis(*poly_quotient<Z>(qpoly({-1, 0, 1}))).rows(), 2u);
  auto h = center_basis(*quaternion_algebra<Z>(Q(-1), Q(-1)));
  ASSERT_EQ(h.rows(), 1u);
  EXPECT_EQ(h.row_vector(0), vec({1, 0, 0, 0}));
  // upper triangular: only scalars
  EXPECT_EQ(center_basis(*upper_triangular<Z>(2)).rows(), 1u);
}

TEST(Center, CommutesWithBasis) {
  auto alg = product_algebra<Z>({matrix_algebra<Z>(2), poly_quotient<Z>(qpoly({2, 0, 1}))});
  for (const auto& z : center(alg)) {
    for (std::size_t j = 0; j < alg->dim(); ++j) {
      const auto b = alg->basis_vector(j);
      EXPECT_EQ(alg->mul(z.coords, b), alg->mul(b, z.coords));
    }
  }
  EXPECT_EQ(center(alg).size(), 3u);
}

TEST(Semisimple, TraceFormExamples) {
  EXPECT_FALSE(is_separable_semisimple(*poly_quotient<Z>(qpoly({0, 0, 1}))));
  auto m2 = matrix_algebra<Z>(2);
  EXPECT_TRUE(is_separable_semisimple(*m2));
  EXPECT_EQ(determinant(trace_form(*m2)), Q(-16));
  // F_2(t)[x]/(x^2 - t): a field, but the trace form vanishes.
  std::vector<K2> c{K2(ring_traits<F2t>::parse("t")), K2(0), K2(1)};
  auto insep = poly_quotient<F2t>(Poly<K2>(c));
  EXPECT_FALSE(is_separable_semisimple(*insep));
  EXPECT_TRUE(trace_form(*insep).is_zero());
}

TEST(CentralIdempotents, Examples) {
  auto a = qxq();
  auto e = central_idempotents(*a);
  ASSERT_EQ(e.size(), 2u);
  EXPECT_TRUE((e[0] == vec({1, 0}) && e[1] == vec({0, 1})) || (e[0] == vec({0, 1}) && e[1] == vec({1, 0})));

  auto c = poly_quotient<Z>(qpoly({-1, 0, 1}));
  auto f = central_idempotents(*c);
  ASSERT_EQ(f.size(), 2u);
  const Vec plus{Q(Z(1), Z(2)), Q(Z(1), Z(2))}, minus{Q(Z(1), Z(2)), Q(Z(-1), Z(2))};
  EXPECT_TRUE((f[0] == plus && f[1] == minus) || (f[0] == minus && f[1] == plus));

  auto g = central_idempotents(*matrix_algebra<Z>(2));
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0], vec({1, 0, 0, 1}));
}

TEST(CentralIdempotents, ManyFactorsAndFields) {
  // Q^5 x Q(i) x Mat_2(Q) x Q(2^(1/3)): 7 + ... primitive idempotents
  std::vector<AlgebraPtr<Z>> parts;
  for (int i = 0; i < 5; ++i) parts.push_back(poly_quotient<Z>(qpoly({0, 1})));
  parts.push_back(poly_quotient<Z>(qpoly({1, 0, 1})));
  parts.push_back(matrix_algebra<Z>(2));
  parts.push_back(poly_quotient<Z>(qpoly({-2, 0, 0, 1})));
  auto alg = product_algebra<Z>(parts);
  auto e = central_idempotents(*alg);
  EXPECT_EQ(e.size(), 8u);
  verify_idempotents(*alg, e);
}

TEST(CentralIdempotents, CharPNeedsSupply) {
  std::vector<K2> c{K2(ring_traits<F2t>::parse("t")), K2(0), K2(1)};
  auto insep = poly_quotient<F2t>(Poly<K2>(c));
  try {
    central_idempotents(*insep);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::needs_supplied_idempotents);
  }
  auto m = matrix_algebra<F2t>(2);
  EXPECT_EQ(central_idempotents(*m).size(), 1u);
}

TEST(CentralIdempotents, NonReducedCenter) {
  try {
    central_idempotents(*poly_quotient<Z>(qpoly({0, 0, 1})));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::not_semisimple);
  }
}

TEST(Decompose, Examples) {
  auto a = qxq();
  auto d = decompose(*a, {vec({1, 0}), vec({0, 1})});
  ASSERT_EQ(d.factors.size(), 2u);
  EXPECT_EQ(d.factors[0]->dim(), 1u);
  EXPECT_EQ(d.factors[1]->dim(), 1u);

  auto m2 = matrix_algebra<Z>(2);
  auto s = decompose(*m2, {m2->one()});
  ASSERT_EQ(s.factors.size(), 1u);
  EXPECT_EQ(*s.factors[0], *m2);

  auto c = poly_quotient<Z>(qpoly({-1, 0, 1}));
  auto t = decompose(*c, central_idempotents(*c));
  ASSERT_EQ(t.factors.size(), 2u);
  for (const auto& f : t.factors) {
    EXPECT_EQ(f->dim(), 1u);
    EXPECT_EQ(f->mul(f->one(), f->one()), f->one());
  }
}

TEST(Decompose, BadIdempotents) {
  auto a = qxq();
  for (const auto& sys : std::vector<std::vector<Vec>>{{vec({1, 0})}, {vec({1, 1}), vec({0, 0})}, {vec({2, 0}), vec({-1, 1})}}) {
    try {
      decompose(*a, sys);
      FAIL();
    } catch (const error& e) {
      EXPECT_EQ(e.code(), errc::bad_idempotents);
    }
  }
  auto m2 = matrix_algebra<Z>(2);
  try {
    decompose(*m2, {vec({1, 0, 0, 0}), vec({0, 0, 0, 1})});
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::bad_idempotents);
  }
}

TEST(Decompose, ReassemblesParent) {
  std::mt19937_64 rng(2);
  auto alg = product_algebra<Z>({quaternion_algebra<Z>(Q(-1), Q(-3)), poly_quotient<Z>(qpoly({-1, 0, 1})),
                                 matrix_algebra<Z>(2)});
  auto d = decompose(*alg, central_idempotents(*alg));
  ASSERT_EQ(d.factors.size(), 4u);
  for (int t = 0; t < 20; ++t) {
    const Vec x = random_vec(alg->dim(), rng), y = random_vec(alg->dim(), rng);
    Vec sum_x = alg->zero(), prod = alg->zero();
    for (std::size_t i = 0; i < d.factors.size(); ++i) {
      const auto px = d.project(i, x, *alg), py = d.project(i, y, *alg);
      const auto ex = d.embed(i, px), ep = d.embed(i, d.factors[i]->mul(px, py));
      for (std::size_t k = 0; k < alg->dim(); ++k) {
        sum_x[k] += ex[k];
        prod[k] += ep[k];
      }
    }
    EXPECT_EQ(sum_x, x);
    EXPECT_EQ(prod, alg->mul(x, y));
  }
}

TEST(RationalFactorization, KnownProducts) {
  auto f = qpoly({-3, 1}) * qpoly({1, 0, 1}) * qpoly({-2, 0, 1}) * qpoly({1, 1, 1});
  auto fac = factor_squarefree_rational(f);
  ASSERT_EQ(fac.size(), 4u);
  QPoly back(1);
  for (auto& g : fac) back *= g;
  EXPECT_EQ(back, f.monic());
  // x^4 + 1 is irreducible over Q
  EXPECT_EQ(factor_squarefree_rational(qpoly({1, 0, 0, 0, 1})).size(), 1u);
  // (x^3 - 2)(x^3 + x + 1)
  auto g = qpoly({-2, 0, 0, 1}) * qpoly({1, 1, 0, 1});
  EXPECT_EQ(factor_squarefree_rational(g).size(), 2u);
}
