#include <gtest/gtest.h>

#include <random>

#include "mord/serre.hpp"
#include "mord/testing/fixtures.hpp"
#include "mord/testing/tensor_oracle.hpp"

using namespace mord;
using namespace mord::serre;
using namespace mord::testing;

namespace {

template <class F>
void expect_code(errc code, F&& f) {
  try {
    f();
    FAIL() << "no error raised";
  } catch (const error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

std::size_t rank_z(const Matrix<Z>& m) { return m.rows() == 0 ? 0 : rank(to_field(m)); }

}  // namespace

TEST(TensorClass, UpperTriangularExample) {
  UpperTriangularExample ex;
  const auto c1 = tensor_isogeny_class(ex.m1, ex.type, ex.emb);
  const auto c2 = tensor_isogeny_class(ex.m2, ex.type, ex.emb);
  const auto c3 = tensor_isogeny_class(ex.m3, ex.type, ex.emb);
  EXPECT_EQ(c1.factors[0].multiplicity, 1u);
  EXPECT_EQ(c2.factors[0].multiplicity, 1u);
  EXPECT_EQ(c3.factors[0].multiplicity, 0u);
  EXPECT_EQ(tensor_dimension(c1), 1u);
  EXPECT_EQ(tensor_dimension(c3), 0u);
  EXPECT_TRUE(c3.is_zero());
}

TEST(TensorClass, FreeModuleGivesInput) {
  UpperTriangularExample ex;
  ModulePresentation free{ex.o, 0, 1, {}};
  EXPECT_EQ(tensor_isogeny_class(free, ex.type, ex.emb), ex.type);
  // O = Z, A = E, M = Z^2
  auto z = standard(rationals());
  IsogenyType e{{{"E", 1, rationals(), 1}}};
  const auto c = tensor_isogeny_class(ModulePresentation{z, 0, 2, {}}, e);
  EXPECT_EQ(c.factors[0].multiplicity, 2u);
  EXPECT_EQ(tensor_dimension(c), 2u);
}

TEST(TensorClass, TorsionModuleIsZero) {
  auto z = standard(rationals());
  IsogenyType e{{{"E", 1, rationals(), 1}}};
  ModulePresentation m{z, 1, 1, {{{Q(2)}}}};
  EXPECT_TRUE(tensor_isogeny_class(m, e).is_zero());
  EXPECT_EQ(tensor_dimension(IsogenyType{}), 0u);
}

TEST(TensorClass, TwoIsotypicFactors) {
  // A = E x B^2 with End^0(B) = Q(i), O = Z x Mat_2(Z[i]) embedded diagonally.
  auto qi = quadratic(-1);
  IsogenyType t{{{"E", 1, rationals(), 1}, {"B", 1, qi, 2}}};
  const auto e = endomorphism_algebra(t);
  auto o = standard(e.alg);
  ModulePresentation free{o, 0, 1, {}};
  EXPECT_EQ(tensor_isogeny_class(free, t), t);
  // kill the E factor: relation (1, 0)
  Elt eps_e(e.alg->dim(), Q(0));
  eps_e[0] = Q(1);
  const auto c = tensor_isogeny_class(ModulePresentation{o, 1, 1, {{eps_e}}}, t);
  EXPECT_EQ(c.factors[0].multiplicity, 0u);
  EXPECT_EQ(c.factors[1].multiplicity, 2u);
  EXPECT_EQ(tensor_dimension(c), 2u);
}

TEST(TensorClass, EmbeddingChecked) {
  UpperTriangularExample ex;
  expect_code(errc::embedding_not_algebra_map,
              [&] { tensor_isogeny_class(ex.m1, ex.type, rows({{0, 0, 0, 1}, {0, 1, 0, 0}, {1, 0, 0, 0}})); });
  expect_code(errc::embedding_not_algebra_map, [&] { tensor_isogeny_class(ex.m1, ex.type); });
  expect_code(errc::embedding_not_algebra_map, [&] { tensor_isogeny_class(ex.m1, ex.type, rows({{1, 0, 0, 0}})); });
}

TEST(TensorClass, DuplicateLabels) {
  UpperTriangularExample ex;
  IsogenyType t{{{"E", 1, rationals(), 1}, {"E", 1, rationals(), 1}}};
  expect_code(errc::invalid_argument, [&] { tensor_isogeny_class(ex.m1, t, ex.emb); });
}

TEST(TensorClass, AgreesWithQuotientConstruction) {
  std::mt19937_64 rng(11);
  UpperTriangularExample ex;
  for (int trial = 0; trial < 25; ++trial) {
    std::uniform_int_distribution<std::size_t> d(0, 2);
    const std::size_t r = d(rng), s = 1 + d(rng);
    auto m = random_presentation(ex.o, rng, r, s);
    const auto c = tensor_isogeny_class(m, ex.type, ex.emb);
    const auto oracle = mord::testing::multiplicities_by_quotient(m, ex.type, ex.emb);
    EXPECT_EQ(c.factors[0].multiplicity, oracle[0]) << trial;
  }
  auto qi = quadratic(-1);
  IsogenyType t{{{"E", 1, rationals(), 1}, {"B", 2, qi, 1}}};
  const auto e = endomorphism_algebra(t);
  auto o = standard(e.alg);
  for (int trial = 0; trial < 25; ++trial) {
    auto m = random_presentation(o, rng, 1 + trial % 3, 1 + trial % 2);
    const auto c = tensor_isogeny_class(m, t);
    const auto oracle = mord::testing::multiplicities_by_quotient(m, t, o.basis());
    EXPECT_EQ(c.factors[0].multiplicity, oracle[0]) << trial;
    EXPECT_EQ(c.factors[1].multiplicity, oracle[1]) << trial;
  }
}

TEST(TensorClass, PresentationIndependence) {
  std::mt19937_64 rng(5);
  UpperTriangularExample ex;
  const auto t = ex.tate();
  for (int trial = 0; trial < 20; ++trial) {
    auto m = random_presentation(ex.o, rng, 1 + trial % 2, 1 + trial % 3);
    // same module: extra generator g' = g_1 c with relation g' - g_1 c, plus a redundant relation
    auto m2 = m;
    const auto c = random_element(ex.o, rng);
    for (auto& row : m2.alpha) row.push_back(ex.zero);
    m2.s += 1;
    Elt neg = c;
    for (auto& x : neg) x = -x;
    std::vector<Elt> extra(m2.s, ex.zero);
    extra[0] = neg;
    extra.back() = ex.one;
    m2.alpha.push_back(extra);
    const auto x = random_element(ex.o, rng);
    std::vector<Elt> redundant;
    for (const auto& a : m2.alpha[0]) redundant.push_back(ex.t2->mul(a, x));
    m2.alpha.push_back(redundant);
    m2.r += 2;
    EXPECT_EQ(tensor_isogeny_class(m, ex.type, ex.emb), tensor_isogeny_class(m2, ex.type, ex.emb));
    const auto l1 = tensor_lattice(m, t), l2 = tensor_lattice(m2, t);
    EXPECT_EQ(l1.lattice.basis.rows(), l2.lattice.basis.rows());
    EXPECT_EQ(l1.kernel_divisors, l2.kernel_divisors);
  }
}

TEST(TensorLattice, UpperTriangularExample) {
  UpperTriangularExample ex;
  const auto t = ex.tate();
  const auto l1 = tensor_lattice(ex.m1, t), l2 = tensor_lattice(ex.m2, t), l3 = tensor_lattice(ex.m3, t);
  EXPECT_EQ(l1.lattice.basis.rows(), 2u);
  EXPECT_EQ(l2.lattice.basis.rows(), 2u);
  EXPECT_EQ(l3.lattice.basis.rows(), 0u);
  EXPECT_TRUE(l1.kernel_divisors.empty());
  EXPECT_TRUE(l3.kernel_divisors.empty());
}

TEST(TensorLattice, TorsionModule) {
  auto z = standard(rationals());
  PeriodLattice t;
  t.basis = Matrix<Q>::identity(2);
  t.action.push_back(Matrix<Q>::identity(2));
  const auto l = tensor_lattice(ModulePresentation{z, 1, 1, {{{Q(2)}}}}, t);
  EXPECT_EQ(l.lattice.basis.rows(), 0u);
  EXPECT_EQ(l.kernel_divisors, (std::vector<Z>{2, 2}));
}

TEST(TensorLattice, IdentityPresentation) {
  UpperTriangularExample ex;
  const auto t = ex.tate();
  const auto l = tensor_lattice(ModulePresentation{ex.o, 0, 1, {}}, t);
  EXPECT_EQ(l.lattice.basis.rows(), 4u);
  EXPECT_TRUE(l.kernel_divisors.empty());
  EXPECT_EQ(l.projection, Matrix<Z>::identity(4));
}

TEST(TensorLattice, BiggerRingAsModule) {
  // M = Z[(1+sqrt-3)/2] as a module over O = Z[sqrt-3], T = O
  auto a = quadratic(-3);
  auto o = standard(a);
  const auto t = regular_lattice(o);
  // generators 1, w; relations 1*(1+x) - w*2 and 1*2 + w*(x-1)
  ModulePresentation m{o, 2, 2, {{{Q(1), Q(1)}, {Q(-2), Q(0)}}, {{Q(2), Q(0)}, {Q(-1), Q(1)}}}};
  const auto l = tensor_lattice(m, t);
  EXPECT_EQ(l.lattice.basis.rows(), 2u);
  EXPECT_TRUE(l.kernel_divisors.empty());
  // the inclusion O -> M (1 -> generator 1) induces T -> M (x) T with cokernel of order 2
  ModulePresentation free{o, 0, 1, {}};
  ModuleMap incl{{{Q(1), Q(0)}, {Q(0), Q(0)}}};
  const auto g = induced_lattice_map(free, m, incl, t);
  const Q det = determinant(to_field(g));
  EXPECT_TRUE(det == Q(2) || det == Q(-2));
  EXPECT_EQ(elementary_divisors(Lattice<Z>::from_generators(to_field(g)), Lattice<Z>::standard(2)), (std::vector<Z>{2}));
}

TEST(TensorLattice, ActionChecked) {
  UpperTriangularExample ex;
  auto t = ex.tate();
  t.action.pop_back();
  expect_code(errc::action_mismatch, [&] { tensor_lattice(ex.m1, t); });
  auto t2 = ex.tate();
  std::swap(t2.action[0], t2.action[2]);
  expect_code(errc::action_mismatch, [&] { tensor_lattice(ex.m1, t2); });
  auto t3 = ex.tate();
  t3.basis(0, 0) = Q(2);
  expect_code(errc::action_mismatch, [&] { tensor_lattice(ex.m1, t3); });
}

TEST(Naturality, Examples) {
  UpperTriangularExample ex;
  const auto t = ex.tate();
  EXPECT_TRUE(check_naturality(ex.m1, ex.m1, identity_map(ex.o, 1), t));
  // inclusion M1 = e2 O -> M2 = e1 O sends the generator to g * e12
  ModuleMap incl{{ex.e12}};
  EXPECT_TRUE(check_naturality(ex.m1, ex.m2, incl, t));
  const auto g = induced_lattice_map(ex.m1, ex.m2, incl, t);
  EXPECT_EQ(g.rows(), 2u);
  EXPECT_NE(determinant(to_field(g)), Q(0));
  ModuleMap zero{{ex.zero}};
  EXPECT_TRUE(check_naturality(ex.m1, ex.m2, zero, t));
  EXPECT_TRUE(induced_lattice_map(ex.m1, ex.m2, zero, t).is_zero());
  // M2 -> M1 sending generator to generator is not well defined
  expect_code(errc::not_a_module_map, [&] { check_naturality(ex.m2, ex.m1, identity_map(ex.o, 1), t); });
}

TEST(Properties, RightExactness) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const bool triangular = trial % 2 == 0;
    UpperTriangularExample ex;
    auto o = triangular ? ex.o : standard(quadratic(-5));
    const auto t = triangular ? ex.tate() : regular_lattice(o);
    const std::size_t s1 = 1 + trial % 2, s2 = 1 + (trial / 2) % 3;
    auto m2 = random_presentation(o, rng, trial % 3, s2);
    ModulePresentation m1{o, 0, s1, {}};
    ModuleMap phi;
    for (std::size_t j = 0; j < s1; ++j) {
      phi.emplace_back();
      for (std::size_t k = 0; k < s2; ++k) phi.back().push_back(random_element(o, rng, 1));
    }
    auto m3 = m2;
    for (const auto& row : phi) m3.alpha.push_back(row);
    m3.r += s1;
    const auto g12 = induced_lattice_map(m1, m2, phi, t);
    const auto g23 = induced_lattice_map(m2, m3, identity_map(o, s2), t);
    const std::size_t f2 = tensor_lattice(m2, t).lattice.basis.rows();
    const std::size_t f3 = tensor_lattice(m3, t).lattice.basis.rows();
    EXPECT_TRUE((g12 * g23).is_zero()) << trial;
    if (f2 == 0) continue;
    // kernel of L2 -> L3 is the saturation of the image of L1 -> L2
    const auto ker = integral_left_kernel(g23);
    Submodule<Z> ker_mod = Submodule<Z>::from_generators(to_field(ker));
    Submodule<Z> img = g12.rows() ? Submodule<Z>::from_generators(to_field(g12)) : Submodule<Z>(f2);
    EXPECT_EQ(ker_mod, saturate(img, Submodule<Z>::from_generators(Matrix<Q>::identity(f2)))) << trial;
    // and L2 -> L3 is onto
    if (f3 > 0) {
      EXPECT_EQ(rank_z(g23), f3);
      EXPECT_EQ(Lattice<Z>::from_generators(to_field(g23)), Lattice<Z>::standard(f3)) << trial;
    }
  }
}

TEST(Properties, TorsionVanishing) {
  std::mt19937_64 rng(8);
  auto o = standard(quadratic(-1));
  const auto t = regular_lattice(o);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t s = 1 + trial % 3;
    ModulePresentation m{o, s, s, {}};
    for (std::size_t i = 0; i < s; ++i) {
      m.alpha.emplace_back(s, Elt{0, 0});
      for (std::size_t j = i; j < s; ++j) m.alpha[i][j] = random_element(o, rng);
      if (m.alpha[i][i] == Elt{0, 0}) m.alpha[i][i] = Elt{Q(3), Q(1)};
    }
    const auto l = tensor_lattice(m, t);
    EXPECT_EQ(l.lattice.basis.rows(), 0u);
    IsogenyType e{{{"B", 1, quadratic(-1), 1}}};
    EXPECT_TRUE(tensor_isogeny_class(m, e).is_zero());
  }
}

TEST(Properties, IsogenyCriterion) {
  std::mt19937_64 rng(13);
  auto o = standard(quadratic(-2));
  const auto t = regular_lattice(o);
  int tested = 0;
  for (int trial = 0; trial < 40 && tested < 15; ++trial) {
    const std::size_t s = 1 + trial % 2;
    ModulePresentation free{o, 0, s, {}};
    ModuleMap phi;
    Matrix<Q> rational(2 * s, 2 * s, Q(0));
    for (std::size_t j = 0; j < s; ++j) {
      phi.emplace_back();
      for (std::size_t k = 0; k < s; ++k) phi.back().push_back(random_element(o, rng));
    }
    // phi (x) Q is invertible iff its block matrix over Q is
    const auto g = induced_lattice_map(free, free, phi, t);
    if (determinant(to_field(g)) == Q(0)) continue;
    ++tested;
    EXPECT_EQ(rank_z(g), 2 * s);
    EXPECT_NO_THROW(lattice_index(Lattice<Z>::from_generators(to_field(g)), Lattice<Z>::standard(2 * s)));
  }
  EXPECT_GE(tested, 10);
}

TEST(Properties, RankMatchesDimension) {
  std::mt19937_64 rng(3);
  UpperTriangularExample ex;
  const auto t = ex.tate();
  for (int trial = 0; trial < 25; ++trial) {
    auto m = random_presentation(ex.o, rng, trial % 3, 1 + trial % 2);
    const auto c = tensor_isogeny_class(m, ex.type, ex.emb);
    EXPECT_EQ(tensor_lattice(m, t).lattice.basis.rows(), 2 * tensor_dimension(c)) << trial;
  }
}

TEST(MinimalIsogeny, Examples) {
  auto a = quadratic(-3);
  auto o = standard(a);
  IsogenyType type{{{"E", 1, a, 1}}};
  const auto t = regular_lattice(o);
  const auto same = minimal_isogeny(o, o, type, {t});
  EXPECT_EQ(same.degree, 1);
  EXPECT_TRUE(same.per_prime.empty());
  auto big = Order<Z>::from_basis(a, rows({{1, 0}, {q(1, 2), q(1, 2)}}));
  const auto d = minimal_isogeny(o, big, type, {t});
  EXPECT_EQ(d.degree, 2);
  ASSERT_EQ(d.per_prime.size(), 1u);
  EXPECT_EQ(d.per_prime[0].prime, 2);
  EXPECT_EQ(d.per_prime[0].divisors, (std::vector<Z>{2}));
  EXPECT_EQ(Lattice<Z>::from_generators(d.lattices[0].basis), big.lattice());
  expect_code(errc::not_contained, [&] { minimal_isogeny(big, o, type, {t}); });
}

TEST(MinimalIsogeny, EichlerInsideMatrixOrder) {
  // level-3 Eichler order in Mat_2(Z) acting on Z^2 (x) T(E): Mat_2(Z) already stabilizes it
  auto m2 = matrix_algebra<Z>(2);
  auto eich = Order<Z>::from_basis(m2, rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 3, 0}, {0, 0, 0, 1}}));
  auto full = standard(m2);
  PeriodLattice t;
  t.basis = Matrix<Q>::identity(4);
  for (std::size_t k = 0; k < 4; ++k) {
    const auto b = eich.basis().row_vector(k);
    Matrix<Q> m(4, 4, Q(0));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int u = 0; u < 2; ++u) m(2 * j + u, 2 * i + u) = b[2 * i + j];
    t.action.push_back(m);
  }
  IsogenyType type{{{"E", 1, rationals(), 2}}};
  EXPECT_EQ(minimal_isogeny(eich, full, type, {t}).degree, 1);
}

TEST(MinimalIsogeny, PrimeLocalAndChains) {
  auto a = quadratic(-1);
  auto o = Order<Z>::from_basis(a, rows({{1, 0}, {0, 12}}));
  auto mid = Order<Z>::from_basis(a, rows({{1, 0}, {0, 4}}));
  auto top = standard(a);
  IsogenyType type{{{"E", 1, a, 1}}};
  auto t = regular_lattice(o);
  const auto d_mid = minimal_isogeny(o, mid, type, {t});
  const auto d_top = minimal_isogeny(o, top, type, {t});
  EXPECT_EQ(d_mid.degree, 3);
  EXPECT_EQ(d_top.degree, 12);
  EXPECT_TRUE(Lattice<Z>::from_generators(d_top.lattices[0].basis)
                  .contains(Lattice<Z>::from_generators(d_mid.lattices[0].basis)));
  // the lattice for top is also the minimal one over mid's lattice
  const auto again = minimal_isogeny(mid, top, type, {d_mid.lattices[0]});
  EXPECT_EQ(again.degree, 4);
  EXPECT_EQ(Lattice<Z>::from_generators(again.lattices[0].basis), Lattice<Z>::from_generators(d_top.lattices[0].basis));
  auto t3 = t;
  t3.prime = "3";
  const auto local = minimal_isogeny(o, top, type, {t3});
  EXPECT_EQ(local.degree, 3);
  ASSERT_EQ(local.per_prime.size(), 1u);
  EXPECT_EQ(local.per_prime[0].prime, 3);
}
