#include <gtest/gtest.h>

#include <random>

#include "symgf/errors.hpp"
#include "symgf/genfun.hpp"
#include "symgf/lie.hpp"
#include "symgf/poly.hpp"
#include "test_support.hpp"

using namespace symgf;
using symgf::testing::random_vec;

TEST(Poly, ValueMatchesClosedForm) {
  // 2 p1 x1^2 - 0.5 p1 p2 x2
  const GenFun f = poly_genfun(2, 2, {{2.0, {1, 0}, {2, 0}}, {-0.5, {1, 1}, {0, 1}}});
  const Vec p{0.3, -0.4}, x{1.5, 0.7};
  EXPECT_NEAR(f.value(p, x), 2.0 * 0.3 * 1.5 * 1.5 - 0.5 * 0.3 * -0.4 * 0.7, 1e-15);
  const Jet t = f.taylor(p, x, 2);
  EXPECT_NEAR(t.grad(2), 4.0 * 0.3 * 1.5, 1e-15);
  EXPECT_NEAR(t.hess(0, 1), -0.5 * 0.7, 1e-15);
}

TEST(Poly, RejectsTermsConstantInP) {
  EXPECT_THROW(poly_genfun(1, 1, {{1.0, {0}, {2}}}), InvalidGenFunError);
  EXPECT_THROW(poly_genfun(1, 1, {{1.0, {0}, {0}}}), InvalidGenFunError);
  EXPECT_NO_THROW(poly_genfun(1, 1, {{0.0, {0}, {2}}}));
}

TEST(Poly, RejectsBadExponents) {
  EXPECT_THROW(poly_genfun(1, 1, {{1.0, {-1}, {1}}}), InputError);
  EXPECT_THROW(poly_genfun(1, 1, {{1.0, {1, 0}, {1}}}), InputError);
}

TEST(Poly, SymplecticAsPolynomialAgrees) {
  const MonoidGenFun poly = poly_monoid(
      2, {{1.0, {1, 0, 0, 0}, {1, 0}},
          {1.0, {0, 1, 0, 0}, {0, 1}},
          {1.0, {0, 0, 1, 0}, {1, 0}},
          {1.0, {0, 0, 0, 1}, {0, 1}},
          {-0.5, {1, 0, 0, 1}, {0, 0}},
          {0.5, {0, 1, 1, 0}, {0, 0}}});
  const MonoidGenFun ref = symplectic_monoid(standard_jinv(2));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const Vec p1 = random_vec(rng, 2, 0.5), p2 = random_vec(rng, 2, 0.5),
              x = random_vec(rng, 2, 1.0);
    EXPECT_NEAR(poly.value(p1, p2, x), ref.value(p1, p2, x), 1e-15);
  }
}

TEST(Poly, MonomialOnJets) {
  const auto v = seed_jets(Vec{2.0, 3.0}, 2);
  const std::vector<int> e{2, 1};
  const Jet m = monomial(v, e);
  EXPECT_DOUBLE_EQ(m.value(), 12.0);
  EXPECT_DOUBLE_EQ(m.grad(0), 12.0);
  EXPECT_DOUBLE_EQ(m.grad(1), 4.0);
  EXPECT_DOUBLE_EQ(m.hess(0, 0), 6.0);
}

TEST(PolyPoisson, AntisymmetryAndEntryConventions) {
  using E = PolyPoisson::Entry;
  const PolyPoisson a(3, {E{0, 1, {2.0, {0, 0, 1}}}, E{2, 1, {1.0, {1, 0, 0}}}});
  const Vec x{0.5, 0.0, 3.0};
  const Matrix m = a(x);
  EXPECT_DOUBLE_EQ(m(0, 1), 6.0);
  EXPECT_DOUBLE_EQ(m(1, 0), -6.0);
  EXPECT_DOUBLE_EQ(m(1, 2), -0.5);
  EXPECT_DOUBLE_EQ(m(2, 1), 0.5);
  EXPECT_EQ(a.degree(), 1);
  EXPECT_FALSE(a.is_constant());
  EXPECT_THROW(PolyPoisson(2, {E{1, 1, {1.0, {0, 0}}}}), InputError);
}

TEST(PolyPoisson, DerivativeAndJets) {
  using E = PolyPoisson::Entry;
  const PolyPoisson a(2, {E{0, 1, {1.0, {2, 1}}}});
  const PolyPoisson da = a.derivative(0);
  EXPECT_DOUBLE_EQ(da(Vec{3.0, 2.0})(0, 1), 12.0);
  const auto jets = a.jets(seed_jets(Vec{3.0, 2.0}, 1));
  EXPECT_DOUBLE_EQ(jets[1].value(), 18.0);
  EXPECT_DOUBLE_EQ(jets[1].grad(0), 12.0);
  EXPECT_DOUBLE_EQ(jets[1].grad(1), 9.0);
  EXPECT_DOUBLE_EQ(jets[2].grad(1), -9.0);
}

TEST(PolyPoisson, LinearIsKirillovKostant) {
  const LieStructure so3 = LieStructure::so3();
  const PolyPoisson kk = PolyPoisson::linear(3, so3.constants());
  const Matrix m = kk(Vec{0.0, 0.0, 1.0});
  EXPECT_DOUBLE_EQ(m(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(m(0, 2), 0.0);
  EXPECT_DOUBLE_EQ(m(1, 2), 0.0);
  EXPECT_LT(jacobi_residual(kk.field(), Vec{0.3, -0.2, 0.9}), 1e-15);
}

TEST(PolyPoisson, ConstantRoundTrip) {
  const Matrix j = standard_jinv(4);
  const PolyPoisson c = PolyPoisson::constant(j);
  EXPECT_TRUE(c.is_constant());
  EXPECT_EQ(c.degree(), 0);
  EXPECT_EQ(c(Vec{1.0, 2.0, 3.0, 4.0}).max_abs(), 1.0);
  EXPECT_LT(symgf::testing::max_abs_diff(c(Vec{1.0, 2.0, 3.0, 4.0}), j), 1e-16);
}
