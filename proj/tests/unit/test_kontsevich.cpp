#include <gtest/gtest.h>

#include <random>

#include "symgf/errors.hpp"
#include "symgf/kontsevich.hpp"
#include "symgf/lie.hpp"
#include "symgf/poisson.hpp"
#include "symgf/verify.hpp"
#include "test_support.hpp"

using namespace symgf;
using symgf::testing::random_vec;

namespace {

PolyPoisson quadratic_2d() {
  using E = PolyPoisson::Entry;
  return PolyPoisson(2, {E{0, 1, {1.0, {0, 0}}}, E{0, 1, {1.0, {2, 0}}},
                         E{0, 1, {0.5, {1, 1}}}});
}

double assoc_max(const MonoidGenFun& s, int n = 60) {
  CheckOptions opts;
  opts.grid.n = n;
  opts.grid.p_radius = 0.2;
  return check_associativity(s, opts).max;
}

}  // namespace

TEST(Kontsevich, ConstantAlphaIsTheSymplecticGenfun) {
  const Matrix j = standard_jinv(4);
  const MonoidGenFun k = kontsevich_monoid(PolyPoisson::constant(j), 1.0, 1);
  const MonoidGenFun s = symplectic_monoid(j);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec pt = random_vec(rng, 12, 1.0);
    const Jet a = k.genfun().taylor(pt, 3);
    const Jet b = s.genfun().taylor(pt, 3);
    ASSERT_EQ(a.coeffs().size(), b.coeffs().size());
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) EXPECT_EQ(a.coeffs()[i], b.coeffs()[i]);
  }
}

TEST(Kontsevich, LinearBivectorIsEpsAlpha) {
  const PolyPoisson kk = kirillov_kostant(LieStructure::so3());
  const double eps = 0.1;
  const PoissonField alpha = poisson_bivector(kontsevich_monoid(kk, eps, 1));
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec x = random_vec(rng, 3, 1.0);
    Matrix expect = kk(x);
    expect *= eps;
    EXPECT_LT(symgf::testing::max_abs_diff(alpha(x), expect), 1e-10);
  }
}

TEST(Kontsevich, OrderOneDefectIsSecondOrderInEps) {
  const PolyPoisson kk = kirillov_kostant(LieStructure::so3());
  const double r1 = assoc_max(kontsevich_monoid(kk, 0.1, 1));
  const double r2 = assoc_max(kontsevich_monoid(kk, 0.05, 1));
  EXPECT_NEAR(r1 / r2, 4.0, 0.5);
}

TEST(Kontsevich, FitRecoversTreeCoefficients) {
  const KontsevichFit& fit = kontsevich_order2_fit();
  EXPECT_NEAR(fit.c_a, 1.0 / 12.0, 1e-10);
  EXPECT_NEAR(fit.c_b, -1.0 / 12.0, 1e-10);
  EXPECT_LT(fit.floor, kKontsevichFitGate);
  EXPECT_GT(fit.samples, 0);
  // a different seed lands on the same coefficients
  const KontsevichFit other = fit_kontsevich_order2(77, 3, 20);
  EXPECT_NEAR(other.c_a, fit.c_a, 1e-10);
  EXPECT_NEAR(other.c_b, fit.c_b, 1e-10);
}

TEST(Kontsevich, OrderTwoDefectIsThirdOrderInEps) {
  const PolyPoisson a = quadratic_2d();
  const double r1 = assoc_max(kontsevich_monoid(a, 0.2, 2));
  const double r2 = assoc_max(kontsevich_monoid(a, 0.1, 2));
  EXPECT_NEAR(r1 / r2, 8.0, 1.0);
}

TEST(Kontsevich, Errors) {
  const PolyPoisson kk = kirillov_kostant(LieStructure::so3());
  EXPECT_THROW(kontsevich_monoid(kk, 0.1, 3), UnsupportedOrderError);
  EXPECT_THROW(kontsevich_monoid(kk, 0.1, 0), ArgumentError);
  EXPECT_THROW(kontsevich_monoid(kk, 0.0, 1), ArgumentError);
  EXPECT_THROW(kontsevich_monoid(kk, 1.5, 1), ArgumentError);
  using E = PolyPoisson::Entry;
  // alpha^{12} = x1, alpha^{13} = 1 fails Jacobi
  const PolyPoisson bad(3, {E{0, 1, {1.0, {1, 0, 0}}}, E{0, 2, {1.0, {0, 0, 0}}}});
  EXPECT_GT(jacobi_residual(bad.field(), Vec{0.1, 0.2, 0.3}), 0.5);
  EXPECT_THROW(kontsevich_monoid(bad, 0.1, 1), ArgumentError);
}
