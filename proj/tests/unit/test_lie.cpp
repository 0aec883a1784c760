#include <gtest/gtest.h>

#include <random>

#include "symgf/errors.hpp"
#include "symgf/lie.hpp"
#include "symgf/poisson.hpp"
#include "symgf/verify.hpp"
#include "test_support.hpp"

using namespace symgf;
using symgf::testing::max_abs_diff;
using symgf::testing::random_vec;

namespace {

double bch_error(const LieStructure& lie, const Vec& u, const Vec& v, double t, int trunc) {
  Vec a(u.size()), b(v.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    a[i] = t * u[i];
    b[i] = t * v[i];
  }
  const auto series = bch_series<double>(lie, a, b, trunc);
  const Vec oracle = bch_matrix_oracle(lie, a, b);
  return max_abs_diff(series, oracle);
}

}  // namespace

TEST(Lie, BuiltinsSatisfyJacobi) {
  for (const LieStructure& l :
       {LieStructure::so3(), LieStructure::heisenberg(), LieStructure::abelian(4)}) {
    EXPECT_LT(l.jacobi_defect(), 1e-14) << l.name();
  }
  EXPECT_TRUE(LieStructure::abelian(2).is_abelian());
  EXPECT_FALSE(LieStructure::so3().is_abelian());
}

TEST(Lie, RejectsBadStructureConstants) {
  std::vector<double> c(27, 0.0);
  c[(0 * 3 + 1) * 3 + 2] = 1.0;  // [e0,e1] = e2 without [e1,e0] = -e2
  EXPECT_THROW(LieStructure(3, c), ArgumentError);
  // antisymmetric but not Jacobi: [e0,e1] = e0, [e0,e2] = e1, [e1,e2] = e0
  std::vector<double> bad(27, 0.0);
  auto set = [&](int i, int j, int k, double v) {
    bad[(i * 3 + j) * 3 + k] = v;
    bad[(j * 3 + i) * 3 + k] = -v;
  };
  set(0, 1, 0, 1.0);
  set(0, 2, 1, 1.0);
  set(1, 2, 0, 1.0);
  EXPECT_THROW(LieStructure(3, bad), ArgumentError);
}

TEST(Lie, So3BracketIsCrossProduct) {
  const LieStructure so3 = LieStructure::so3();
  const Vec u{1.0, 2.0, 3.0}, v{-0.5, 0.25, 2.0};
  const Vec w = so3.bracket<double>(u, v);
  EXPECT_NEAR(w[0], u[1] * v[2] - u[2] * v[1], 1e-15);
  EXPECT_NEAR(w[1], u[2] * v[0] - u[0] * v[2], 1e-15);
  EXPECT_NEAR(w[2], u[0] * v[1] - u[1] * v[0], 1e-15);
}

TEST(Lie, BchSeriesMatchesMatrixOracleToTruncationOrder) {
  std::mt19937_64 rng(11);
  const LieStructure so3 = LieStructure::so3();
  const Vec u = random_vec(rng, 3, 1.0);
  const Vec v = random_vec(rng, 3, 1.0);
  for (int n = 2; n <= 4; ++n) {
    const double e1 = bch_error(so3, u, v, 0.08, n);
    const double e2 = bch_error(so3, u, v, 0.04, n);
    const double expect = std::ldexp(1.0, n + 1);
    EXPECT_NEAR(e1 / e2, expect, 0.2 * expect) << "trunc " << n;
  }
}

TEST(Lie, HeisenbergSeriesIsExactFromDegreeTwo) {
  const LieStructure h = LieStructure::heisenberg();
  const Vec u{0.3, -0.7, 0.2}, v{0.5, 0.4, -0.1};
  for (int n = 2; n <= 4; ++n) EXPECT_LT(bch_error(h, u, v, 1.0, n), 1e-13);
  EXPECT_GT(bch_error(h, u, v, 1.0, 1), 1e-3);
}

TEST(Lie, MonoidOrderLimits) {
  EXPECT_THROW(lie_monoid(LieStructure::so3(), 5), UnsupportedOrderError);
  EXPECT_THROW(lie_monoid(LieStructure::so3(), 0), ArgumentError);
  const Vec u{0.1, 0.2, 0.3};
  EXPECT_THROW(bch_series<double>(LieStructure::so3(), u, u, 5), UnsupportedOrderError);
}

TEST(Lie, MonoidDomainRadius) {
  const LieStructure so3 = LieStructure::so3();
  EXPECT_NEAR(lie_monoid(so3, 4).domain_radius(), 0.5 * std::log(2.0) / so3.norm(), 1e-15);
  EXPECT_TRUE(std::isinf(lie_monoid(LieStructure::abelian(2), 4).domain_radius()));
}

TEST(Lie, MonoidValueIsPairingWithBch) {
  const LieStructure so3 = LieStructure::so3();
  const MonoidGenFun s = lie_monoid(so3, 3);
  const Vec p1{0.01, -0.02, 0.03}, p2{0.02, 0.01, -0.01}, x{0.5, -1.0, 0.25};
  const Vec b = bch_series<double>(so3, p1, p2, 3);
  EXPECT_NEAR(s.value(p1, p2, x), b[0] * x[0] + b[1] * x[1] + b[2] * x[2], 1e-16);
}

TEST(Lie, BivectorIsKirillovKostant) {
  for (const LieStructure& l : {LieStructure::so3(), LieStructure::heisenberg()}) {
    const PoissonField alpha = poisson_bivector(lie_monoid(l, 4));
    const PolyPoisson kk = kirillov_kostant(l);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      const Vec x = random_vec(rng, 3, 1.0);
      const Matrix a = alpha(x);
      const Matrix expect = kk(x);
      EXPECT_LT(max_abs_diff(a, expect), 1e-10) << l.name();
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double cx = 0.0;
          for (int k = 0; k < 3; ++k) cx += l.c(i, j, k) * x[k];
          EXPECT_NEAR(a(i, j), cx, 1e-10);
        }
    }
  }
}

TEST(Lie, AssociativityDefectScalesWithTruncation) {
  const MonoidGenFun exact = lie_monoid(LieStructure::heisenberg(), 2);
  CheckOptions opts;
  opts.grid.n = 40;
  opts.grid.p_radius = 0.05;
  EXPECT_LT(check_associativity(exact, opts).max, 1e-14);

  const LieStructure so3 = LieStructure::so3();
  for (int n = 2; n <= 4; ++n) {
    const MonoidGenFun s = lie_monoid(so3, n);
    opts.grid.p_radius = 0.012;
    const double r1 = check_associativity(s, opts).max;
    opts.grid.p_radius = 0.006;
    const double r2 = check_associativity(s, opts).max;
    const double expect = std::ldexp(1.0, n + 1);
    EXPECT_NEAR(r1 / r2, expect, 0.2 * expect) << "trunc " << n;
  }
}

TEST(Lie, RepresentationIsValidated) {
  LieStructure so3 = LieStructure::so3();
  EXPECT_THROW(so3.set_representation({Matrix::identity(3)}), ArgumentError);
  ASSERT_EQ(so3.representation().size(), 3u);
}
