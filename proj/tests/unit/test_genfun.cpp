#include <gtest/gtest.h>

#include <random>

#include "symgf/errors.hpp"
#include "symgf/genfun.hpp"
#include "symgf/kontsevich.hpp"
#include "symgf/lie.hpp"
#include "symgf/poly.hpp"
#include "test_support.hpp"

using namespace symgf;
using symgf::testing::random_vec;

namespace {

std::vector<Vec> base_points(int d, int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vec> pts;
  for (int i = 0; i < n; ++i) pts.push_back(random_vec(rng, d, 1.0));
  return pts;
}

SmoothMap bent_map() {
  return SmoothMap(
      2, 2,
      [](std::span<const Jet> x) {
        return std::vector<Jet>{x[0] + 0.1 * x[1] * x[1], sin(x[1]) + 0.2 * x[0] * x[1]};
      },
      "bent");
}

}  // namespace

TEST(GenFun, IdentityIsPairing) {
  const GenFun id = identity_genfun(3);
  EXPECT_EQ(id.m(), 3);
  EXPECT_EQ(id.n(), 3);
  const Vec p{0.5, -1.0, 2.0};
  const Vec x{1.0, 3.0, 0.25};
  EXPECT_DOUBLE_EQ(id.value(p, x), 0.5 - 3.0 + 0.5);
}

TEST(GenFun, UnitHasNoCovectorSlot) {
  const GenFun e = unit_genfun(2);
  EXPECT_EQ(e.m(), 0);
  EXPECT_EQ(e.n(), 2);
  const Vec none;
  const Vec x{0.3, -0.7};
  EXPECT_EQ(e.value(none, x), 0.0);
}

TEST(GenFun, ArityIsChecked) {
  const GenFun id = identity_genfun(2);
  const auto args = seed_jets(Vec{1.0, 2.0, 3.0}, 1);
  EXPECT_THROW(id.eval(args), ArgumentError);
  EXPECT_THROW(identity_genfun(0), ArgumentError);
}

TEST(GenFun, CotangentLiftAndBaseMap) {
  const SmoothMap phi = bent_map();
  const GenFun lift = cotangent_lift(phi);
  const Vec p{0.4, -0.3};
  const Vec x{0.2, 0.9};
  const Vec image = phi(x);
  EXPECT_NEAR(lift.value(p, x), image[0] * p[0] + image[1] * p[1], 1e-15);

  const Vec b = base_map(lift, x);
  EXPECT_NEAR(b[0], image[0], 1e-15);
  EXPECT_NEAR(b[1], image[1], 1e-15);

  const Matrix jb = base_map(lift).jacobian(x);
  const Matrix jp = phi.jacobian(x);
  EXPECT_LT(symgf::testing::max_abs_diff(jb, jp), 1e-15);
}

TEST(GenFun, TensorSplitsSlots) {
  const GenFun f = cotangent_lift(bent_map());
  const GenFun g = identity_genfun(1);
  const GenFun t = tensor(f, g);
  EXPECT_EQ(t.m(), 3);
  EXPECT_EQ(t.n(), 3);
  // slots: (p_f, p_g, x_f, x_g)
  const Vec p{0.1, 0.2, 0.3};
  const Vec x{0.4, 0.5, 0.6};
  const double expect = f.value(Vec{0.1, 0.2}, Vec{0.4, 0.5}) + 0.3 * 0.6;
  EXPECT_NEAR(t.value(p, x), expect, 1e-15);
}

TEST(GenFun, MonoidShapeIsChecked) {
  EXPECT_THROW(MonoidGenFun(identity_genfun(2)), ArgumentError);
  const MonoidGenFun s = symplectic_monoid(standard_jinv(2));
  EXPECT_EQ(s.d(), 2);
}

TEST(GenFun, SymplecticClosedForm) {
  const Matrix jinv = standard_jinv(2);
  const MonoidGenFun s = symplectic_monoid(jinv);
  const Vec p1{0.3, -0.2}, p2{0.1, 0.4}, x{0.7, -1.1};
  double expect = (p1[0] + p2[0]) * x[0] + (p1[1] + p2[1]) * x[1];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) expect += 0.5 * p1[i] * jinv(i, j) * p2[j];
  EXPECT_NEAR(s.value(p1, p2, x), expect, 1e-16);
}

TEST(GenFun, SymplecticValidation) {
  EXPECT_THROW(symplectic_monoid(Matrix(3, 3)), ArgumentError);
  EXPECT_THROW(symplectic_monoid(Matrix(2, 2)), ArgumentError);
  EXPECT_THROW(symplectic_monoid(Matrix{{0.0, 1.0}, {1.0, 0.0}}), ArgumentError);
  EXPECT_THROW(standard_jinv(3), ArgumentError);
}

TEST(GenFun, BuiltinsAreNormalized) {
  std::vector<MonoidGenFun> monoids{
      symplectic_monoid(standard_jinv(2)),
      symplectic_monoid(standard_jinv(4)),
      lie_monoid(LieStructure::so3(), 4),
      lie_monoid(LieStructure::heisenberg(), 3),
      kontsevich_monoid(kirillov_kostant(LieStructure::so3()), 0.3, 1),
      kontsevich_monoid(kirillov_kostant(LieStructure::so3()), 0.3, 2),
  };
  for (const MonoidGenFun& s : monoids) {
    const auto pts = base_points(s.d(), 100, 7);
    const NormalizationDefect def = normalization_defect(s, pts);
    EXPECT_LE(def.value, 1e-12) << s.label();
    EXPECT_LE(def.gradient, 1e-12) << s.label();
  }
}

TEST(GenFun, BaseMapOfMonoidIsDiagonal) {
  const MonoidGenFun s = lie_monoid(LieStructure::so3(), 4);
  const Vec x{0.2, -0.5, 0.9};
  const Vec b = base_map(s, x);
  ASSERT_EQ(b.size(), 6u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(b[i], x[i], 1e-15);
    EXPECT_NEAR(b[3 + i], x[i], 1e-15);
  }
}

TEST(GenFun, DomainRadiusAndLabel) {
  const GenFun id = identity_genfun(1);
  EXPECT_TRUE(std::isinf(id.domain_radius()));
  EXPECT_EQ(id.with_domain_radius(0.5).domain_radius(), 0.5);
  EXPECT_EQ(id.with_label("x").label(), "x");
  EXPECT_THROW(id.with_domain_radius(0.0), ArgumentError);
  const GenFun t = tensor(id, id.with_domain_radius(0.25));
  EXPECT_EQ(t.domain_radius(), 0.25);
}
