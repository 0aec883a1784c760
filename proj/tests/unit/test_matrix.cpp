#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "symgf/errors.hpp"
#include "symgf/matrix.hpp"

using namespace symgf;

namespace {

Matrix random_matrix(std::mt19937_64& rng, int n, double norm) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = u(rng);
  return a * (norm / a.norm1());
}

// Plain Taylor summation; independent of the scaling-and-squaring path.
Matrix exp_by_series(const Matrix& a) {
  const int n = a.rows();
  Matrix sum = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  for (int k = 1; k < 60; ++k) {
    term = term * a * (1.0 / k);
    sum += term;
  }
  return sum;
}

}  // namespace

TEST(Matrix, ExpOfZeroIsIdentity) {
  EXPECT_EQ(mat_exp(Matrix(3, 3)), Matrix::identity(3));
}

TEST(Matrix, RotationClosedForm) {
  const double th = std::numbers::pi / 6;
  const Matrix r = mat_exp(Matrix{{0, th}, {-th, 0}});
  EXPECT_NEAR(r(0, 0), std::cos(th), 1e-15);
  EXPECT_NEAR(r(0, 1), std::sin(th), 1e-15);
  EXPECT_NEAR(r(1, 0), -std::sin(th), 1e-15);
  EXPECT_NEAR(r(1, 1), std::cos(th), 1e-15);
}

TEST(Matrix, ExpMatchesSeries) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = random_matrix(rng, 4, 2.0);
    EXPECT_LT((mat_exp(a) - exp_by_series(a)).max_abs(), 1e-13);
  }
}

TEST(Matrix, LogExpRoundTrip) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    const Matrix a = random_matrix(rng, n, 0.5);
    EXPECT_LT((mat_log(exp_by_series(a)) - a).max_abs(), 1e-10);
  }
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = random_matrix(rng, 3, 1.0);
    EXPECT_LT((mat_log(mat_exp(a)) - a).max_abs(), 1e-10);
  }
}

TEST(Matrix, ExpTimesExpOfNegative) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_matrix(rng, 3, 1.0);
    const Matrix a_neg = a * -1.0;
    EXPECT_LT((mat_exp(a) * mat_exp(a_neg) - Matrix::identity(3)).max_abs(), 1e-12);
  }
}

TEST(Matrix, LogOutsideDomain) {
  EXPECT_THROW(mat_log(Matrix{{-1, 0}, {0, -1}}), NumericDomainError);
  EXPECT_THROW(mat_log(Matrix{{0, 0}, {0, 1}}), NumericDomainError);
}

TEST(Matrix, SolveAndInverse) {
  const Matrix a{{4, 1, 0}, {1, 3, 1}, {0, 1, 2}};
  const Vec b{1, 2, 3};
  const Vec x = solve(a, b);
  const Vec ax = a * x;
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(ax[i], b[i], 1e-14);
  EXPECT_LT((a * inverse(a) - Matrix::identity(3)).max_abs(), 1e-15);
  EXPECT_GT(LuDecomposition(a).condition1(), 1.0);
}

TEST(Matrix, SingularAndShapeErrors) {
  const Matrix s{{1, 2}, {2, 4}};
  EXPECT_TRUE(LuDecomposition(s).singular());
  EXPECT_TRUE(std::isinf(LuDecomposition(s).condition1()));
  EXPECT_THROW(solve(s, Vec{1, 1}), ArgumentError);
  EXPECT_THROW(Matrix(2, 3) * Matrix(2, 3), ArgumentError);
  EXPECT_THROW(LuDecomposition(Matrix(2, 3)), ArgumentError);
  EXPECT_THROW((Matrix{{1, 2}, {3}}), ArgumentError);
}
