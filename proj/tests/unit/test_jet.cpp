#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>
#include <thread>
#include <vector>

#include "symgf/errors.hpp"
#include "symgf/jet.hpp"

using namespace symgf;

namespace {

void expect_jets_equal(const Jet& a, const Jet& b) {
  ASSERT_EQ(a.nvars(), b.nvars());
  ASSERT_EQ(a.order(), b.order());
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    EXPECT_EQ(a.coeffs()[i], b.coeffs()[i]) << "coefficient " << i;
  }
}

void expect_jets_near(const Jet& a, const Jet& b, double tol) {
  ASSERT_EQ(a.nvars(), b.nvars());
  ASSERT_EQ(a.order(), b.order());
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    EXPECT_NEAR(a.coeffs()[i], b.coeffs()[i], tol) << "coefficient " << i;
  }
}

Jet random_jet(std::mt19937_64& rng, int nvars, int order) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Jet j(nvars, order);
  for (auto& c : j.coeffs()) c = u(rng);
  return j;
}

template <class T>
T test_function(const std::vector<T>& x) {
  // Mix of every univariate primitive plus products.
  return exp(x[0] * x[1]) + sin(x[2]) * cos(x[0]) + log(2.0 + x[1] * x[1]) +
         sqrt(3.0 + x[2]) * pow(x[0], 3) / (1.5 + x[1]);
}

double test_function_value(const std::vector<double>& x) {
  return std::exp(x[0] * x[1]) + std::sin(x[2]) * std::cos(x[0]) +
         std::log(2.0 + x[1] * x[1]) +
         std::sqrt(3.0 + x[2]) * std::pow(x[0], 3) / (1.5 + x[1]);
}

}  // namespace

TEST(Jet, CoordinateFunction) {
  const Jet a = jet_var(0, 2.0, 2, 2);
  EXPECT_EQ(a.value(), 2.0);
  EXPECT_EQ(a.grad(0), 1.0);
  EXPECT_EQ(a.grad(1), 0.0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_EQ(a.hess(i, j), 0.0);

  const Jet b = jet_var(1, 0.0, 3, 1);
  EXPECT_EQ(b.value(), 0.0);
  EXPECT_EQ(b.gradient(), (std::vector<double>{0.0, 1.0, 0.0}));
}

TEST(Jet, BilinearProduct) {
  const double a = 1.25, b = -0.5;
  const Jet p = jet_var(0, a, 2, 2) * jet_var(1, b, 2, 2);
  EXPECT_EQ(p.value(), a * b);
  EXPECT_EQ(p.grad(0), b);
  EXPECT_EQ(p.grad(1), a);
  EXPECT_EQ(p.hess(0, 1), 1.0);
  EXPECT_EQ(p.hess(1, 0), 1.0);
  EXPECT_EQ(p.hess(0, 0), 0.0);
}

TEST(Jet, PolynomialSquare) {
  const Jet x = jet_var(0, 0.0, 1, 2);
  const Jet s = (1.0 + x) * (1.0 + x);
  EXPECT_EQ(s.value(), 1.0);
  EXPECT_EQ(s.grad(0), 2.0);
  EXPECT_EQ(s.hess(0, 0), 2.0);
  EXPECT_EQ(s.coeff(2), 1.0);
}

TEST(Jet, ScaleAndCancel) {
  std::mt19937_64 rng(7);
  const Jet f = random_jet(rng, 3, 3);
  EXPECT_TRUE(jet_scale(f, 0.0).is_zero());
  EXPECT_TRUE(jet_add(f, jet_scale(f, -1.0)).is_zero());
}

TEST(Jet, ThirdOrderCube) {
  const Jet x = jet_var(0, 0.5, 2, 3);
  const Jet y = jet_var(1, -2.0, 2, 3);
  const Jet f = x * x * y;
  EXPECT_DOUBLE_EQ(f.third(0, 0, 1), 2.0);
  EXPECT_DOUBLE_EQ(f.third(0, 1, 0), 2.0);
  EXPECT_DOUBLE_EQ(f.third(1, 0, 0), 2.0);
  EXPECT_DOUBLE_EQ(f.third(0, 0, 0), 0.0);
  EXPECT_DOUBLE_EQ(f.hess(0, 0), 2.0 * -2.0);
  EXPECT_DOUBLE_EQ(f.hess(0, 1), 2.0 * 0.5);
}

TEST(Jet, ArithmeticIsAssociativeAndCommutative) {
  std::mt19937_64 rng(11);
  for (int order = 0; order <= 3; ++order) {
    // Dyadic coefficients keep every product exact in floating point.
    auto dyadic = [&](int nv) {
      std::uniform_int_distribution<int> u(-8, 8);
      Jet j(nv, order);
      for (auto& c : j.coeffs()) c = u(rng) / 4.0;
      return j;
    };
    const Jet a = dyadic(3), b = dyadic(3), c = dyadic(3);
    expect_jets_equal(a + b, b + a);
    expect_jets_equal(a * b, b * a);
    expect_jets_equal((a + b) + c, a + (b + c));
    expect_jets_equal((a * b) * c, a * (b * c));
  }
}

TEST(Jet, TruncationIsConsistent) {
  // The degree-k part of a product depends only on degree <= k parts.
  std::mt19937_64 rng(3);
  Jet a = random_jet(rng, 2, 3);
  Jet b = random_jet(rng, 2, 3);
  const Jet full = a * b;
  const auto& layout = a.layout();
  for (int idx = layout.degree_begin(3); idx < static_cast<int>(layout.size()); ++idx) {
    a.coeff(idx) = 0.0;
  }
  const Jet truncated = a * b;
  for (int idx = 0; idx < layout.degree_begin(3); ++idx) {
    EXPECT_EQ(full.coeff(idx), truncated.coeff(idx));
  }
}

TEST(Jet, FiniteDifferenceAgreement) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x0{u(rng), u(rng), u(rng)};
    const Jet f = test_function(seed_jets(x0, 2));
    EXPECT_NEAR(f.value(), test_function_value(x0), 1e-14);
    const double hg = 1e-5;
    const double hh = 1e-4;
    for (int i = 0; i < 3; ++i) {
      auto xp = x0, xm = x0;
      xp[i] += hg;
      xm[i] -= hg;
      const double fd = (test_function_value(xp) - test_function_value(xm)) / (2 * hg);
      EXPECT_LT(std::abs(fd - f.grad(i)), 1e-6 * std::max(1.0, std::abs(fd)));
      for (int j = 0; j < 3; ++j) {
        auto at = [&](double si, double sj) {
          auto y = x0;
          y[i] += si * hh;
          y[j] += sj * hh;
          return test_function_value(y);
        };
        const double fdh =
            (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4 * hh * hh);
        EXPECT_LT(std::abs(fdh - f.hess(i, j)), 1e-6 * std::max(1.0, std::abs(fdh)))
            << i << "," << j;
      }
    }
  }
}

TEST(Jet, HessianAndThirdAreSymmetric) {
  const std::vector<double> x0{0.3, -0.2, 0.7};
  const Jet f = test_function(seed_jets(x0, 3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      EXPECT_EQ(f.hess(i, j), f.hess(j, i));
      for (int k = 0; k < 3; ++k) {
        EXPECT_EQ(f.third(i, j, k), f.third(k, i, j));
        EXPECT_EQ(f.third(i, j, k), f.third(j, i, k));
      }
    }
}

TEST(Jet, UnivariateIdentities) {
  const std::vector<double> x0{0.4, 0.9};
  const auto x = seed_jets(x0, 3);
  expect_jets_near(exp(log(x[1])), x[1], 1e-14);
  expect_jets_near(sin(x[0]) * sin(x[0]) + cos(x[0]) * cos(x[0]),
                   Jet::constant(1.0, 2, 3), 1e-14);
  expect_jets_near(sqrt(x[1]) * sqrt(x[1]), x[1], 1e-14);
  expect_jets_near(x[0] / x[1] * x[1], x[0], 1e-14);
  expect_jets_near(pow(x[0], 3), x[0] * x[0] * x[0], 1e-15);
}

TEST(Jet, DerivativeMatchesCoefficients) {
  const std::vector<double> x0{0.1, 0.2, -0.3};
  const Jet f = test_function(seed_jets(x0, 3));
  for (int v = 0; v < 3; ++v) {
    const Jet df = derivative(f, v);
    EXPECT_EQ(df.order(), 2);
    EXPECT_NEAR(df.value(), f.grad(v), 1e-15);
    for (int i = 0; i < 3; ++i) {
      EXPECT_NEAR(df.grad(i), f.hess(v, i), 1e-14);
      for (int j = 0; j < 3; ++j) EXPECT_NEAR(df.hess(i, j), f.third(v, i, j), 1e-13);
    }
  }
}

TEST(Jet, SubstituteIsTheChainRule) {
  // f(g(z)) expanded directly vs. f expanded at g(z0) then substituted.
  const std::vector<double> z0{0.25, -0.4};
  const auto z = seed_jets(z0, 3);
  std::vector<Jet> g{sin(z[0]) + z[1] * z[1], exp(z[1]) * z[0], z[0] - 2.0 * z[1]};
  const Jet direct = test_function(g);
  const Jet tf = test_function(seed_jets(values_of(g), 3));
  expect_jets_near(substitute(tf, g), direct, 1e-13);
}

TEST(Jet, RestrictVars) {
  const std::vector<double> x0{0.3, 0.5, -0.1};
  const Jet f = test_function(seed_jets(x0, 3));
  const std::vector<int> keep{0, -1, 1};
  const Jet r = restrict_vars(f, keep, 2);
  const Jet direct = [&] {
    const auto y = seed_jets(std::vector<double>{x0[0], x0[2]}, 3);
    return test_function(std::vector<Jet>{y[0], Jet::constant(x0[1], 2, 3), y[1]});
  }();
  expect_jets_near(r, direct, 1e-14);
}

TEST(Jet, Errors) {
  EXPECT_THROW(jet_var(2, 0.0, 2, 1), ArgumentError);
  EXPECT_THROW(jet_var(-1, 0.0, 2, 1), ArgumentError);
  EXPECT_THROW(jet_var(0, 0.0, 2, 4), ArgumentError);
  EXPECT_THROW(jet_var(0, 0.0, 2, 1) + jet_var(0, 0.0, 3, 1), ArgumentError);
  EXPECT_THROW(jet_mul(jet_var(0, 0.0, 2, 1), jet_var(0, 0.0, 2, 2)), ArgumentError);
  EXPECT_THROW(derivative(jet_var(0, 0.0, 2, 1), 2), ArgumentError);
}

TEST(Jet, LayoutIsSharedAcrossThreads) {
  std::vector<std::shared_ptr<const JetLayout>> seen(4);
  std::vector<std::thread> workers;
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&, t] { seen[t] = JetLayout::get(5, 3); });
  }
  for (auto& w : workers) w.join();
  for (int t = 1; t < 4; ++t) EXPECT_EQ(seen[0].get(), seen[t].get());
}
