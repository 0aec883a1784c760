#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "symgf/genfun.hpp"
#include "symgf/matrix.hpp"
#include "symgf/poly.hpp"

namespace symgf::testing {

inline Vec random_vec(std::mt19937_64& rng, int n, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  Vec v(n);
  for (double& c : v) c = u(rng);
  return v;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).max_abs(); }

inline std::vector<int> unit_exp(int len, int i) {
  std::vector<int> e(len, 0);
  if (i >= 0) e[i] = 1;
  return e;
}

// <p, x> plus small random terms of degree 2 in (p, x) with p-degree >= 1:
// p_i p_j, p_i x_j x_k and p_i p_j x_k, so the generating function stays
// normalized and close to the identity.
inline GenFun random_quadratic(std::mt19937_64& rng, int d, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<PolyTerm> terms;
  for (int i = 0; i < d; ++i) terms.push_back({1.0, unit_exp(d, i), unit_exp(d, i)});
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      std::vector<int> pp = unit_exp(d, i);
      pp[j] += 1;
      terms.push_back({u(rng), pp, std::vector<int>(d, 0)});
      terms.push_back({u(rng), unit_exp(d, i), unit_exp(d, j)});
      for (int k = 0; k < d; ++k) {
        std::vector<int> xx = unit_exp(d, j);
        xx[k] += 1;
        terms.push_back({u(rng), unit_exp(d, i), xx});
        terms.push_back({u(rng), pp, unit_exp(d, k)});
      }
    }
  }
  return poly_genfun(d, d, std::move(terms), "quad");
}

}  // namespace symgf::testing
