#pragma once

// Truncated multivariate Taylor jets of order <= 3.
//
// A Jet stores the Taylor coefficients c_a = (d^a f)(x0) / a! of a scalar
// function at a point, for every multi-index a of total degree <= order.
// Multi-indices are stored as sorted variable tuples (i <= j <= k), grouped
// by degree. Arithmetic truncates at the jet order, so the degree-k
// coefficients of a result only depend on degree <= k coefficients of the
// operands.

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace symgf {

inline constexpr int kMaxJetOrder = 3;

class JetLayout {
 public:
  struct Product {
    int lhs;
    int rhs;
    int out;
  };

  static std::shared_ptr<const JetLayout> get(int nvars, int order);

  JetLayout(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  std::size_t size() const { return tuples_.size(); }

  // Variables of coefficient `index`, sorted ascending; unused slots are -1.
  const std::array<int, 3>& tuple(int index) const { return tuples_[index]; }
  int degree(int index) const { return degrees_[index]; }

  // Index of the multi-index given by an unsorted list of variables.
  int index_of(std::span<const int> vars) const;
  int index_of() const { return 0; }
  int index_of(int i) const { return 1 + i; }
  int index_of(int i, int j) const;
  int index_of(int i, int j, int k) const;

  // First coefficient of each degree, plus an end sentinel.
  int degree_begin(int degree) const { return degree_begin_[degree]; }

  const std::vector<Product>& products() const { return products_; }

 private:
  int nvars_;
  int order_;
  std::vector<std::array<int, 3>> tuples_;
  std::vector<int> degrees_;
  std::array<int, kMaxJetOrder + 2> degree_begin_{};
  std::vector<int> index2_;
  std::vector<int> index3_;
  std::vector<Product> products_;
};

class Jet {
 public:
  Jet() = default;
  // Zero jet.
  Jet(int nvars, int order);

  static Jet constant(double value, int nvars, int order);
  static Jet variable(int index, double value, int nvars, int order);

  int nvars() const { return layout_ ? layout_->nvars() : 0; }
  int order() const { return layout_ ? layout_->order() : 0; }
  const JetLayout& layout() const { return *layout_; }
  std::shared_ptr<const JetLayout> layout_ptr() const { return layout_; }

  std::span<const double> coeffs() const { return coeffs_; }
  std::span<double> coeffs() { return coeffs_; }
  double coeff(int index) const { return coeffs_[index]; }
  double& coeff(int index) { return coeffs_[index]; }

  // Partial derivatives at the expansion point.
  double value() const { return coeffs_[0]; }
  double grad(int i) const;
  double hess(int i, int j) const;
  double third(int i, int j, int k) const;
  std::vector<double> gradient() const;

  bool is_zero() const;

  Jet& operator+=(const Jet& other);
  Jet& operator-=(const Jet& other);
  Jet& operator*=(const Jet& other);
  Jet& operator*=(double c);
  Jet& operator+=(double c);
  Jet& operator-=(double c);
  // this += c * other
  Jet& add_scaled(const Jet& other, double c);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator*(Jet a, double c) { return a *= c; }
  friend Jet operator*(double c, Jet a) { return a *= c; }
  friend Jet operator+(Jet a, double c) { return a += c; }
  friend Jet operator+(double c, Jet a) { return a += c; }
  friend Jet operator-(Jet a, double c) { return a -= c; }
  friend Jet operator-(double c, const Jet& a) { return c + (-1.0) * a; }
  friend Jet operator-(const Jet& a) { return (-1.0) * a; }
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator/(Jet a, double c) { return a *= 1.0 / c; }
  friend Jet operator/(double c, const Jet& a);

 private:
  std::shared_ptr<const JetLayout> layout_;
  std::vector<double> coeffs_;
};

// Coordinate function x_index expanded at `value`.
Jet jet_var(int index, double value, int nvars, int order);
Jet jet_add(const Jet& a, const Jet& b);
Jet jet_mul(const Jet& a, const Jet& b);
Jet jet_scale(const Jet& a, double c);

// Composition with univariate analytic functions.
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet sqrt(const Jet& a);
Jet pow(const Jet& a, int n);

// Applies a univariate function given its Taylor coefficients
// f(a0), f'(a0), f''(a0)/2, f'''(a0)/6 at a0 = a.value().
Jet compose_univariate(const Jet& a, std::span<const double> taylor);

// d/dx_var; the result has order - 1 (order-0 input gives an order-0 zero).
Jet derivative(const Jet& a, int var);

// Substitutes jets for the variables of a Taylor expansion. `taylor` is the
// expansion of f at z0 in its own variables; `args[i]` must have value z0_i.
// The result is the expansion of f(args) in the variables of `args`; its
// order is that of `args`, which must not exceed taylor.order().
Jet substitute(const Jet& taylor, std::span<const Jet> args);

// Keeps only coefficients whose variables all map to a non-negative entry of
// `new_index`, renumbering them; i.e. restricts to the affine slice where
// the dropped variables sit at the expansion point.
Jet restrict_vars(const Jet& a, std::span<const int> new_index, int new_nvars);

// Seeds for a Taylor expansion at `point`: variable jets x_0 .. x_{n-1}.
std::vector<Jet> seed_jets(std::span<const double> point, int order);
std::vector<Jet> constant_jets(std::span<const double> values, int nvars,
                               int order);
std::vector<double> values_of(std::span<const Jet> jets);

// True when `args` are exactly the seeds returned by seed_jets.
bool is_seed(std::span<const Jet> args);

}  // namespace symgf
