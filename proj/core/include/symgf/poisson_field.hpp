#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "symgf/jet.hpp"
#include "symgf/matrix.hpp"

namespace symgf {

// x -> alpha(x), an antisymmetric d x d matrix field. Only the strict upper
// triangle is computed (row-major), so antisymmetry holds by construction.
class PoissonField {
 public:
  using UpperFn = std::function<std::vector<Jet>(std::span<const Jet>)>;

  PoissonField() = default;
  PoissonField(int d, UpperFn upper, std::string label = {});

  static PoissonField constant(const Matrix& alpha);

  int d() const { return d_; }
  const std::string& label() const { return label_; }

  // Full d*d row-major matrix of jets in the variables of `x`.
  std::vector<Jet> jets(std::span<const Jet> x) const;
  std::vector<Jet> upper(std::span<const Jet> x) const;
  Matrix operator()(std::span<const double> x) const;

 private:
  int d_ = 0;
  UpperFn upper_;
  std::string label_;
};

int upper_index(int d, int i, int j);

// Largest |alpha^{ik} d_k alpha^{jl} + alpha^{lk} d_k alpha^{ij} +
// alpha^{jk} d_k alpha^{li}| over index triples at x.
double jacobi_residual(const PoissonField& alpha, std::span<const double> x);

}  // namespace symgf
