#pragma once

#include <span>
#include <string>
#include <vector>

#include "symgf/genfun.hpp"
#include "symgf/jet.hpp"
#include "symgf/matrix.hpp"
#include "symgf/poisson_field.hpp"

namespace symgf {

// coeff * p^p_exp * x^x_exp with exponent vectors of length m and n.
struct PolyTerm {
  double coeff = 0.0;
  std::vector<int> p;
  std::vector<int> x;
};

// Rejects (InvalidGenFunError) any nonzero term of degree 0 in p, which is
// exactly what S(0,x) = 0 and grad_x S(0,x) = 0 forbid for a polynomial.
GenFun poly_genfun(int m, int n, std::vector<PolyTerm> terms, std::string label = "poly");
// Monoid slot order: term.p is p1 followed by p2 (length 2d).
MonoidGenFun poly_monoid(int d, std::vector<PolyTerm> terms, std::string label = "poly");

// Evaluates prod_i v_i^e_i on jets, reusing powers.
Jet monomial(std::span<const Jet> v, std::span<const int> exponents);

// alpha^{ij}(x) for i < j as sums of coeff * x^exp.
class PolyPoisson {
 public:
  struct Monomial {
    double coeff = 0.0;
    std::vector<int> x;
  };
  struct Entry {
    int i = 0;
    int j = 0;
    Monomial term;
  };

  PolyPoisson() = default;
  // Entries with i > j contribute -coeff to alpha^{ji}; i == j is rejected.
  PolyPoisson(int d, const std::vector<Entry>& entries);

  static PolyPoisson constant(const Matrix& alpha);
  // Kirillov-Kostant: alpha^{ij}(x) = c^k_{ij} x_k, c indexed [i][j][k].
  static PolyPoisson linear(int d, std::span<const double> c);

  int d() const { return d_; }
  bool is_constant() const;
  int degree() const;
  const std::vector<Monomial>& upper_entry(int i, int j) const;

  // d/dx_var of every entry.
  PolyPoisson derivative(int var) const;
  std::vector<Jet> jets(std::span<const Jet> x) const;
  Matrix operator()(std::span<const double> x) const;
  PoissonField field() const;
  // Entries as a flat (i, j, term) list with i < j.
  std::vector<Entry> entries() const;

 private:
  int d_ = 0;
  std::vector<std::vector<Monomial>> upper_;
};

}  // namespace symgf
