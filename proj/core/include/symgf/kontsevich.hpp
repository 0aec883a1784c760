#pragma once

#include "symgf/genfun.hpp"
#include "symgf/poly.hpp"

namespace symgf {

// Coefficients of the order-eps^2 tree symbols
//   T_A = alpha^{ab} d_b alpha^{ij} p1_a p1_i p2_j
//   T_B = alpha^{ab} d_b alpha^{ij} p2_a p1_i p2_j
// obtained by least squares on the eps^2 part of the associativity equation
// over random Poisson bivectors. `floor` is the largest residual left after
// the fit; the order-2 generating function is refused when it exceeds
// kKontsevichFitGate.
struct KontsevichFit {
  double c_a = 0.0;
  double c_b = 0.0;
  double floor = 0.0;
  int samples = 0;
};

inline constexpr double kKontsevichFitGate = 1e-8;

// Deterministic; computed once per process and cached.
const KontsevichFit& kontsevich_order2_fit();
KontsevichFit fit_kontsevich_order2(unsigned long long seed, int bivectors, int points);

// S = <p1 + p2, x> + eps * 1/2 alpha^{ij}(x) p1_i p2_j
//     [+ eps^2 (c_a T_A + c_b T_B) when order == 2]
// Throws UnsupportedOrderError for order > 2, ArgumentError for eps outside
// (0, 1] or a bivector failing Jacobi, NumericDomainError when the order-2
// fit fails its gate.
MonoidGenFun kontsevich_monoid(const PolyPoisson& alpha, double eps, int order);

}  // namespace symgf
