#pragma once

#include <functional>
#include <span>

#include "symgf/genfun.hpp"
#include "symgf/jet.hpp"
#include "symgf/poisson_field.hpp"
#include "symgf/smooth_map.hpp"

namespace symgf {

// alpha^{kl}(x) = d2S/dp1_k dp2_l - d2S/dp1_l dp2_k at (0, 0, x). The field
// is jet-evaluable to order 1, which needs order-3 jets of S.
PoissonField poisson_bivector(const MonoidGenFun& s);

// s(p, x) = grad_{p2} S(p, 0, x), t(p, x) = grad_{p1} S(0, p, x); both are
// maps R^{2d} -> R^d with inputs ordered (p, x).
struct GroupoidMaps {
  int d = 0;
  SmoothMap source;
  SmoothMap target;

  // x -> (0, x)
  static Vec embed(std::span<const double> x);
};

GroupoidMaps source_target(const MonoidGenFun& s);

// Canonical bracket on T*R^d with variables ordered (p, x):
//   sign * sum_i (df/dx_i dg/dp_i - df/dp_i dg/dx_i).
// f and g are jets in exactly 2d variables; the result has one order less.
Jet canonical_bracket(const Jet& f, const Jet& g, int d, int sign);

using ScalarJetFn = std::function<Jet(std::span<const Jet>)>;
double canonical_bracket(const ScalarJetFn& f, const ScalarJetFn& g,
                         std::span<const double> point, int sign);

// The sign for which {s^1, s^2} = alpha^{12}(s) holds for the standard
// symplectic monoid on R^2. Computed once; every bracket check uses it.
int calibrate_bracket_sign();
int bracket_sign();

}  // namespace symgf
