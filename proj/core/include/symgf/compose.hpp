#pragma once

#include <span>

#include "symgf/genfun.hpp"
#include "symgf/jet.hpp"
#include "symgf/smooth_map.hpp"

namespace symgf {

struct NewtonOptions {
  double newton_tol = 1e-12;
  int max_iter = 50;
  // Backtracking factor of the line search.
  double damping = 0.5;
  // Re-solve along p1 -> t p1, t = 0.1 .. 1, and reject a direct solve that
  // landed on a different branch.
  bool branch_check = true;
  // Condition number above which the stationary system counts as degenerate.
  double max_condition = 1e10;

  void validate() const;
};

// Critical point of F(pbar, x3) + G(p1, xbar) - <pbar, xbar> in (pbar, xbar).
struct StationaryPoint {
  Vec p_bar;
  Vec x_bar;
  double value = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  double condition = 1.0;
};

// G: (p1 in R^m, xbar in R^k), F: (pbar in R^k, x3 in R^n). Solves
// pbar = grad_x G(p1, xbar), xbar = grad_p F(pbar, x3) by damped Newton from
// pbar = 0, xbar = grad_p F(0, x3).
StationaryPoint stationary_point(const GenFun& f, const GenFun& g, std::span<const double> p1,
                                 std::span<const double> x3, const NewtonOptions& opts = {});

struct CompositeEvaluation {
  StationaryPoint point;
  // Taylor expansion of F o G at (p1, x3) in its own m + n variables.
  Jet taylor;
  // (F o G)(0, x3) before renormalization; zero for normalized operands.
  double offset = 0.0;
};

CompositeEvaluation evaluate_composite(const GenFun& f, const GenFun& g,
                                       std::span<const double> p1, std::span<const double> x3,
                                       int order, const NewtonOptions& opts = {});

// F o G as a generating function with m = G.m, n = F.n and half the smaller
// operand domain radius. Derivatives come from grad_p (F o G) = grad_p G(p1,
// xbar) and grad_x (F o G) = grad_x F(pbar, x3), with the critical point
// expanded by implicit differentiation of the stationary system.
GenFun compose(const GenFun& f, const GenFun& g, const NewtonOptions& opts = {});

// The same monoid in the chart xbar = g(x):
// lift(g^{-1}) o S o (lift(g) (x) lift(g)).
MonoidGenFun change_coordinates(const MonoidGenFun& s, const SmoothMap& g,
                                const SmoothMap& g_inv, const NewtonOptions& opts = {});
MonoidGenFun change_coordinates(const MonoidGenFun& s, const SmoothMap& g,
                                const NewtonOptions& opts = {});

}  // namespace symgf
