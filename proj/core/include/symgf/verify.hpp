#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "symgf/compose.hpp"
#include "symgf/genfun.hpp"
#include "symgf/grid.hpp"
#include "symgf/poisson.hpp"
#include "symgf/poisson_field.hpp"
#include "symgf/smooth_map.hpp"

namespace symgf {

struct Failure {
  Vec point;
  double residual = 0.0;  // +inf when the point could not be evaluated
  std::string error;
};

struct VerificationReport {
  std::string axiom;
  double max = 0.0;
  // Mean over the points that could be evaluated.
  double mean = 0.0;
  int n = 0;
  double tol = 0.0;
  // Points with residual >= tol, including evaluation errors.
  int failure_count = 0;
  int error_count = 0;
  // The first failures in grid order.
  std::vector<Failure> failures;
  // +-1 for bracket-based checks, 0 otherwise.
  int bracket_sign = 0;
  double p_radius = 0.0;
  GridSpec grid;
  std::vector<std::pair<std::string, double>> info;

  bool passed() const { return n > 0 && error_count == 0 && max < tol; }
};

struct CheckOptions {
  GridSpec grid;
  NewtonOptions newton;
  double tol = 1e-10;
  int jobs = 1;
  int max_failures = 20;
};

// |S(p,0,x) - <p,x>| and |S(0,p,x) - <p,x>|
VerificationReport check_unit(const MonoidGenFun& s, const CheckOptions& opts = {});

// |S o (S (x) I) - S o (I (x) S)| at (p1, p2, p3, x)
VerificationReport check_associativity(const MonoidGenFun& s, const CheckOptions& opts = {});

// {s^i,s^j} - alpha^{ij}(s), {t^i,t^j} + alpha^{ij}(t), {s^i,t^j}
struct GroupoidReport {
  VerificationReport source_poisson;
  VerificationReport target_anti_poisson;
  VerificationReport source_target_commute;

  bool passed() const {
    return source_poisson.passed() && target_anti_poisson.passed() &&
           source_target_commute.passed();
  }
  std::array<const VerificationReport*, 3> all() const {
    return {&source_poisson, &target_anti_poisson, &source_target_commute};
  }
};
GroupoidReport check_groupoid(const MonoidGenFun& s, const CheckOptions& opts = {});

// Cyclic Jacobi sum over x in the grid box.
VerificationReport check_jacobi(const PoissonField& alpha, const CheckOptions& opts = {});

// |F o S_M - S_N o (F (x) F)| at (p1, p2, xbar); F has m = d_M, n = d_N.
VerificationReport check_morphism(const GenFun& f, const MonoidGenFun& s_m,
                                  const MonoidGenFun& s_n, const CheckOptions& opts = {});

// max_ij |alpha_M(phi(x)) - Dphi alpha_N(x) Dphi^T| for phi: R^{d_N} -> R^{d_M}.
VerificationReport check_poisson_map(const SmoothMap& phi, const PoissonField& alpha_n,
                                     const PoissonField& alpha_m, const CheckOptions& opts = {});

}  // namespace symgf
