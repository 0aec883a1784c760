#pragma once

// Generating functions of transverse lagrangian germs, represented by one
// chart representative S(p, x) with p in (R^m)^* and x in R^n.
//
// Normalization: S(0, x) = 0 and grad_x S(0, x) = 0; the base map is
// phi(x) = grad_p S(0, x).

#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "symgf/jet.hpp"
#include "symgf/matrix.hpp"
#include "symgf/smooth_map.hpp"

namespace symgf {

using JetFn = std::function<Jet(std::span<const Jet>)>;

inline constexpr double kInfiniteRadius = std::numeric_limits<double>::infinity();

class GenFun {
 public:
  GenFun() = default;
  // `eval` receives m + n jets, the covector slots first.
  GenFun(int m, int n, JetFn eval, double domain_radius = kInfiniteRadius,
         std::string label = {});

  int m() const { return m_; }
  int n() const { return n_; }
  int arity() const { return m_ + n_; }
  double domain_radius() const { return domain_radius_; }
  const std::string& label() const { return label_; }

  Jet eval(std::span<const Jet> args) const;
  Jet taylor(std::span<const double> point, int order) const;
  Jet taylor(std::span<const double> p, std::span<const double> x, int order) const;
  double value(std::span<const double> p, std::span<const double> x) const;

  GenFun with_label(std::string label) const;
  GenFun with_domain_radius(double radius) const;

 private:
  int m_ = 0;
  int n_ = 0;
  std::shared_ptr<const JetFn> eval_;
  double domain_radius_ = kInfiniteRadius;
  std::string label_;
};

// Generating function of a monoid product on T*R^d: m = 2d (p1, p2), n = d.
class MonoidGenFun {
 public:
  MonoidGenFun() = default;
  explicit MonoidGenFun(GenFun s);

  int d() const { return d_; }
  const GenFun& genfun() const { return s_; }
  operator const GenFun&() const { return s_; }
  const std::string& label() const { return s_.label(); }
  double domain_radius() const { return s_.domain_radius(); }

  double value(std::span<const double> p1, std::span<const double> p2,
               std::span<const double> x) const;
  Jet taylor(std::span<const double> p1, std::span<const double> p2,
             std::span<const double> x, int order) const;

 private:
  GenFun s_;
  int d_ = 0;
};

// I(p, x) = <p, x>
GenFun identity_genfun(int d);
// e(x) = 0, m = 0
GenFun unit_genfun(int d);
// S(p, x) = <phi(x), p>
GenFun cotangent_lift(const SmoothMap& phi);
// (F (x) G)(p, pbar, x, xbar) = F(p, x) + G(pbar, xbar)
GenFun tensor(const GenFun& f, const GenFun& g);
// grad_p F(0, x)
Vec base_map(const GenFun& f, std::span<const double> x);
SmoothMap base_map(const GenFun& f);

// S(p1, p2, x) = <p1 + p2, x> + 1/2 p1^T Jinv p2
MonoidGenFun symplectic_monoid(const Matrix& jinv);
// Inverse of the standard symplectic matrix on R^d, d even:
// [[0, -I], [I, 0]] (the Poisson bivector of the Darboux structure).
Matrix standard_jinv(int d);

// Shared building blocks so that builders producing the same polynomial
// produce bit-identical jets.
Jet pairing(std::span<const Jet> u, std::span<const Jet> v);
// <u + v, x>
Jet sum_pairing(std::span<const Jet> u, std::span<const Jet> v,
                std::span<const Jet> x);
// scale * sum_ij u_i M_ij v_j
Jet bilinear(std::span<const Jet> u, const Matrix& m, std::span<const Jet> v,
             double scale);

// Largest |S(0,x)| and |grad_x S(0,x)| over the given base points.
struct NormalizationDefect {
  double value = 0.0;
  double gradient = 0.0;
};
NormalizationDefect normalization_defect(const GenFun& f,
                                         std::span<const Vec> x_points);

}  // namespace symgf
