#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "symgf/jet.hpp"
#include "symgf/matrix.hpp"

namespace symgf {

using JetMapFn = std::function<std::vector<Jet>(std::span<const Jet>)>;

// A smooth map R^in -> R^out that can be evaluated on jets, so Jacobians
// and higher derivatives come from forward-mode Taylor arithmetic.
class SmoothMap {
 public:
  SmoothMap() = default;
  SmoothMap(int in_dim, int out_dim, JetMapFn fn, std::string label = {});

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const std::string& label() const { return label_; }

  std::vector<Jet> operator()(std::span<const Jet> args) const;
  Vec operator()(std::span<const double> x) const;
  Matrix jacobian(std::span<const double> x) const;

  static SmoothMap identity(int d);
  static SmoothMap linear(const Matrix& a);

 private:
  int in_dim_ = 0;
  int out_dim_ = 0;
  JetMapFn fn_;
  std::string label_;
};

// f o g
SmoothMap compose_maps(const SmoothMap& f, const SmoothMap& g);

// Local inverse of a square map by Newton on g(y) = x, started at y = x.
// Jets of the inverse are obtained by the fixed-Jacobian iteration
// y <- y - Dg(y0)^{-1} (g(y) - x), which gains one order per sweep.
SmoothMap inverse_map(const SmoothMap& g, double tol = 1e-14,
                      int max_iter = 50);

}  // namespace symgf
