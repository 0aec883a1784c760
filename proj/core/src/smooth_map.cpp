#include "symgf/smooth_map.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "symgf/errors.hpp"

namespace symgf {

SmoothMap::SmoothMap(int in_dim, int out_dim, JetMapFn fn, std::string label)
    : in_dim_(in_dim), out_dim_(out_dim), fn_(std::move(fn)), label_(std::move(label)) {
  if (in_dim < 0 || out_dim < 0) throw ArgumentError("negative map dimension");
  if (!fn_) throw ArgumentError("empty map function");
}

std::vector<Jet> SmoothMap::operator()(std::span<const Jet> args) const {
  if (static_cast<int>(args.size()) != in_dim_) {
    throw ArgumentError("map '" + label_ + "' expects " + std::to_string(in_dim_) +
                        " arguments, got " + std::to_string(args.size()));
  }
  std::vector<Jet> out = fn_(args);
  if (static_cast<int>(out.size()) != out_dim_) {
    throw ArgumentError("map '" + label_ + "' returned wrong output size");
  }
  return out;
}

Vec SmoothMap::operator()(std::span<const double> x) const {
  const auto seeds = constant_jets(x, static_cast<int>(x.size()), 0);
  return values_of((*this)(seeds));
}

Matrix SmoothMap::jacobian(std::span<const double> x) const {
  const auto seeds = seed_jets(x, 1);
  const auto out = (*this)(seeds);
  Matrix j(out_dim_, in_dim_);
  for (int r = 0; r < out_dim_; ++r) {
    for (int c = 0; c < in_dim_; ++c) j(r, c) = out[r].grad(c);
  }
  return j;
}

SmoothMap SmoothMap::identity(int d) {
  return SmoothMap(
      d, d,
      [](std::span<const Jet> a) { return std::vector<Jet>(a.begin(), a.end()); },
      "identity");
}

SmoothMap SmoothMap::linear(const Matrix& a) {
  return SmoothMap(
      a.cols(), a.rows(),
      [a](std::span<const Jet> x) {
        std::vector<Jet> out;
        out.reserve(a.rows());
        for (int r = 0; r < a.rows(); ++r) {
          Jet acc = Jet::constant(0.0, x[0].nvars(), x[0].order());
          for (int c = 0; c < a.cols(); ++c) {
            if (a(r, c) != 0.0) acc.add_scaled(x[c], a(r, c));
          }
          out.push_back(std::move(acc));
        }
        return out;
      },
      "linear");
}

SmoothMap compose_maps(const SmoothMap& f, const SmoothMap& g) {
  if (f.in_dim() != g.out_dim()) throw ArgumentError("compose_maps: dimension chain");
  return SmoothMap(
      g.in_dim(), f.out_dim(),
      [f, g](std::span<const Jet> x) {
        const auto y = g(x);
        return f(y);
      },
      f.label() + "*" + g.label());
}

SmoothMap inverse_map(const SmoothMap& g, double tol, int max_iter) {
  if (g.in_dim() != g.out_dim()) throw ArgumentError("inverse_map: map is not square");
  const int d = g.in_dim();
  return SmoothMap(
      d, d,
      [g, d, tol, max_iter](std::span<const Jet> x) {
        const Vec target = values_of(x);
        Vec y = target;
        double scale = 1.0;
        for (double t : target) scale = std::max(scale, std::abs(t));
        bool converged = false;
        double res = 0.0;
        for (int it = 0; it <= max_iter; ++it) {
          const auto gy = g(seed_jets(y, 1));
          Vec r(d);
          res = 0.0;
          for (int i = 0; i < d; ++i) {
            r[i] = gy[i].value() - target[i];
            res = std::max(res, std::abs(r[i]));
          }
          if (res <= tol * scale) {
            converged = true;
            break;
          }
          Matrix jac(d, d);
          for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) jac(i, j) = gy[i].grad(j);
          }
          const Vec step = solve(jac, r);
          for (int i = 0; i < d; ++i) y[i] -= step[i];
        }
        if (!converged) {
          throw ConvergenceError("inverse_map: Newton did not converge", y, res, max_iter);
        }
        const int q = x.empty() ? 0 : x[0].order();
        const int nv = x.empty() ? 0 : x[0].nvars();
        std::vector<Jet> yj = constant_jets(y, nv, q);
        if (q == 0) return yj;
        const Matrix jinv = inverse(g.jacobian(y));
        for (int sweep = 0; sweep < q; ++sweep) {
          auto gy = g(yj);
          for (int i = 0; i < d; ++i) {
            gy[i] -= x[i];
            gy[i].coeff(0) = 0.0;
          }
          for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
              if (jinv(i, j) != 0.0) yj[i].add_scaled(gy[j], -jinv(i, j));
            }
          }
        }
        return yj;
      },
      "inverse(" + g.label() + ")");
}

}  // namespace symgf
