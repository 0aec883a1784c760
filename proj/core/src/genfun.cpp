#include "symgf/genfun.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "symgf/errors.hpp"

namespace symgf {

GenFun::GenFun(int m, int n, JetFn eval, double domain_radius, std::string label)
    : m_(m),
      n_(n),
      eval_(std::make_shared<const JetFn>(std::move(eval))),
      domain_radius_(domain_radius),
      label_(std::move(label)) {
  if (m < 0 || n < 0) throw ArgumentError("negative generating function dimension");
  if (!*eval_) throw ArgumentError("empty generating function");
  if (!(domain_radius > 0.0)) throw ArgumentError("domain radius must be positive");
}

Jet GenFun::eval(std::span<const Jet> args) const {
  if (static_cast<int>(args.size()) != arity()) {
    throw ArgumentError("generating function '" + label_ + "' expects " +
                        std::to_string(arity()) + " arguments, got " +
                        std::to_string(args.size()));
  }
  if (!args.empty()) {
    const int nv = args[0].nvars();
    const int q = args[0].order();
    for (const Jet& a : args) {
      if (a.nvars() != nv || a.order() != q) {
        throw ArgumentError("generating function arguments must share nvars/order");
      }
    }
  }
  return (*eval_)(args);
}

Jet GenFun::taylor(std::span<const double> point, int order) const {
  const auto seeds = seed_jets(point, order);
  return eval(seeds);
}

Jet GenFun::taylor(std::span<const double> p, std::span<const double> x, int order) const {
  Vec point(p.begin(), p.end());
  point.insert(point.end(), x.begin(), x.end());
  return taylor(point, order);
}

double GenFun::value(std::span<const double> p, std::span<const double> x) const {
  Vec point(p.begin(), p.end());
  point.insert(point.end(), x.begin(), x.end());
  const auto args = constant_jets(point, 0, 0);
  return eval(args).value();
}

GenFun GenFun::with_label(std::string label) const {
  GenFun g = *this;
  g.label_ = std::move(label);
  return g;
}

GenFun GenFun::with_domain_radius(double radius) const {
  if (!(radius > 0.0)) throw ArgumentError("domain radius must be positive");
  GenFun g = *this;
  g.domain_radius_ = radius;
  return g;
}

MonoidGenFun::MonoidGenFun(GenFun s) : s_(std::move(s)) {
  if (s_.n() < 1 || s_.m() != 2 * s_.n()) {
    throw ArgumentError("monoid generating function needs m = 2d, n = d; got m = " +
                        std::to_string(s_.m()) + ", n = " + std::to_string(s_.n()));
  }
  d_ = s_.n();
}

double MonoidGenFun::value(std::span<const double> p1, std::span<const double> p2,
                           std::span<const double> x) const {
  Vec p(p1.begin(), p1.end());
  p.insert(p.end(), p2.begin(), p2.end());
  return s_.value(p, x);
}

Jet MonoidGenFun::taylor(std::span<const double> p1, std::span<const double> p2,
                         std::span<const double> x, int order) const {
  Vec p(p1.begin(), p1.end());
  p.insert(p.end(), p2.begin(), p2.end());
  return s_.taylor(p, x, order);
}

Jet pairing(std::span<const Jet> u, std::span<const Jet> v) {
  if (u.size() != v.size()) throw ArgumentError("pairing size mismatch");
  if (u.empty()) throw ArgumentError("pairing of empty vectors");
  Jet acc = u[0] * v[0];
  for (std::size_t i = 1; i < u.size(); ++i) acc += u[i] * v[i];
  return acc;
}

Jet sum_pairing(std::span<const Jet> u, std::span<const Jet> v, std::span<const Jet> x) {
  if (u.size() != v.size() || u.size() != x.size()) {
    throw ArgumentError("sum_pairing size mismatch");
  }
  Jet acc = (u[0] + v[0]) * x[0];
  for (std::size_t i = 1; i < u.size(); ++i) acc += (u[i] + v[i]) * x[i];
  return acc;
}

Jet bilinear(std::span<const Jet> u, const Matrix& m, std::span<const Jet> v, double scale) {
  if (static_cast<int>(u.size()) != m.rows() || static_cast<int>(v.size()) != m.cols()) {
    throw ArgumentError("bilinear form shape mismatch");
  }
  const int nv = u.empty() ? 0 : u[0].nvars();
  const int q = u.empty() ? 0 : u[0].order();
  Jet acc = Jet::constant(0.0, nv, q);
  for (int i = 0; i < m.rows(); ++i) {
    Jet row = Jet::constant(0.0, nv, q);
    bool any = false;
    for (int j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0.0) {
        row.add_scaled(v[j], scale * m(i, j));
        any = true;
      }
    }
    if (any) acc += u[i] * row;
  }
  return acc;
}

GenFun identity_genfun(int d) {
  if (d < 1) throw ArgumentError("identity_genfun: d must be >= 1");
  return GenFun(
      d, d,
      [d](std::span<const Jet> a) { return pairing(a.subspan(0, d), a.subspan(d, d)); },
      kInfiniteRadius, "I" + std::to_string(d));
}

GenFun unit_genfun(int d) {
  if (d < 1) throw ArgumentError("unit_genfun: d must be >= 1");
  return GenFun(
      0, d,
      [](std::span<const Jet> a) { return Jet::constant(0.0, a[0].nvars(), a[0].order()); },
      kInfiniteRadius, "e" + std::to_string(d));
}

GenFun cotangent_lift(const SmoothMap& phi) {
  const int m = phi.out_dim();
  const int n = phi.in_dim();
  if (m < 1 || n < 1) throw ArgumentError("cotangent_lift: empty map");
  return GenFun(
      m, n,
      [phi, m, n](std::span<const Jet> a) {
        const auto image = phi(a.subspan(m, n));
        return pairing(image, a.subspan(0, m));
      },
      kInfiniteRadius, "lift(" + phi.label() + ")");
}

GenFun tensor(const GenFun& f, const GenFun& g) {
  const int fm = f.m(), fn = f.n(), gm = g.m(), gn = g.n();
  return GenFun(
      fm + gm, fn + gn,
      [f, g, fm, fn, gm, gn](std::span<const Jet> a) {
        std::vector<Jet> fa;
        fa.reserve(fm + fn);
        std::vector<Jet> ga;
        ga.reserve(gm + gn);
        for (int i = 0; i < fm; ++i) fa.push_back(a[i]);
        for (int i = 0; i < gm; ++i) ga.push_back(a[fm + i]);
        for (int i = 0; i < fn; ++i) fa.push_back(a[fm + gm + i]);
        for (int i = 0; i < gn; ++i) ga.push_back(a[fm + gm + fn + i]);
        return f.eval(fa) + g.eval(ga);
      },
      std::min(f.domain_radius(), g.domain_radius()),
      "(" + f.label() + "x" + g.label() + ")");
}

Vec base_map(const GenFun& f, std::span<const double> x) {
  if (static_cast<int>(x.size()) != f.n()) throw ArgumentError("base_map: point dimension");
  Vec point(f.m(), 0.0);
  point.insert(point.end(), x.begin(), x.end());
  const Jet t = f.taylor(point, 1);
  Vec out(f.m());
  for (int i = 0; i < f.m(); ++i) out[i] = t.grad(i);
  return out;
}

SmoothMap base_map(const GenFun& f) {
  const int m = f.m();
  const int n = f.n();
  return SmoothMap(
      n, m,
      [f, m, n](std::span<const Jet> x) {
        const int q = x.empty() ? 0 : x[0].order();
        const int nv = x.empty() ? 0 : x[0].nvars();
        if (q + 1 > kMaxJetOrder) throw ArgumentError("base_map: jet order too high");
        Vec point(m, 0.0);
        for (const Jet& xi : x) point.push_back(xi.value());
        const Jet t = f.taylor(point, q + 1);
        std::vector<int> keep(m + n, -1);
        for (int j = 0; j < n; ++j) keep[m + j] = j;
        std::vector<Jet> out;
        out.reserve(m);
        for (int i = 0; i < m; ++i) {
          const Jet slice = restrict_vars(derivative(t, i), keep, n);
          out.push_back(nv == n && is_seed(x) ? slice : substitute(slice, x));
        }
        (void)nv;
        return out;
      },
      "base(" + f.label() + ")");
}

MonoidGenFun symplectic_monoid(const Matrix& jinv) {
  if (!jinv.square() || jinv.rows() < 2 || jinv.rows() % 2 != 0) {
    throw ArgumentError("symplectic_monoid: Jinv must be square of even dimension");
  }
  const int d = jinv.rows();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (jinv(i, j) != -jinv(j, i)) {
        throw ArgumentError("symplectic_monoid: Jinv is not antisymmetric");
      }
    }
  }
  if (LuDecomposition(jinv).singular()) {
    throw ArgumentError("symplectic_monoid: Jinv is singular");
  }
  GenFun s(
      2 * d, d,
      [jinv, d](std::span<const Jet> a) {
        const auto p1 = a.subspan(0, d);
        const auto p2 = a.subspan(d, d);
        const auto x = a.subspan(2 * d, d);
        return sum_pairing(p1, p2, x) + bilinear(p1, jinv, p2, 0.5);
      },
      kInfiniteRadius, "symplectic" + std::to_string(d));
  return MonoidGenFun(std::move(s));
}

Matrix standard_jinv(int d) {
  if (d < 2 || d % 2 != 0) throw ArgumentError("standard_jinv: d must be even");
  const int h = d / 2;
  Matrix j(d, d);
  for (int i = 0; i < h; ++i) {
    j(i, h + i) = -1.0;
    j(h + i, i) = 1.0;
  }
  return j;
}

NormalizationDefect normalization_defect(const GenFun& f, std::span<const Vec> x_points) {
  NormalizationDefect out;
  for (const Vec& x : x_points) {
    Vec point(f.m(), 0.0);
    point.insert(point.end(), x.begin(), x.end());
    const Jet t = f.taylor(point, 1);
    out.value = std::max(out.value, std::abs(t.value()));
    for (int j = 0; j < f.n(); ++j) {
      out.gradient = std::max(out.gradient, std::abs(t.grad(f.m() + j)));
    }
  }
  return out;
}

}  // namespace symgf
