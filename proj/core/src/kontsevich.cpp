#include "symgf/kontsevich.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <random>
#include <sstream>

#include "symgf/errors.hpp"
#include "symgf/matrix.hpp"

namespace symgf {

namespace {

// alpha and its first partials at one point, for the sampled fit.
struct LocalAlpha {
  int d;
  Matrix a;
  std::vector<Matrix> da;  // da[k] = d_k alpha
};

LocalAlpha local_alpha(const PolyPoisson& alpha, const std::vector<PolyPoisson>& dalpha,
                       const Vec& x) {
  LocalAlpha out{alpha.d(), alpha(x), {}};
  for (const auto& dk : dalpha) out.da.push_back(dk(x));
  return out;
}

// T(w, u, v) = alpha^{ab} d_b alpha^{ij} w_a u_i v_j
double tree(const LocalAlpha& l, const Vec& w, const Vec& u, const Vec& v) {
  double s = 0.0;
  for (int a = 0; a < l.d; ++a)
    for (int b = 0; b < l.d; ++b) {
      const double ab = l.a(a, b) * w[a];
      if (ab == 0.0) continue;
      for (int i = 0; i < l.d; ++i)
        for (int j = 0; j < l.d; ++j) s += ab * l.da[b](i, j) * u[i] * v[j];
    }
  return s;
}

Vec grad_first(const LocalAlpha& l, const Vec& v) {
  Vec g(l.d, 0.0);
  for (int k = 0; k < l.d; ++k)
    for (int j = 0; j < l.d; ++j) g[k] += 0.5 * l.a(k, j) * v[j];
  return g;
}

Vec grad_second(const LocalAlpha& l, const Vec& u) {
  Vec g(l.d, 0.0);
  for (int k = 0; k < l.d; ++k)
    for (int i = 0; i < l.d; ++i) g[k] += 0.5 * l.a(i, k) * u[i];
  return g;
}

Vec grad_x(const LocalAlpha& l, const Vec& u, const Vec& v) {
  Vec g(l.d, 0.0);
  for (int k = 0; k < l.d; ++k) {
    double s = 0.0;
    for (int i = 0; i < l.d; ++i)
      for (int j = 0; j < l.d; ++j) s += l.da[k](i, j) * u[i] * v[j];
    g[k] = 0.5 * s;
  }
  return g;
}

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec add(const Vec& a, const Vec& b) {
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

// Order eps^2 part of S(S(p1,p2),p3) - S(p1,S(p2,p3)) as (coefficient of
// c_a, coefficient of c_b, constant).
std::array<double, 3> eps2_residual(const LocalAlpha& l, const Vec& p1, const Vec& p2,
                                    const Vec& p3) {
  const Vec big_p = add(p1, p2);
  const Vec big_q = add(p2, p3);
  auto t_a = [&](const Vec& u, const Vec& v) { return tree(l, u, u, v); };
  auto t_b = [&](const Vec& u, const Vec& v) { return tree(l, v, u, v); };
  const double a = t_a(big_p, p3) + t_a(p1, p2) - t_a(p1, big_q) - t_a(p2, p3);
  const double b = t_b(big_p, p3) + t_b(p1, p2) - t_b(p1, big_q) - t_b(p2, p3);
  const double c = dot(grad_first(l, p3), grad_x(l, p1, p2)) -
                   dot(grad_second(l, p1), grad_x(l, p2, p3));
  return {a, b, c};
}

// Random Poisson bivectors: any alpha^{12} in 2D; alpha^{ij} = eps_{ijk} d_k f
// in 3D.
PolyPoisson random_poisson(std::mt19937_64& rng, int which) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  if (which % 2 == 0) {
    std::vector<PolyPoisson::Entry> e;
    for (int a = 0; a <= 2; ++a)
      for (int b = 0; a + b <= 2; ++b) e.push_back({0, 1, {u(rng), {a, b}}});
    return PolyPoisson(2, e);
  }
  // f = sum of cubic and quadratic monomials in 3 variables.
  std::vector<std::pair<double, std::array<int, 3>>> f;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b)
      for (int c = 0; a + b + c <= 3; ++c)
        if (a + b + c >= 2) f.push_back({u(rng), {a, b, c}});
  std::vector<PolyPoisson::Entry> e;
  auto add_grad = [&](int i, int j, int k, double sign) {
    for (const auto& [coef, ex] : f) {
      if (ex[k] == 0) continue;
      std::vector<int> x(ex.begin(), ex.end());
      const double c = sign * coef * x[k];
      x[k] -= 1;
      e.push_back({i, j, {c, x}});
    }
  };
  add_grad(0, 1, 2, 1.0);
  add_grad(0, 2, 1, -1.0);
  add_grad(1, 2, 0, 1.0);
  return PolyPoisson(3, e);
}

double jacobi_defect(const PolyPoisson& alpha) {
  const PoissonField field = alpha.field();
  const int d = alpha.d();
  double worst = 0.0;
  double scale = 1.0;
  // A fixed spread of points in [-1,1]^d.
  for (int s = 0; s < 8; ++s) {
    Vec x(d);
    for (int i = 0; i < d; ++i) x[i] = std::sin(1.7 * (s + 1) + 2.3 * i);
    worst = std::max(worst, jacobi_residual(field, x));
    scale = std::max(scale, alpha(x).max_abs());
  }
  return worst / (scale * scale);
}

}  // namespace

KontsevichFit fit_kontsevich_order2(unsigned long long seed, int bivectors, int points) {
  if (bivectors < 1 || points < 1) throw ArgumentError("fit_kontsevich_order2: empty sample");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::array<double, 3>> rows;
  for (int b = 0; b < bivectors; ++b) {
    const PolyPoisson alpha = random_poisson(rng, b);
    const int d = alpha.d();
    std::vector<PolyPoisson> dalpha;
    for (int k = 0; k < d; ++k) dalpha.push_back(alpha.derivative(k));
    for (int s = 0; s < points; ++s) {
      auto draw = [&] {
        Vec v(d);
        for (double& c : v) c = u(rng);
        return v;
      };
      const Vec x = draw(), p1 = draw(), p2 = draw(), p3 = draw();
      rows.push_back(eps2_residual(local_alpha(alpha, dalpha, x), p1, p2, p3));
    }
  }
  // Normal equations for min sum (a c_a + b c_b + c)^2.
  Matrix n(2, 2);
  Vec r(2, 0.0);
  for (const auto& [a, b, c] : rows) {
    n(0, 0) += a * a;
    n(0, 1) += a * b;
    n(1, 1) += b * b;
    r[0] -= a * c;
    r[1] -= b * c;
  }
  n(1, 0) = n(0, 1);
  const LuDecomposition lu(n);
  KontsevichFit fit;
  fit.samples = static_cast<int>(rows.size());
  if (lu.singular() || lu.condition1() > 1e12) {
    fit.floor = std::numeric_limits<double>::infinity();
    return fit;
  }
  const Vec c = lu.solve(r);
  fit.c_a = c[0];
  fit.c_b = c[1];
  for (const auto& [a, b, k] : rows) {
    fit.floor = std::max(fit.floor, std::abs(a * fit.c_a + b * fit.c_b + k));
  }
  return fit;
}

const KontsevichFit& kontsevich_order2_fit() {
  static const KontsevichFit fit = fit_kontsevich_order2(20240611ULL, 6, 40);
  return fit;
}

MonoidGenFun kontsevich_monoid(const PolyPoisson& alpha, double eps, int order) {
  if (order > 2) {
    throw UnsupportedOrderError("kontsevich_monoid: only orders 1 and 2 are implemented");
  }
  if (order < 1) throw ArgumentError("kontsevich_monoid: order must be 1 or 2");
  if (!(eps > 0.0 && eps <= 1.0)) throw ArgumentError("kontsevich_monoid: eps must be in (0, 1]");
  const int d = alpha.d();
  const double defect = jacobi_defect(alpha);
  if (defect > 1e-10) {
    std::ostringstream msg;
    msg << "kontsevich_monoid: bivector fails the Jacobi identity (relative defect " << defect
        << ")";
    throw ArgumentError(msg.str());
  }
  std::ostringstream label;
  label << "kontsevich" << order << "(eps=" << eps << ")";

  if (alpha.is_constant()) {
    // Order 2 adds nothing: every tree symbol contains a derivative of alpha.
    const Matrix a = alpha(Vec(d, 0.0));
    GenFun s(
        2 * d, d,
        [a, d, eps](std::span<const Jet> v) {
          const auto p1 = v.subspan(0, d);
          const auto p2 = v.subspan(d, d);
          return sum_pairing(p1, p2, v.subspan(2 * d, d)) + bilinear(p1, a, p2, 0.5 * eps);
        },
        kInfiniteRadius, label.str());
    return MonoidGenFun(std::move(s));
  }

  double c_a = 0.0, c_b = 0.0;
  if (order == 2) {
    const KontsevichFit& fit = kontsevich_order2_fit();
    if (!(fit.floor <= kKontsevichFitGate)) {
      std::ostringstream msg;
      msg << "kontsevich_monoid: order-2 fit floor " << fit.floor << " exceeds gate "
          << kKontsevichFitGate;
      throw NumericDomainError(msg.str());
    }
    c_a = fit.c_a;
    c_b = fit.c_b;
  }
  std::vector<PolyPoisson> dalpha;
  if (order == 2) {
    for (int k = 0; k < d; ++k) dalpha.push_back(alpha.derivative(k));
  }
  GenFun s(
      2 * d, d,
      [alpha, dalpha, d, eps, order, c_a, c_b](std::span<const Jet> v) {
        const auto p1 = v.subspan(0, d);
        const auto p2 = v.subspan(d, d);
        const auto x = v.subspan(2 * d, d);
        const int nv = v[0].nvars();
        const int q = v[0].order();
        const auto a = alpha.jets(x);
        Jet out = sum_pairing(p1, p2, x);
        Jet first(nv, q);
        for (int i = 0; i < d; ++i) {
          Jet row(nv, q);
          for (int j = 0; j < d; ++j) {
            if (i != j) row += a[i * d + j] * p2[j];
          }
          first += p1[i] * row;
        }
        out.add_scaled(first, 0.5 * eps);
        if (order == 2) {
          // bil[b] = d_b alpha^{ij} p1_i p2_j, w_a = alpha^{ab} bil[b]
          std::vector<Jet> bil;
          for (int b = 0; b < d; ++b) {
            const auto da = dalpha[b].jets(x);
            Jet acc(nv, q);
            for (int i = 0; i < d; ++i) {
              Jet row(nv, q);
              for (int j = 0; j < d; ++j) {
                if (i != j) row += da[i * d + j] * p2[j];
              }
              acc += p1[i] * row;
            }
            bil.push_back(std::move(acc));
          }
          Jet t_a(nv, q), t_b(nv, q);
          for (int ai = 0; ai < d; ++ai) {
            Jet w(nv, q);
            for (int b = 0; b < d; ++b) {
              if (ai != b) w += a[ai * d + b] * bil[b];
            }
            t_a += p1[ai] * w;
            t_b += p2[ai] * w;
          }
          Jet second = t_a * c_a;
          second.add_scaled(t_b, c_b);
          out.add_scaled(second, eps * eps);
        }
        return out;
      },
      kInfiniteRadius, label.str());
  return MonoidGenFun(std::move(s));
}

}  // namespace symgf
