#include "symgf/compose.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "symgf/errors.hpp"
#include "symgf/matrix.hpp"

namespace symgf {

void NewtonOptions::validate() const {
  if (!(newton_tol > 0.0)) throw ArgumentError("NewtonOptions: newton_tol must be > 0");
  if (max_iter < 1) throw ArgumentError("NewtonOptions: max_iter must be >= 1");
  if (!(damping > 0.0 && damping < 1.0)) {
    throw ArgumentError("NewtonOptions: damping must be in (0, 1)");
  }
  if (!(max_condition > 1.0)) throw ArgumentError("NewtonOptions: max_condition must be > 1");
}

namespace {

double sup_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

double euclid(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

Vec concat(std::span<const double> a, std::span<const double> b) {
  Vec out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Stationary system H(y) at y = (pbar, xbar) with its Jacobian.
struct System {
  Vec residual;
  Matrix jacobian;
};

class StationarySystem {
 public:
  StationarySystem(const GenFun& f, const GenFun& g, std::span<const double> p1,
                   std::span<const double> x3)
      : f_(f), g_(g), k_(g.n()), p1_(p1.begin(), p1.end()), x3_(x3.begin(), x3.end()) {}

  int k() const { return k_; }

  System at(std::span<const double> y, bool want_jacobian) const {
    const int k = k_;
    const int q = want_jacobian ? 2 : 1;
    // G in the xbar variables only, F in the pbar variables only.
    std::vector<Jet> gargs = constant_jets(p1_, k, q);
    std::vector<Jet> fargs;
    for (int j = 0; j < k; ++j) {
      gargs.push_back(jet_var(j, y[k + j], k, q));
      fargs.push_back(jet_var(j, y[j], k, q));
    }
    for (double v : x3_) fargs.push_back(Jet::constant(v, k, q));
    const Jet tg = g_.eval(gargs);
    const Jet tf = f_.eval(fargs);
    System s;
    s.residual.resize(2 * k);
    for (int j = 0; j < k; ++j) {
      s.residual[j] = y[j] - tg.grad(j);
      s.residual[k + j] = y[k + j] - tf.grad(j);
    }
    if (want_jacobian) {
      s.jacobian = Matrix::identity(2 * k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
          s.jacobian(i, k + j) = -tg.hess(i, j);
          s.jacobian(k + i, j) = -tf.hess(i, j);
        }
    }
    return s;
  }

  Vec base_solution() const {
    Vec y(2 * k_, 0.0);
    const Vec phi = base_map(f_, x3_);
    for (int j = 0; j < k_; ++j) y[k_ + j] = phi[j];
    return y;
  }

  double value(std::span<const double> y) const {
    const int k = k_;
    const std::span<const double> pbar = y.subspan(0, k);
    const std::span<const double> xbar = y.subspan(k, k);
    double pairing = 0.0;
    for (int j = 0; j < k; ++j) pairing += pbar[j] * xbar[j];
    return f_.value(pbar, x3_) + g_.value(p1_, xbar) - pairing;
  }

  StationarySystem scaled(double t) const {
    Vec p = p1_;
    for (double& v : p) v *= t;
    return StationarySystem(f_, g_, p, x3_);
  }

 private:
  const GenFun& f_;
  const GenFun& g_;
  int k_;
  Vec p1_;
  Vec x3_;
};

StationaryPoint newton(const StationarySystem& sys, Vec y, const NewtonOptions& opts) {
  const int k = sys.k();
  StationaryPoint out;
  System s = sys.at(y, true);
  double res = sup_norm(s.residual);
  int it = 0;
  double cond = 1.0;
  while (true) {
    const LuDecomposition lu(s.jacobian);
    cond = lu.condition1();
    if (!(cond <= opts.max_condition)) {
      std::ostringstream msg;
      msg << "stationary system is degenerate (condition number " << cond << ")";
      throw DegeneracyError(msg.str(), cond);
    }
    if (res < opts.newton_tol) break;
    if (it >= opts.max_iter) {
      std::ostringstream msg;
      msg << "Newton did not converge in " << opts.max_iter << " iterations (residual " << res
          << ")";
      throw ConvergenceError(msg.str(), y, res, it);
    }
    const Vec step = lu.solve(s.residual);
    double lambda = 1.0;
    Vec trial(2 * k);
    System ts;
    double tres = 0.0;
    for (int bt = 0; bt < 30; ++bt) {
      for (int i = 0; i < 2 * k; ++i) trial[i] = y[i] - lambda * step[i];
      ts = sys.at(trial, true);
      tres = sup_norm(ts.residual);
      if (std::isfinite(tres) && tres <= (1.0 - 1e-4 * lambda) * res) break;
      lambda *= opts.damping;
    }
    ++it;
    if (!std::isfinite(tres)) {
      throw ConvergenceError("Newton iterate left the domain (non-finite residual)", y, res, it);
    }
    y = std::move(trial);
    s = std::move(ts);
    res = tres;
  }
  out.p_bar.assign(y.begin(), y.begin() + k);
  out.x_bar.assign(y.begin() + k, y.end());
  out.residual = res;
  out.iterations = it;
  out.converged = true;
  out.condition = cond;
  out.value = sys.value(y);
  return out;
}

void check_chain(const GenFun& f, const GenFun& g) {
  if (g.n() != f.m()) {
    std::ostringstream msg;
    msg << "compose: dimension chain broken (G has n = " << g.n() << ", F has m = " << f.m()
        << ")";
    throw ArgumentError(msg.str());
  }
}

}  // namespace

StationaryPoint stationary_point(const GenFun& f, const GenFun& g, std::span<const double> p1,
                                 std::span<const double> x3, const NewtonOptions& opts) {
  opts.validate();
  check_chain(f, g);
  if (static_cast<int>(p1.size()) != g.m() || static_cast<int>(x3.size()) != f.n()) {
    throw ArgumentError("stationary_point: point dimensions do not match the operands");
  }
  if (euclid(p1) > g.domain_radius()) {
    std::ostringstream msg;
    msg << "stationary_point: |p1| = " << euclid(p1) << " exceeds the domain radius "
        << g.domain_radius() << " of '" << g.label() << "'";
    throw ArgumentError(msg.str());
  }
  const StationarySystem sys(f, g, p1, x3);
  const Vec y0 = sys.base_solution();
  StationaryPoint direct = newton(sys, y0, opts);

  const bool at_core = std::all_of(p1.begin(), p1.end(), [](double v) { return v == 0.0; });
  if (opts.branch_check && !at_core && sys.k() > 0) {
    Vec y = y0;
    constexpr int kSteps = 10;
    for (int s = 1; s <= kSteps; ++s) {
      const StationarySystem step = sys.scaled(static_cast<double>(s) / kSteps);
      const StationaryPoint sp = newton(step, y, opts);
      y = concat(sp.p_bar, sp.x_bar);
    }
    const Vec yd = concat(direct.p_bar, direct.x_bar);
    double gap = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) gap = std::max(gap, std::abs(y[i] - yd[i]));
    if (gap > 1e-8 * (1.0 + sup_norm(yd))) {
      std::ostringstream msg;
      msg << "Newton converged to a branch not connected to the base solution (gap " << gap
          << ")";
      throw ConvergenceError(msg.str(), yd, direct.residual, direct.iterations);
    }
  }
  return direct;
}

CompositeEvaluation evaluate_composite(const GenFun& f, const GenFun& g,
                                       std::span<const double> p1, std::span<const double> x3,
                                       int order, const NewtonOptions& opts) {
  if (order < 0 || order > kMaxJetOrder) throw ArgumentError("evaluate_composite: order");
  CompositeEvaluation out;
  out.point = stationary_point(f, g, p1, x3, opts);
  {
    // Value of the composite at (0, x3); the base solution is exact there for
    // normalized operands, so this costs one residual evaluation.
    const Vec zero(p1.size(), 0.0);
    NewtonOptions base = opts;
    base.branch_check = false;
    out.offset = stationary_point(f, g, zero, x3, base).value;
  }
  const int m = g.m();
  const int n = f.n();
  const int k = g.n();
  const int nz = m + n;
  const StationaryPoint& sp = out.point;
  Jet c(nz, order);
  c.coeff(0) = sp.value - out.offset;
  if (order == 0) {
    out.taylor = std::move(c);
    return out;
  }

  const int r = order - 1;
  const Jet tg = g.taylor(concat(p1, sp.x_bar), order);
  const Jet tf = f.taylor(concat(sp.p_bar, x3), order);
  std::vector<Jet> dgx, dgp, dfp, dfx;
  for (int j = 0; j < k; ++j) {
    dgx.push_back(derivative(tg, m + j));
    dfp.push_back(derivative(tf, j));
  }
  for (int i = 0; i < m; ++i) dgp.push_back(derivative(tg, i));
  for (int i = 0; i < n; ++i) dfx.push_back(derivative(tf, k + i));

  const std::vector<Jet> z = seed_jets(concat(p1, x3), r);
  std::vector<Jet> pb = constant_jets(sp.p_bar, nz, r);
  std::vector<Jet> xb = constant_jets(sp.x_bar, nz, r);
  auto g_args = [&] {
    std::vector<Jet> a(z.begin(), z.begin() + m);
    a.insert(a.end(), xb.begin(), xb.end());
    return a;
  };
  auto f_args = [&] {
    std::vector<Jet> a(pb.begin(), pb.end());
    a.insert(a.end(), z.begin() + m, z.end());
    return a;
  };

  if (r >= 1 && k > 0) {
    Matrix jac = Matrix::identity(2 * k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        jac(i, k + j) = -tg.hess(m + i, m + j);
        jac(k + i, j) = -tf.hess(i, j);
      }
    const Matrix jinv = inverse(jac);
    // Fixed-Jacobian iteration on the jets of (pbar, xbar)(z); each sweep
    // fixes one more order.
    for (int sweep = 0; sweep < r; ++sweep) {
      const auto ga = g_args();
      const auto fa = f_args();
      std::vector<Jet> h;
      h.reserve(2 * k);
      for (int j = 0; j < k; ++j) h.push_back(pb[j] - substitute(dgx[j], ga));
      for (int j = 0; j < k; ++j) h.push_back(xb[j] - substitute(dfp[j], fa));
      for (Jet& e : h) e.coeff(0) = 0.0;
      for (int i = 0; i < 2 * k; ++i) {
        Jet& yi = i < k ? pb[i] : xb[i - k];
        for (int j = 0; j < 2 * k; ++j) {
          if (jinv(i, j) != 0.0) yi.add_scaled(h[j], -jinv(i, j));
        }
      }
    }
  }

  const auto ga = g_args();
  const auto fa = f_args();
  std::vector<Jet> grad;
  grad.reserve(nz);
  for (int i = 0; i < m; ++i) grad.push_back(substitute(dgp[i], ga));
  for (int i = 0; i < n; ++i) grad.push_back(substitute(dfx[i], fa));

  // c_a = g_v[a - e_v] / a_v for every v in a; averaged for symmetry.
  const JetLayout& lc = c.layout();
  const JetLayout& lg = grad[0].layout();
  for (int idx = 1; idx < static_cast<int>(lc.size()); ++idx) {
    const auto& t = lc.tuple(idx);
    const int deg = lc.degree(idx);
    double sum = 0.0;
    for (int s = 0; s < deg; ++s) {
      const int v = t[s];
      int rest[3];
      int nr = 0;
      int mult = 0;
      for (int u = 0; u < deg; ++u) {
        if (t[u] == v) ++mult;
        if (u != s) rest[nr++] = t[u];
      }
      sum += grad[v].coeff(lg.index_of(std::span<const int>(rest, nr))) / mult;
    }
    c.coeff(idx) = sum / deg;
  }
  out.taylor = std::move(c);
  return out;
}

GenFun compose(const GenFun& f, const GenFun& g, const NewtonOptions& opts) {
  opts.validate();
  check_chain(f, g);
  const int m = g.m();
  const int n = f.n();
  const double radius = 0.5 * std::min(f.domain_radius(), g.domain_radius());
  return GenFun(
      m, n,
      [f, g, m, n, opts](std::span<const Jet> a) {
        const Vec z = values_of(a);
        const int q = a.empty() ? 0 : a[0].order();
        const int nv = a.empty() ? 0 : a[0].nvars();
        const std::span<const double> zs(z);
        CompositeEvaluation ev = evaluate_composite(f, g, zs.subspan(0, m), zs.subspan(m, n), q, opts);
        if (q == 0) return Jet::constant(ev.taylor.value(), nv, 0);
        if (nv == m + n && is_seed(a)) return std::move(ev.taylor);
        return substitute(ev.taylor, a);
      },
      radius, "(" + f.label() + " o " + g.label() + ")");
}

MonoidGenFun change_coordinates(const MonoidGenFun& s, const SmoothMap& g,
                                const SmoothMap& g_inv, const NewtonOptions& opts) {
  const int d = s.d();
  if (g.in_dim() != d || g.out_dim() != d || g_inv.in_dim() != d || g_inv.out_dim() != d) {
    throw ArgumentError("change_coordinates: maps must be R^d -> R^d");
  }
  const GenFun lift = cotangent_lift(g);
  const GenFun lift_inv = cotangent_lift(g_inv);
  const GenFun inner = compose(s.genfun(), tensor(lift, lift), opts);
  const GenFun out = compose(lift_inv, inner, opts);
  return MonoidGenFun(out.with_label(s.label() + "@" + g.label()));
}

MonoidGenFun change_coordinates(const MonoidGenFun& s, const SmoothMap& g,
                                const NewtonOptions& opts) {
  return change_coordinates(s, g, inverse_map(g), opts);
}

}  // namespace symgf
