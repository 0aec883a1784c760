#include "symgf/poisson.hpp"

#include <cmath>

#include "symgf/errors.hpp"

namespace symgf {

namespace {

// Expands S at (p1, p2, x) to `order` and returns d/d(var) restricted to the
// slice given by `keep` (S variable -> output variable, -1 = held fixed),
// evaluated on `args`.
Jet slice_derivative(const Jet& t, int var, const std::vector<int>& keep, int nkeep,
                     std::span<const Jet> args) {
  const Jet restricted = restrict_vars(derivative(t, var), keep, nkeep);
  if (static_cast<int>(args.size()) == nkeep && args[0].nvars() == nkeep &&
      args[0].order() == restricted.order() && is_seed(args)) {
    return restricted;
  }
  return substitute(restricted, args);
}

}  // namespace

PoissonField poisson_bivector(const MonoidGenFun& s) {
  const int d = s.d();
  const GenFun f = s.genfun();
  return PoissonField(
      d,
      [f, d](std::span<const Jet> x) {
        const int q = x[0].order();
        if (q + 2 > kMaxJetOrder) {
          throw ArgumentError("poisson_bivector: jets of alpha are available to order 1");
        }
        Vec point(2 * d, 0.0);
        for (const Jet& xi : x) point.push_back(xi.value());
        const Jet t = f.taylor(point, q + 2);
        std::vector<Jet> out;
        if (q == 0) {
          for (int k = 0; k < d; ++k)
            for (int l = k + 1; l < d; ++l) {
              const double v = t.hess(k, d + l) - t.hess(l, d + k);
              out.push_back(Jet::constant(v, x[0].nvars(), 0));
            }
          return out;
        }
        std::vector<int> keep(3 * d, -1);
        for (int j = 0; j < d; ++j) keep[2 * d + j] = j;
        for (int k = 0; k < d; ++k)
          for (int l = k + 1; l < d; ++l) {
            Jet a = derivative(derivative(t, k), d + l);
            a -= derivative(derivative(t, l), d + k);
            const Jet r = restrict_vars(a, keep, d);
            const bool seeds = x[0].nvars() == d && is_seed(x);
            out.push_back(seeds ? r : substitute(r, x));
          }
        return out;
      },
      "bivector(" + s.label() + ")");
}

Vec GroupoidMaps::embed(std::span<const double> x) {
  Vec out(x.size(), 0.0);
  out.insert(out.end(), x.begin(), x.end());
  return out;
}

GroupoidMaps source_target(const MonoidGenFun& s) {
  const int d = s.d();
  const GenFun f = s.genfun();
  auto make = [f, d](bool source) {
    return [f, d, source](std::span<const Jet> a) {
      const int q = a[0].order();
      if (q + 1 > kMaxJetOrder) throw ArgumentError("source/target: jet order too high");
      // Slice (p, 0, x) for the source, (0, p, x) for the target.
      Vec point(3 * d, 0.0);
      std::vector<int> keep(3 * d, -1);
      const int p_slot = source ? 0 : d;
      for (int i = 0; i < d; ++i) {
        point[p_slot + i] = a[i].value();
        point[2 * d + i] = a[d + i].value();
        keep[p_slot + i] = i;
        keep[2 * d + i] = d + i;
      }
      const Jet t = f.taylor(point, q + 1);
      const int grad_slot = source ? d : 0;
      std::vector<Jet> out;
      for (int l = 0; l < d; ++l) out.push_back(slice_derivative(t, grad_slot + l, keep, 2 * d, a));
      return out;
    };
  };
  GroupoidMaps g;
  g.d = d;
  g.source = SmoothMap(2 * d, d, make(true), "source(" + s.label() + ")");
  g.target = SmoothMap(2 * d, d, make(false), "target(" + s.label() + ")");
  return g;
}

Jet canonical_bracket(const Jet& f, const Jet& g, int d, int sign) {
  if (f.nvars() != 2 * d || g.nvars() != 2 * d) {
    throw ArgumentError("canonical_bracket: jets must be in 2d variables (p, x)");
  }
  if (sign != 1 && sign != -1) throw ArgumentError("canonical_bracket: sign must be +-1");
  if (f.order() < 1 || g.order() < 1) throw ArgumentError("canonical_bracket: need order >= 1");
  Jet out(2 * d, std::min(f.order(), g.order()) - 1);
  for (int i = 0; i < d; ++i) {
    const Jet fx = derivative(f, d + i), fp = derivative(f, i);
    const Jet gx = derivative(g, d + i), gp = derivative(g, i);
    Jet term = fx * gp;
    term -= fp * gx;
    out += term;
  }
  return out * static_cast<double>(sign);
}

double canonical_bracket(const ScalarJetFn& f, const ScalarJetFn& g,
                         std::span<const double> point, int sign) {
  if (point.size() % 2 != 0) throw ArgumentError("canonical_bracket: point must be (p, x)");
  const auto seeds = seed_jets(point, 1);
  return canonical_bracket(f(seeds), g(seeds), static_cast<int>(point.size() / 2), sign).value();
}

int calibrate_bracket_sign() {
  const MonoidGenFun s = symplectic_monoid(standard_jinv(2));
  const GroupoidMaps st = source_target(s);
  const Vec point{0.3, -0.2, 0.5, 0.1};
  const auto src = st.source(seed_jets(point, 1));
  const double bracket = canonical_bracket(src[0], src[1], 2, 1).value();
  const Matrix alpha = poisson_bivector(s)(values_of(src));
  const double expected = alpha(0, 1);
  if (std::abs(std::abs(bracket) - std::abs(expected)) > 1e-14 || expected == 0.0) {
    throw NumericDomainError("bracket sign calibration failed");
  }
  return bracket * expected > 0.0 ? 1 : -1;
}

int bracket_sign() {
  static const int sign = calibrate_bracket_sign();
  return sign;
}

}  // namespace symgf
