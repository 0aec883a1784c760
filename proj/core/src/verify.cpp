#include "symgf/verify.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "symgf/errors.hpp"

namespace symgf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec flatten(const GridPoint& g) {
  Vec out;
  for (const Vec& p : g.p) out.insert(out.end(), p.begin(), p.end());
  out.insert(out.end(), g.x.begin(), g.x.end());
  return out;
}

struct PointResult {
  std::vector<double> residuals;
  std::string error;
};

// Evaluates `residuals(point)` (K values) on the grid and folds each
// component into its own report. Evaluation errors count as failures of all
// K reports.
std::vector<VerificationReport> run(const std::vector<std::string>& axioms,
                                    const std::vector<GridPoint>& grid, double p_radius,
                                    const CheckOptions& opts,
                                    const std::function<std::vector<double>(const GridPoint&, int)>& fn) {
  if (!(opts.tol > 0.0)) throw ArgumentError("check: tolerance must be > 0");
  const int k = static_cast<int>(axioms.size());
  std::vector<PointResult> results(grid.size());
  parallel_for(static_cast<int>(grid.size()), opts.jobs, [&](int i) {
    PointResult& r = results[i];
    try {
      r.residuals = fn(grid[i], i);
    } catch (const std::exception& e) {
      r.residuals.assign(k, kInf);
      r.error = e.what();
    }
  });
  std::vector<VerificationReport> reports(k);
  for (int c = 0; c < k; ++c) {
    VerificationReport& rep = reports[c];
    rep.axiom = axioms[c];
    rep.n = static_cast<int>(grid.size());
    rep.tol = opts.tol;
    rep.grid = opts.grid;
    rep.p_radius = p_radius;
    double sum = 0.0;
    int finite = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const PointResult& r = results[i];
      double v = r.residuals[c];
      if (std::isnan(v)) v = kInf;
      const bool error = !r.error.empty();
      if (error) ++rep.error_count;
      if (std::isfinite(v)) {
        sum += v;
        ++finite;
      }
      rep.max = std::max(rep.max, v);
      if (error || !(v < opts.tol)) {
        ++rep.failure_count;
        if (static_cast<int>(rep.failures.size()) < opts.max_failures) {
          rep.failures.push_back({flatten(grid[i]), v, r.error});
        }
      }
    }
    rep.mean = finite > 0 ? sum / finite : 0.0;
  }
  return reports;
}

// Newton effort and renormalization constants of composite evaluations.
struct CompositeStats {
  int iterations = 0;
  double offset = 0.0;
  void merge(const CompositeEvaluation& ev) {
    iterations = std::max(iterations, ev.point.iterations);
    offset = std::max(offset, std::abs(ev.offset));
  }
};

void add_stats(VerificationReport& rep, const std::vector<CompositeStats>& stats) {
  int iterations = 0;
  double offset = 0.0;
  for (const auto& st : stats) {
    iterations = std::max(iterations, st.iterations);
    offset = std::max(offset, st.offset);
  }
  rep.info.emplace_back("max_newton_iterations", iterations);
  rep.info.emplace_back("max_renormalization_offset", offset);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

VerificationReport check_unit(const MonoidGenFun& s, const CheckOptions& opts) {
  const int d = s.d();
  const double r = effective_p_radius(opts.grid.p_radius, s.domain_radius());
  const auto grid = make_grid(opts.grid, 1, d, d, r);
  const Vec zero(d, 0.0);
  return run({"unit"}, grid, r, opts, [&](const GridPoint& g, int) {
    const double px = dot(g.p[0], g.x);
    const double left = s.value(g.p[0], zero, g.x);
    const double right = s.value(zero, g.p[0], g.x);
    return std::vector<double>{std::max(std::abs(left - px), std::abs(right - px))};
  })[0];
}

VerificationReport check_associativity(const MonoidGenFun& s, const CheckOptions& opts) {
  const int d = s.d();
  const GenFun id = identity_genfun(d);
  const GenFun s_i = tensor(s.genfun(), id);
  const GenFun i_s = tensor(id, s.genfun());
  const double r = effective_p_radius(opts.grid.p_radius, s.domain_radius());
  const auto grid = make_grid(opts.grid, 3, d, d, r);
  std::vector<CompositeStats> stats(grid.size());
  auto rep = run({"associativity"}, grid, r, opts, [&](const GridPoint& g, int i) {
    Vec p = g.p[0];
    p.insert(p.end(), g.p[1].begin(), g.p[1].end());
    p.insert(p.end(), g.p[2].begin(), g.p[2].end());
    const auto left = evaluate_composite(s.genfun(), s_i, p, g.x, 0, opts.newton);
    const auto right = evaluate_composite(s.genfun(), i_s, p, g.x, 0, opts.newton);
    stats[i].merge(left);
    stats[i].merge(right);
    return std::vector<double>{std::abs(left.taylor.value() - right.taylor.value())};
  })[0];
  add_stats(rep, stats);
  return rep;
}

GroupoidReport check_groupoid(const MonoidGenFun& s, const CheckOptions& opts) {
  const int d = s.d();
  const int sign = bracket_sign();
  const GroupoidMaps st = source_target(s);
  const PoissonField alpha = poisson_bivector(s);
  const double r = effective_p_radius(opts.grid.p_radius, s.domain_radius());
  const auto grid = make_grid(opts.grid, 1, d, d, r);
  auto reports = run({"groupoid.source_poisson", "groupoid.target_anti_poisson",
                      "groupoid.source_target_commute"},
                     grid, r, opts, [&](const GridPoint& g, int) {
                       Vec point = g.p[0];
                       point.insert(point.end(), g.x.begin(), g.x.end());
                       const auto seeds = seed_jets(point, 1);
                       const auto src = st.source(seeds);
                       const auto tgt = st.target(seeds);
                       const Matrix a_s = alpha(values_of(src));
                       const Matrix a_t = alpha(values_of(tgt));
                       double ss = 0.0, tt = 0.0, stc = 0.0;
                       for (int i = 0; i < d; ++i) {
                         for (int j = 0; j < d; ++j) {
                           if (i < j) {
                             const double bs = canonical_bracket(src[i], src[j], d, sign).value();
                             const double bt = canonical_bracket(tgt[i], tgt[j], d, sign).value();
                             ss = std::max(ss, std::abs(bs - a_s(i, j)));
                             tt = std::max(tt, std::abs(bt + a_t(i, j)));
                           }
                           const double bst = canonical_bracket(src[i], tgt[j], d, sign).value();
                           stc = std::max(stc, std::abs(bst));
                         }
                       }
                       return std::vector<double>{ss, tt, stc};
                     });
  for (auto& rep : reports) rep.bracket_sign = sign;
  return {std::move(reports[0]), std::move(reports[1]), std::move(reports[2])};
}

VerificationReport check_jacobi(const PoissonField& alpha, const CheckOptions& opts) {
  const auto grid = make_grid(opts.grid, 0, 0, alpha.d(), 0.0);
  return run({"jacobi"}, grid, 0.0, opts, [&](const GridPoint& g, int) {
    return std::vector<double>{jacobi_residual(alpha, g.x)};
  })[0];
}

VerificationReport check_morphism(const GenFun& f, const MonoidGenFun& s_m,
                                  const MonoidGenFun& s_n, const CheckOptions& opts) {
  const int dm = s_m.d();
  const int dn = s_n.d();
  if (f.m() != dm || f.n() != dn) {
    throw ArgumentError("check_morphism: F must have m = d_M and n = d_N");
  }
  const GenFun ff = tensor(f, f);
  const double radius = std::min({s_m.domain_radius(), s_n.domain_radius(), f.domain_radius()});
  const double r = effective_p_radius(opts.grid.p_radius, radius);
  const auto grid = make_grid(opts.grid, 2, dm, dn, r);
  std::vector<CompositeStats> stats(grid.size());
  auto rep = run({"morphism"}, grid, r, opts, [&](const GridPoint& g, int i) {
    Vec p = g.p[0];
    p.insert(p.end(), g.p[1].begin(), g.p[1].end());
    const auto left = evaluate_composite(f, s_m.genfun(), p, g.x, 0, opts.newton);
    const auto right = evaluate_composite(s_n.genfun(), ff, p, g.x, 0, opts.newton);
    stats[i].merge(left);
    stats[i].merge(right);
    return std::vector<double>{std::abs(left.taylor.value() - right.taylor.value())};
  })[0];
  add_stats(rep, stats);
  return rep;
}

VerificationReport check_poisson_map(const SmoothMap& phi, const PoissonField& alpha_n,
                                     const PoissonField& alpha_m, const CheckOptions& opts) {
  const int dn = alpha_n.d();
  const int dm = alpha_m.d();
  if (phi.in_dim() != dn || phi.out_dim() != dm) {
    throw ArgumentError("check_poisson_map: phi must map R^{d_N} to R^{d_M}");
  }
  const auto grid = make_grid(opts.grid, 0, 0, dn, 0.0);
  return run({"poisson_map"}, grid, 0.0, opts, [&](const GridPoint& g, int) {
    const Matrix j = phi.jacobian(g.x);
    const Matrix pushed = j * alpha_n(g.x) * j.transpose();
    const Matrix target = alpha_m(phi(std::span<const double>(g.x)));
    return std::vector<double>{(target - pushed).max_abs()};
  })[0];
}

}  // namespace symgf
