#include "symgf_cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "symgf/compose.hpp"
#include "symgf/errors.hpp"
#include "symgf/genfun.hpp"
#include "symgf/io.hpp"
#include "symgf/kontsevich.hpp"
#include "symgf/lie.hpp"
#include "symgf/poisson.hpp"
#include "symgf/poly.hpp"
#include "symgf/verify.hpp"

namespace symgf::cli {
namespace {

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t{
      {"unit", 1e-12},
      {"associativity", 1e-10},
      {"groupoid.source_poisson", 1e-10},
      {"groupoid.target_anti_poisson", 1e-10},
      {"groupoid.source_target_commute", 1e-10},
      {"jacobi", 1e-10},
      {"morphism", 1e-10},
      {"poisson_map", 1e-8},
      {"fd", 1e-6},
  };
  return t;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t[]()");
  const auto e = s.find_last_not_of(" \t[]()");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

double parse_number(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InputError("bad number for " + what + ": '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) {
    throw InputError("bad number for " + what + ": '" + s + "'");
  }
  return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(trim(text));
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(trim(item), what));
  return out;
}

void apply_tolerances(const std::vector<std::string>& specs, std::map<std::string, double>& tol) {
  for (const std::string& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw InputError("--tol expects axiom=value, got '" + spec + "'");
    const std::string name = spec.substr(0, eq);
    const double v = parse_number(spec.substr(eq + 1), "--tol " + name);
    if (!(v > 0.0)) throw InputError("tolerance for " + name + " must be positive");
    if (name == "groupoid") {
      for (auto& [k, t] : tol) {
        if (k.rfind("groupoid.", 0) == 0) t = v;
      }
      continue;
    }
    auto it = tol.find(name);
    if (it == tol.end()) throw InputError("unknown axiom in --tol: '" + name + "'");
    it->second = v;
  }
}

void apply_box(const std::string& text, GridSpec& grid) {
  const auto v = parse_list(text, "--x-box");
  if (v.size() < 2 || v.size() % 2 != 0) throw InputError("--x-box expects lo,hi pairs");
  grid.x_lo.clear();
  grid.x_hi.clear();
  for (std::size_t i = 0; i < v.size(); i += 2) {
    if (!(v[i] < v[i + 1])) throw InputError("--x-box interval must have lo < hi");
    grid.x_lo.push_back(v[i]);
    grid.x_hi.push_back(v[i + 1]);
  }
}

// The monoid selected by --builtin / --genfun, with provenance for the report.
struct Selected {
  MonoidGenFun monoid;
  std::string description;
  std::optional<KontsevichFit> fit;
  std::string fit_error;
};

LieStructure selected_algebra(const RunConfig& cfg) {
  if (!cfg.lie_path.empty()) return load_lie(cfg.lie_path);
  if (cfg.algebra == "so3") return LieStructure::so3();
  if (cfg.algebra == "heisenberg") return LieStructure::heisenberg();
  if (cfg.algebra == "abelian") return LieStructure::abelian(cfg.d);
  throw InputError("unknown --algebra '" + cfg.algebra + "'");
}

PolyPoisson kontsevich_alpha(const RunConfig& cfg) {
  if (!cfg.alpha_path.empty()) return load_poisson(cfg.alpha_path);
  if (cfg.d == 3) return kirillov_kostant(LieStructure::so3());
  if (cfg.d % 2 == 0) return PolyPoisson::constant(standard_jinv(cfg.d));
  throw InputError("kontsevich without --alpha needs d = 3 or even d");
}

Selected select_monoid(const RunConfig& cfg) {
  Selected out;
  if (!cfg.genfun_path.empty()) {
    const LoadedGenFun loaded = load_genfun(cfg.genfun_path);
    if (!loaded.monoid) throw InputError(cfg.genfun_path + " is not a monoid generating function");
    out.monoid = loaded.as_monoid();
    out.description = "genfun:" + cfg.genfun_path;
    return out;
  }
  if (cfg.builtin == "symplectic") {
    if (cfg.d < 2 || cfg.d % 2 != 0) throw InputError("symplectic monoid needs even --d");
    out.monoid = symplectic_monoid(standard_jinv(cfg.d));
  } else if (cfg.builtin == "identity") {
    if (cfg.d < 1) throw InputError("--d must be positive");
    out.monoid = MonoidGenFun(lie_monoid(LieStructure::abelian(cfg.d), 1).genfun().with_label(
        "identity" + std::to_string(cfg.d)));
  } else if (cfg.builtin == "lie") {
    out.monoid = lie_monoid(selected_algebra(cfg), cfg.trunc);
  } else if (cfg.builtin == "kontsevich") {
    const PolyPoisson alpha = kontsevich_alpha(cfg);
    if (cfg.order == 2) out.fit = kontsevich_order2_fit();
    try {
      out.monoid = kontsevich_monoid(alpha, cfg.eps, cfg.order);
    } catch (const NumericDomainError& e) {
      out.fit_error = e.what();
    }
  } else {
    throw InputError("unknown --builtin '" + cfg.builtin + "'");
  }
  out.description = "builtin:" + cfg.builtin;
  return out;
}

void write_config(JsonWriter& w, const RunConfig& cfg) {
  w.key("config").begin_object();
  w.key("command").value(cfg.command);
  w.key("builtin").value(cfg.builtin);
  w.key("genfun").value(cfg.genfun_path);
  w.key("alpha").value(cfg.alpha_path);
  w.key("lie").value(cfg.lie_path);
  w.key("algebra").value(cfg.algebra);
  w.key("d").value(cfg.d);
  w.key("eps").value(cfg.eps);
  w.key("order").value(cfg.order);
  w.key("trunc").value(cfg.trunc);
  w.key("grid_n").value(cfg.grid.n);
  w.key("p_radius").value(cfg.grid.p_radius);
  w.key("x_lo").value(std::span<const double>(cfg.grid.x_lo));
  w.key("x_hi").value(std::span<const double>(cfg.grid.x_hi));
  w.key("seed").value(static_cast<long long>(cfg.grid.seed));
  w.key("jobs").value(cfg.jobs);
  w.key("tol").begin_object();
  for (const auto& [k, v] : cfg.tol) w.key(k).value(v);
  w.end_object();
  if (cfg.command == "compose") {
    w.key("f").begin_array();
    for (const auto& s : cfg.f_spec) w.value(s);
    w.end_array();
    w.key("g").begin_array();
    for (const auto& s : cfg.g_spec) w.value(s);
    w.end_array();
    w.key("fd_step").value(cfg.fd_step);
  }
  if (cfg.command == "morphism") w.key("map").value(cfg.map_spec);
  w.end_object();
}

CheckOptions check_options(const RunConfig& cfg, double tol) {
  CheckOptions o;
  o.grid = cfg.grid;
  o.tol = tol;
  o.jobs = cfg.jobs;
  return o;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string report_table(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-32s %-13s %-13s %6s %-9s %s\n", "axiom", "max", "mean", "n",
                "tol", "status");
  os << line;
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line, "%-32s %-13s %-13s %6d %-9.1e %s\n", r.axiom.c_str(),
                  fmt(r.max).c_str(), fmt(r.mean).c_str(), r.n, r.tol,
                  r.passed() ? "pass" : "FAIL");
    os << line;
  }
  return os.str();
}

struct Output {
  std::string text;
  int code = kExitPass;
};

void write_reports(JsonWriter& w, const std::vector<VerificationReport>& reports) {
  w.key("reports").begin_array();
  for (const auto& r : reports) write_json(w, r);
  w.end_array();
  w.key("failing_axioms").begin_array();
  for (const auto& r : reports) {
    if (!r.passed()) w.value(r.axiom);
  }
  w.end_array();
}

int reports_code(const std::vector<VerificationReport>& reports, std::ostream& err) {
  int code = kExitPass;
  for (const auto& r : reports) {
    if (!r.passed()) {
      err << "verification failed: " << r.axiom << " (max residual " << format_double(r.max)
          << ", tol " << format_double(r.tol) << ")\n";
      code = kExitFail;
    }
  }
  return code;
}

Output cmd_verify(const RunConfig& cfg, std::ostream& err) {
  Selected sel = select_monoid(cfg);
  std::vector<VerificationReport> reports;
  bool fit_ok = sel.fit_error.empty();
  if (fit_ok) {
    const MonoidGenFun& s = sel.monoid;
    reports.push_back(check_unit(s, check_options(cfg, cfg.tol.at("unit"))));
    reports.push_back(check_associativity(s, check_options(cfg, cfg.tol.at("associativity"))));
    const double gtol = std::min({cfg.tol.at("groupoid.source_poisson"),
                                  cfg.tol.at("groupoid.target_anti_poisson"),
                                  cfg.tol.at("groupoid.source_target_commute")});
    GroupoidReport g = check_groupoid(s, check_options(cfg, gtol));
    for (VerificationReport* r :
         {&g.source_poisson, &g.target_anti_poisson, &g.source_target_commute}) {
      r->tol = cfg.tol.at(r->axiom);
      reports.push_back(*r);
    }
    CheckOptions jo = check_options(cfg, cfg.tol.at("jacobi"));
    if (jo.grid.x_lo.size() == 1 && s.d() > 1) {
      jo.grid.x_lo.assign(s.d(), jo.grid.x_lo[0]);
      jo.grid.x_hi.assign(s.d(), jo.grid.x_hi[0]);
    }
    reports.push_back(check_jacobi(poisson_bivector(s), jo));
  }

  JsonWriter w;
  w.begin_object();
  w.key("command").value("verify");
  w.key("monoid").value(fit_ok ? sel.monoid.label() : std::string("kontsevich"));
  w.key("source").value(sel.description);
  w.key("d").value(fit_ok ? sel.monoid.d() : cfg.d);
  write_config(w, cfg);
  w.key("bracket_sign").value(bracket_sign());
  if (sel.fit) {
    w.key("kontsevich_fit").begin_object();
    w.key("c_a").value(sel.fit->c_a);
    w.key("c_b").value(sel.fit->c_b);
    w.key("floor").value(sel.fit->floor);
    w.key("samples").value(sel.fit->samples);
    w.key("gate").value(kKontsevichFitGate);
    w.key("gate_passed").value(fit_ok);
    if (!fit_ok) w.key("error").value(sel.fit_error);
    w.end_object();
  }
  Output out;
  out.code = reports_code(reports, err);
  if (!fit_ok) {
    err << "verification failed: kontsevich_fit (" << sel.fit_error << ")\n";
    out.code = kExitFail;
  }
  write_reports(w, reports);
  w.key("passed").value(out.code == kExitPass);
  w.end_object();
  out.text = cfg.format == "table" ? report_table(reports) : w.str() + "\n";
  return out;
}

Output cmd_poisson(const RunConfig& cfg) {
  Selected sel = select_monoid(cfg);
  if (!sel.fit_error.empty()) throw NumericDomainError(sel.fit_error);
  const MonoidGenFun& s = sel.monoid;
  const int d = s.d();
  const PoissonField alpha = poisson_bivector(s);
  const GroupoidMaps st = source_target(s);

  std::vector<std::pair<Vec, Vec>> points;  // (p, x)
  if (!cfg.x_point.empty()) {
    if (static_cast<int>(cfg.x_point.size()) != d) throw InputError("--x has the wrong length");
    Vec p = cfg.p_point.empty() ? Vec(d, 0.0) : cfg.p_point;
    if (static_cast<int>(p.size()) != d) throw InputError("--p has the wrong length");
    points.emplace_back(p, cfg.x_point);
  } else {
    const double r = effective_p_radius(cfg.grid.p_radius, s.domain_radius());
    for (const GridPoint& g : make_grid(cfg.grid, 1, d, d, r)) points.emplace_back(g.p[0], g.x);
  }

  JsonWriter w;
  std::ostringstream table;
  w.begin_object();
  w.key("command").value("poisson");
  w.key("monoid").value(s.label());
  w.key("d").value(d);
  write_config(w, cfg);
  w.key("bracket_sign").value(bracket_sign());
  w.key("points").begin_array();
  table << "# x | alpha (row-major) | p | s | t\n";
  for (const auto& [p, x] : points) {
    Vec px = p;
    px.insert(px.end(), x.begin(), x.end());
    const Matrix a = alpha(x);
    const Vec sv = st.source(px);
    const Vec tv = st.target(px);
    w.begin_object();
    w.key("x").value(std::span<const double>(x));
    w.key("p").value(std::span<const double>(p));
    w.key("alpha").begin_array();
    for (int i = 0; i < d; ++i) {
      Vec row(d);
      for (int j = 0; j < d; ++j) row[j] = a(i, j);
      w.value(std::span<const double>(row));
    }
    w.end_array();
    w.key("s").value(std::span<const double>(sv));
    w.key("t").value(std::span<const double>(tv));
    w.end_object();

    auto put = [&](std::span<const double> v) {
      for (double c : v) table << ' ' << format_double(c);
      table << " |";
    };
    put(x);
    Vec flat(a.data().begin(), a.data().end());
    put(flat);
    put(p);
    put(sv);
    put(tv);
    table << '\n';
  }
  w.end_array();
  w.end_object();
  return {cfg.format == "table" ? table.str() : w.str() + "\n", kExitPass};
}

GenFun operand(const std::vector<std::string>& atoms, const RunConfig& cfg,
               std::optional<Selected>& monoid) {
  if (atoms.empty()) throw InputError("empty operand list");
  std::optional<GenFun> acc;
  for (const std::string& atom : atoms) {
    GenFun g;
    if (atom == "identity") {
      g = identity_genfun(cfg.d);
    } else if (atom == "unit") {
      g = unit_genfun(cfg.d);
    } else if (atom == "monoid") {
      if (!monoid) monoid = select_monoid(cfg);
      if (!monoid->fit_error.empty()) throw NumericDomainError(monoid->fit_error);
      g = monoid->monoid.genfun();
    } else {
      g = load_genfun(atom).genfun;
    }
    acc = acc ? tensor(*acc, g) : g;
  }
  return *acc;
}

Output cmd_compose(const RunConfig& cfg, std::ostream& err) {
  std::optional<Selected> monoid;
  const GenFun f = operand(cfg.f_spec, cfg, monoid);
  const GenFun g = operand(cfg.g_spec, cfg, monoid);
  if (f.m() != g.n()) {
    throw InputError("compose: F has m = " + std::to_string(f.m()) + " but G has n = " +
                     std::to_string(g.n()));
  }
  const int m = g.m();
  const int n = f.n();
  std::vector<std::pair<Vec, Vec>> points;
  if (!cfg.x_point.empty() || !cfg.p_point.empty()) {
    if (static_cast<int>(cfg.p_point.size()) != m) throw InputError("--p has the wrong length");
    if (static_cast<int>(cfg.x_point.size()) != n) throw InputError("--x has the wrong length");
    points.emplace_back(cfg.p_point, cfg.x_point);
  } else {
    const double radius = 0.5 * std::min(f.domain_radius(), g.domain_radius());
    const double r = effective_p_radius(cfg.grid.p_radius, radius);
    for (const GridPoint& gp : make_grid(cfg.grid, 1, m, n, r)) points.emplace_back(gp.p[0], gp.x);
  }

  struct Row {
    CompositeEvaluation eval;
    std::string error;
    Vec fd_p, fd_x;
    double fd_error = 0.0;
  };
  std::vector<Row> rows(points.size());
  NewtonOptions newton;
  parallel_for(static_cast<int>(points.size()), cfg.jobs, [&](int i) {
    Row& row = rows[i];
    const auto& [p, x] = points[i];
    try {
      row.eval = evaluate_composite(f, g, p, x, 1, newton);
      if (cfg.fd_step > 0.0) {
        const double h = cfg.fd_step;
        auto value_at = [&](Vec pp, Vec xx) {
          return evaluate_composite(f, g, pp, xx, 0, newton).taylor.value();
        };
        for (int k = 0; k < m + n; ++k) {
          Vec pp = p, xx = x, pm = p, xm = x;
          if (k < m) {
            pp[k] += h;
            pm[k] -= h;
          } else {
            xx[k - m] += h;
            xm[k - m] -= h;
          }
          const double fd = (value_at(pp, xx) - value_at(pm, xm)) / (2.0 * h);
          const double exact = row.eval.taylor.grad(k);
          row.fd_error = std::max(row.fd_error, std::abs(fd - exact) / std::max(1.0, std::abs(exact)));
          (k < m ? row.fd_p : row.fd_x).push_back(fd);
        }
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });

  JsonWriter w;
  std::ostringstream table;
  w.begin_object();
  w.key("command").value("compose");
  w.key("f").value(f.label());
  w.key("g").value(g.label());
  w.key("m").value(m);
  w.key("n").value(n);
  write_config(w, cfg);
  w.key("points").begin_array();
  table << "# p | x | value | grad_p | grad_x | iterations\n";
  int errors = 0;
  int fd_failures = 0;
  double fd_max = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& row = rows[i];
    const auto& [p, x] = points[i];
    w.begin_object();
    w.key("p").value(std::span<const double>(p));
    w.key("x").value(std::span<const double>(x));
    for (double c : p) table << format_double(c) << ' ';
    table << "| ";
    for (double c : x) table << format_double(c) << ' ';
    if (!row.error.empty()) {
      ++errors;
      w.key("error").value(row.error);
      w.end_object();
      table << "| error: " << row.error << '\n';
      continue;
    }
    Vec gp(m), gx(n);
    for (int k = 0; k < m; ++k) gp[k] = row.eval.taylor.grad(k);
    for (int k = 0; k < n; ++k) gx[k] = row.eval.taylor.grad(m + k);
    w.key("value").value(row.eval.taylor.value());
    w.key("grad_p").value(std::span<const double>(gp));
    w.key("grad_x").value(std::span<const double>(gx));
    w.key("iterations").value(row.eval.point.iterations);
    w.key("residual").value(row.eval.point.residual);
    w.key("condition").value(row.eval.point.condition);
    w.key("offset").value(row.eval.offset);
    if (cfg.fd_step > 0.0) {
      w.key("fd_grad_p").value(std::span<const double>(row.fd_p));
      w.key("fd_grad_x").value(std::span<const double>(row.fd_x));
      w.key("fd_error").value(row.fd_error);
      fd_max = std::max(fd_max, row.fd_error);
      if (!(row.fd_error < cfg.tol.at("fd"))) ++fd_failures;
    }
    w.end_object();
    table << "| " << format_double(row.eval.taylor.value()) << " |";
    for (double c : gp) table << ' ' << format_double(c);
    table << " |";
    for (double c : gx) table << ' ' << format_double(c);
    table << " | " << row.eval.point.iterations << '\n';
  }
  w.end_array();
  w.key("error_count").value(errors);
  if (cfg.fd_step > 0.0) {
    w.key("fd_max_error").value(fd_max);
    w.key("fd_failure_count").value(fd_failures);
  }
  const bool passed = errors == 0 && fd_failures == 0;
  w.key("passed").value(passed);
  w.end_object();
  if (errors > 0) err << "compose: " << errors << " point(s) failed to converge\n";
  if (fd_failures > 0) {
    err << "compose: finite differences disagree at " << fd_failures << " point(s), max "
        << format_double(fd_max) << "\n";
  }
  return {cfg.format == "table" ? table.str() : w.str() + "\n", passed ? kExitPass : kExitFail};
}

GenFun morphism_map(const RunConfig& cfg, int d) {
  if (cfg.map_spec == "identity") return cotangent_lift(SmoothMap::identity(d));
  const std::string text = read_text_file(cfg.map_spec);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(cfg.map_spec + ": " + e.what());
  }
  if (j.is_object() && j.contains("matrix")) {
    const Matrix a = parse_matrix(text);
    return cotangent_lift(SmoothMap::linear(a));
  }
  return parse_genfun(text, cfg.map_spec).genfun;
}

Output cmd_morphism(const RunConfig& cfg, std::ostream& err) {
  Selected sel = select_monoid(cfg);
  if (!sel.fit_error.empty()) throw NumericDomainError(sel.fit_error);
  const MonoidGenFun& s = sel.monoid;
  const GenFun f = morphism_map(cfg, s.d());
  if (f.m() != s.d() || f.n() != s.d()) {
    throw InputError("morphism map must be " + std::to_string(s.d()) + "x" +
                     std::to_string(s.d()));
  }
  std::vector<VerificationReport> reports;
  reports.push_back(check_morphism(f, s, s, check_options(cfg, cfg.tol.at("morphism"))));
  const PoissonField alpha = poisson_bivector(s);
  CheckOptions po = check_options(cfg, cfg.tol.at("poisson_map"));
  if (po.grid.x_lo.size() == 1 && s.d() > 1) {
    po.grid.x_lo.assign(s.d(), po.grid.x_lo[0]);
    po.grid.x_hi.assign(s.d(), po.grid.x_hi[0]);
  }
  reports.push_back(check_poisson_map(base_map(f), alpha, alpha, po));

  JsonWriter w;
  w.begin_object();
  w.key("command").value("morphism");
  w.key("monoid").value(s.label());
  w.key("map").value(f.label());
  w.key("d").value(s.d());
  write_config(w, cfg);
  write_reports(w, reports);
  const int code = reports_code(reports, err);
  w.key("passed").value(code == kExitPass);
  w.end_object();
  return {cfg.format == "table" ? report_table(reports) : w.str() + "\n", code};
}

void add_monoid_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--builtin", cfg.builtin, "symplectic, lie, kontsevich or identity")
      ->check(CLI::IsMember({"symplectic", "lie", "kontsevich", "identity"}));
  sub->add_option("--genfun", cfg.genfun_path, "monoid generating function (JSON)");
  sub->add_option("--d", cfg.d, "dimension of the base");
  sub->add_option("--eps", cfg.eps, "Kontsevich deformation parameter");
  sub->add_option("--order", cfg.order, "Kontsevich order in eps (1 or 2)");
  sub->add_option("--trunc", cfg.trunc, "BCH truncation degree (1..4)");
  sub->add_option("--alpha", cfg.alpha_path, "Poisson bivector (JSON)");
  sub->add_option("--algebra", cfg.algebra, "so3, heisenberg or abelian")
      ->check(CLI::IsMember({"so3", "heisenberg", "abelian"}));
  sub->add_option("--lie", cfg.lie_path, "Lie algebra structure constants (JSON)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string box;
  std::vector<std::string> tol_specs;
  std::string p_text, x_text;

  CLI::App app{"Generating-function calculus for symplectic monoids"};
  app.require_subcommand(1);
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--grid-n", cfg.grid.n, "number of grid points")->check(CLI::PositiveNumber);
    sub->add_option("--p-radius", cfg.grid.p_radius, "requested covector radius")
        ->check(CLI::PositiveNumber);
    sub->add_option("--x-box", box, "base box: lo,hi or lo1,hi1,lo2,hi2,...");
    sub->add_option("--tol", tol_specs, "axiom=value (repeatable; groupoid sets all three)");
    sub->add_option("--seed", cfg.grid.seed, "Halton scramble seed");
    sub->add_option("--out", cfg.out, "write the report here instead of stdout");
    sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "json or table")
        ->check(CLI::IsMember({"json", "table"}));
  };

  CLI::App* verify = app.add_subcommand("verify", "check unit, associativity, groupoid, Jacobi");
  add_monoid_options(verify, cfg);
  add_common(verify);

  CLI::App* poisson = app.add_subcommand("poisson", "bivector, source and target on a grid");
  add_monoid_options(poisson, cfg);
  add_common(poisson);
  poisson->add_option("--x", x_text, "single base point x1,x2,...");
  poisson->add_option("--p", p_text, "covector for the single point (default 0)");

  CLI::App* comp = app.add_subcommand("compose", "evaluate F o G");
  add_monoid_options(comp, cfg);
  add_common(comp);
  comp->add_option("--f", cfg.f_spec, "tensor factors of F: identity, unit, monoid or a JSON path")
      ->delimiter(',');
  comp->add_option("--g", cfg.g_spec, "tensor factors of G")->delimiter(',');
  comp->add_option("--p", p_text, "covector p1,...");
  comp->add_option("--x", x_text, "base point x1,...");
  comp->add_option("--fd-step", cfg.fd_step, "cross-check gradients by central differences");

  CLI::App* morph = app.add_subcommand("morphism", "check a monoid morphism and its base map");
  add_monoid_options(morph, cfg);
  add_common(morph);
  morph->add_option("--map", cfg.map_spec, "identity, a {\"matrix\"} JSON or a generating function");

  std::vector<std::string> args;
  for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      out << sub->help();
      return kExitPass;
    }
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.tol = default_tolerances();
    apply_tolerances(tol_specs, cfg.tol);
    if (!box.empty()) apply_box(box, cfg.grid);
    if (!p_text.empty()) cfg.p_point = parse_list(p_text, "--p");
    if (!x_text.empty()) cfg.x_point = parse_list(x_text, "--x");
    if (!(cfg.eps > 0.0)) throw InputError("--eps must be positive");
    if (cfg.fd_step < 0.0) throw InputError("--fd-step must be non-negative");

    Output result;
    if (cfg.command == "verify") {
      result = cmd_verify(cfg, err);
    } else if (cfg.command == "poisson") {
      result = cmd_poisson(cfg);
    } else if (cfg.command == "compose") {
      result = cmd_compose(cfg, err);
    } else {
      result = cmd_morphism(cfg, err);
    }
    if (cfg.out.empty()) {
      out << result.text;
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      file << result.text;
      if (!file) throw InputError("cannot write " + cfg.out);
    }
    return result.code;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const InvalidGenFunError& e) {
    err << "invalid generating function: " << e.what() << "\n";
  } catch (const UnsupportedOrderError& e) {
    err << "unsupported order: " << e.what() << "\n";
  } catch (const ArgumentError& e) {
    err << "invalid argument: " << e.what() << "\n";
  } catch (const NumericDomainError& e) {
    err << "numeric domain: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitInput;
}

}  // namespace symgf::cli
