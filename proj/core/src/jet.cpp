#include "symgf/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "symgf/errors.hpp"

namespace symgf {

namespace {

void check_order(int order) {
  if (order < 0 || order > kMaxJetOrder) {
    throw ArgumentError("jet order must be in [0, 3], got " +
                        std::to_string(order));
  }
}

void check_compatible(const Jet& a, const Jet& b) {
  if (a.nvars() != b.nvars() || a.order() != b.order()) {
    throw ArgumentError("jet mismatch: (" + std::to_string(a.nvars()) + "," +
                        std::to_string(a.order()) + ") vs (" +
                        std::to_string(b.nvars()) + "," +
                        std::to_string(b.order()) + ")");
  }
}

double factorial_weight(const std::array<int, 3>& t, int degree) {
  if (degree <= 1) return 1.0;
  if (degree == 2) return t[0] == t[1] ? 2.0 : 1.0;
  if (t[0] == t[1] && t[1] == t[2]) return 6.0;
  if (t[0] == t[1] || t[1] == t[2]) return 2.0;
  return 1.0;
}

}  // namespace

JetLayout::JetLayout(int nvars, int order) : nvars_(nvars), order_(order) {
  if (nvars < 0) throw ArgumentError("jet nvars must be non-negative");
  check_order(order);
  const int n = nvars;
  degree_begin_[0] = 0;
  tuples_.push_back({-1, -1, -1});
  degrees_.push_back(0);
  degree_begin_[1] = 1;
  if (order >= 1) {
    for (int i = 0; i < n; ++i) {
      tuples_.push_back({i, -1, -1});
      degrees_.push_back(1);
    }
  }
  degree_begin_[2] = static_cast<int>(tuples_.size());
  if (order >= 2) {
    index2_.assign(static_cast<std::size_t>(n) * n, -1);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const int idx = static_cast<int>(tuples_.size());
        index2_[i * n + j] = idx;
        index2_[j * n + i] = idx;
        tuples_.push_back({i, j, -1});
        degrees_.push_back(2);
      }
    }
  }
  degree_begin_[3] = static_cast<int>(tuples_.size());
  if (order >= 3) {
    index3_.assign(static_cast<std::size_t>(n) * n * n, -1);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        for (int k = j; k < n; ++k) {
          const int idx = static_cast<int>(tuples_.size());
          std::array<int, 3> v{i, j, k};
          do {
            index3_[(static_cast<std::size_t>(v[0]) * n + v[1]) * n + v[2]] =
                idx;
          } while (std::next_permutation(v.begin(), v.end()));
          tuples_.push_back({i, j, k});
          degrees_.push_back(3);
        }
      }
    }
  }
  degree_begin_[4] = static_cast<int>(tuples_.size());

  const int count = static_cast<int>(tuples_.size());
  for (int a = 0; a < count; ++a) {
    for (int b = 0; b < count; ++b) {
      const int deg = degrees_[a] + degrees_[b];
      if (deg > order) continue;
      std::array<int, 3> merged{};
      int m = 0;
      for (int s = 0; s < degrees_[a]; ++s) merged[m++] = tuples_[a][s];
      for (int s = 0; s < degrees_[b]; ++s) merged[m++] = tuples_[b][s];
      products_.push_back(
          {a, b, index_of(std::span<const int>(merged.data(), m))});
    }
  }
}

std::shared_ptr<const JetLayout> JetLayout::get(int nvars, int order) {
  check_order(order);
  thread_local std::map<std::pair<int, int>, std::shared_ptr<const JetLayout>>
      local;
  const auto key = std::make_pair(nvars, order);
  if (auto it = local.find(key); it != local.end()) return it->second;

  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetLayout>>
      shared;
  std::shared_ptr<const JetLayout> layout;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = shared[key];
    if (!slot) slot = std::make_shared<const JetLayout>(nvars, order);
    layout = slot;
  }
  local.emplace(key, layout);
  return layout;
}

int JetLayout::index_of(int i, int j) const {
  return index2_[static_cast<std::size_t>(i) * nvars_ + j];
}

int JetLayout::index_of(int i, int j, int k) const {
  return index3_[(static_cast<std::size_t>(i) * nvars_ + j) * nvars_ + k];
}

int JetLayout::index_of(std::span<const int> vars) const {
  switch (vars.size()) {
    case 0:
      return 0;
    case 1:
      return index_of(vars[0]);
    case 2:
      return index_of(vars[0], vars[1]);
    case 3:
      return index_of(vars[0], vars[1], vars[2]);
    default:
      throw ArgumentError("multi-index degree exceeds 3");
  }
}

Jet::Jet(int nvars, int order)
    : layout_(JetLayout::get(nvars, order)), coeffs_(layout_->size(), 0.0) {}

Jet Jet::constant(double value, int nvars, int order) {
  Jet j(nvars, order);
  j.coeffs_[0] = value;
  return j;
}

Jet Jet::variable(int index, double value, int nvars, int order) {
  if (index < 0 || index >= nvars) {
    throw ArgumentError("jet variable index " + std::to_string(index) +
                        " out of range for nvars " + std::to_string(nvars));
  }
  Jet j = constant(value, nvars, order);
  if (order >= 1) j.coeffs_[1 + index] = 1.0;
  return j;
}

double Jet::grad(int i) const {
  if (order() < 1) return 0.0;
  return coeffs_[1 + i];
}

double Jet::hess(int i, int j) const {
  if (order() < 2) return 0.0;
  const double c = coeffs_[layout_->index_of(i, j)];
  return i == j ? 2.0 * c : c;
}

double Jet::third(int i, int j, int k) const {
  if (order() < 3) return 0.0;
  const int idx = layout_->index_of(i, j, k);
  return coeffs_[idx] * factorial_weight(layout_->tuple(idx), 3);
}

std::vector<double> Jet::gradient() const {
  std::vector<double> g(nvars(), 0.0);
  for (int i = 0; i < nvars(); ++i) g[i] = grad(i);
  return g;
}

bool Jet::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](double c) { return c == 0.0; });
}

Jet& Jet::operator+=(const Jet& other) {
  check_compatible(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& other) {
  check_compatible(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

Jet& Jet::add_scaled(const Jet& other, double c) {
  check_compatible(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    coeffs_[i] += c * other.coeffs_[i];
  }
  return *this;
}

Jet& Jet::operator*=(const Jet& other) {
  *this = *this * other;
  return *this;
}

Jet& Jet::operator*=(double c) {
  for (double& v : coeffs_) v *= c;
  return *this;
}

Jet& Jet::operator+=(double c) {
  coeffs_[0] += c;
  return *this;
}

Jet& Jet::operator-=(double c) {
  coeffs_[0] -= c;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  check_compatible(a, b);
  Jet out(a.nvars(), a.order());
  const double* pa = a.coeffs_.data();
  const double* pb = b.coeffs_.data();
  double* po = out.coeffs_.data();
  for (const auto& p : a.layout_->products()) {
    po[p.out] += pa[p.lhs] * pb[p.rhs];
  }
  return out;
}

Jet operator/(const Jet& a, const Jet& b) { return a * (1.0 / b); }

Jet operator/(double c, const Jet& a) {
  const double v = a.value();
  if (v == 0.0) throw ArgumentError("jet reciprocal of zero");
  const double r = 1.0 / v;
  const double t[] = {c * r, -c * r * r, c * r * r * r, -c * r * r * r * r};
  return compose_univariate(a, t);
}

Jet jet_var(int index, double value, int nvars, int order) {
  return Jet::variable(index, value, nvars, order);
}

Jet jet_add(const Jet& a, const Jet& b) { return a + b; }
Jet jet_mul(const Jet& a, const Jet& b) { return a * b; }
Jet jet_scale(const Jet& a, double c) { return a * c; }

Jet compose_univariate(const Jet& a, std::span<const double> taylor) {
  const int q = a.order();
  Jet delta = a;
  delta.coeff(0) = 0.0;
  Jet out = Jet::constant(q < static_cast<int>(taylor.size()) ? taylor[q] : 0.0,
                          a.nvars(), q);
  for (int k = q - 1; k >= 0; --k) {
    out = out * delta;
    out += taylor[k];
  }
  return out;
}

Jet exp(const Jet& a) {
  const double e = std::exp(a.value());
  const double t[] = {e, e, e / 2.0, e / 6.0};
  return compose_univariate(a, t);
}

Jet log(const Jet& a) {
  const double v = a.value();
  if (!(v > 0.0)) throw ArgumentError("jet log of non-positive value");
  const double t[] = {std::log(v), 1.0 / v, -1.0 / (2.0 * v * v),
                      1.0 / (3.0 * v * v * v)};
  return compose_univariate(a, t);
}

Jet sin(const Jet& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  const double t[] = {s, c, -s / 2.0, -c / 6.0};
  return compose_univariate(a, t);
}

Jet cos(const Jet& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  const double t[] = {c, -s, -c / 2.0, s / 6.0};
  return compose_univariate(a, t);
}

Jet sqrt(const Jet& a) {
  const double v = a.value();
  if (!(v > 0.0)) throw ArgumentError("jet sqrt of non-positive value");
  const double r = std::sqrt(v);
  const double t[] = {r, 0.5 / r, -0.125 / (r * r * r),
                      0.0625 / (r * r * r * r * r)};
  return compose_univariate(a, t);
}

Jet pow(const Jet& a, int n) {
  if (n < 0) return 1.0 / pow(a, -n);
  Jet out = Jet::constant(1.0, a.nvars(), a.order());
  Jet base = a;
  while (n > 0) {
    if (n & 1) out = out * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return out;
}

Jet derivative(const Jet& a, int var) {
  if (var < 0 || var >= a.nvars()) {
    throw ArgumentError("derivative variable out of range");
  }
  const int q = a.order();
  Jet out(a.nvars(), q > 0 ? q - 1 : 0);
  if (q == 0) return out;
  const JetLayout& la = a.layout();
  const JetLayout& lo = out.layout();
  for (int idx = 1; idx < static_cast<int>(la.size()); ++idx) {
    const double c = a.coeff(idx);
    if (c == 0.0) continue;
    const auto& t = la.tuple(idx);
    const int deg = la.degree(idx);
    int mult = 0;
    int rest[3];
    int r = 0;
    bool removed = false;
    for (int s = 0; s < deg; ++s) {
      if (t[s] == var) {
        ++mult;
        if (!removed) {
          removed = true;
          continue;
        }
      }
      rest[r++] = t[s];
    }
    if (mult == 0) continue;
    out.coeff(lo.index_of(std::span<const int>(rest, r))) += mult * c;
  }
  return out;
}

Jet substitute(const Jet& taylor, std::span<const Jet> args) {
  const int n = taylor.nvars();
  if (static_cast<int>(args.size()) != n) {
    throw ArgumentError("substitute: expected " + std::to_string(n) +
                        " argument jets, got " + std::to_string(args.size()));
  }
  if (n == 0) return taylor;
  const int r = args[0].order();
  const int m = args[0].nvars();
  if (r > taylor.order()) {
    throw ArgumentError("substitute: argument order exceeds expansion order");
  }
  Jet out = Jet::constant(taylor.value(), m, r);
  if (r == 0) return out;

  std::vector<Jet> delta;
  delta.reserve(n);
  for (const Jet& a : args) {
    if (a.nvars() != m || a.order() != r) {
      throw ArgumentError("substitute: argument jets must share nvars/order");
    }
    Jet d = a;
    d.coeff(0) = 0.0;
    delta.push_back(std::move(d));
  }
  const JetLayout& lt = taylor.layout();
  for (int i = 0; i < n; ++i) {
    Jet inner = Jet::constant(taylor.coeff(1 + i), m, r);
    if (r >= 2) {
      for (int j = i; j < n; ++j) {
        Jet inner2 = Jet::constant(taylor.coeff(lt.index_of(i, j)), m, r);
        if (r >= 3) {
          for (int k = j; k < n; ++k) {
            const double c = taylor.coeff(lt.index_of(i, j, k));
            if (c != 0.0) inner2.add_scaled(delta[k], c);
          }
        }
        if (!inner2.is_zero()) inner += delta[j] * inner2;
      }
    }
    if (!inner.is_zero()) out += delta[i] * inner;
  }
  return out;
}

Jet restrict_vars(const Jet& a, std::span<const int> new_index, int new_nvars) {
  if (static_cast<int>(new_index.size()) != a.nvars()) {
    throw ArgumentError("restrict_vars: index map has wrong size");
  }
  Jet out(new_nvars, a.order());
  const JetLayout& la = a.layout();
  const JetLayout& lo = out.layout();
  for (int idx = 0; idx < static_cast<int>(la.size()); ++idx) {
    const auto& t = la.tuple(idx);
    const int deg = la.degree(idx);
    int mapped[3];
    bool keep = true;
    for (int s = 0; s < deg; ++s) {
      mapped[s] = new_index[t[s]];
      if (mapped[s] < 0) {
        keep = false;
        break;
      }
    }
    if (!keep) continue;
    out.coeff(lo.index_of(std::span<const int>(mapped, deg))) += a.coeff(idx);
  }
  return out;
}

std::vector<Jet> seed_jets(std::span<const double> point, int order) {
  const int n = static_cast<int>(point.size());
  std::vector<Jet> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(jet_var(i, point[i], n, order));
  return out;
}

std::vector<Jet> constant_jets(std::span<const double> values, int nvars,
                               int order) {
  std::vector<Jet> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(Jet::constant(v, nvars, order));
  return out;
}

std::vector<double> values_of(std::span<const Jet> jets) {
  std::vector<double> out;
  out.reserve(jets.size());
  for (const Jet& j : jets) out.push_back(j.value());
  return out;
}

bool is_seed(std::span<const Jet> args) {
  const int n = static_cast<int>(args.size());
  for (int i = 0; i < n; ++i) {
    const Jet& a = args[i];
    if (a.nvars() != n) return false;
    const auto c = a.coeffs();
    for (std::size_t k = 1; k < c.size(); ++k) {
      const double expected = (static_cast<int>(k) == 1 + i) ? 1.0 : 0.0;
      if (c[k] != expected) return false;
    }
  }
  return true;
}

}  // namespace symgf
