#include "symgf/poly.hpp"

#include <algorithm>
#include <utility>

#include "symgf/errors.hpp"

namespace symgf {

Jet monomial(std::span<const Jet> v, std::span<const int> exponents) {
  if (v.size() != exponents.size()) throw ArgumentError("monomial: exponent length");
  const int nv = v.empty() ? 0 : v[0].nvars();
  const int q = v.empty() ? 0 : v[0].order();
  Jet acc = Jet::constant(1.0, nv, q);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const int e = exponents[i];
    if (e < 0) throw ArgumentError("monomial: negative exponent");
    if (e == 0) continue;
    acc *= e == 1 ? v[i] : pow(v[i], e);
  }
  return acc;
}

namespace {

void check_exponents(const std::vector<int>& e, int len, const char* what) {
  if (static_cast<int>(e.size()) != len) {
    throw InputError(std::string("poly term: '") + what + "' exponent vector must have length " +
                     std::to_string(len));
  }
  for (int v : e) {
    if (v < 0) throw InputError(std::string("poly term: negative exponent in '") + what + "'");
  }
}

int total(const std::vector<int>& e) {
  int s = 0;
  for (int v : e) s += v;
  return s;
}

}  // namespace

GenFun poly_genfun(int m, int n, std::vector<PolyTerm> terms, std::string label) {
  if (m < 0 || n < 1) throw ArgumentError("poly_genfun: bad dimensions");
  std::vector<PolyTerm> kept;
  for (auto& t : terms) {
    check_exponents(t.p, m, "p");
    check_exponents(t.x, n, "x");
    if (t.coeff == 0.0) continue;
    if (total(t.p) == 0) {
      throw InvalidGenFunError(
          "poly_genfun: term constant in p violates S(0,x) = 0 / grad_x S(0,x) = 0");
    }
    kept.push_back(std::move(t));
  }
  return GenFun(
      m, n,
      [kept, m, n](std::span<const Jet> a) {
        Jet acc = Jet::constant(0.0, a[0].nvars(), a[0].order());
        for (const PolyTerm& t : kept) {
          Jet term = monomial(a.subspan(0, m), t.p);
          term *= monomial(a.subspan(m, n), t.x);
          acc.add_scaled(term, t.coeff);
        }
        return acc;
      },
      kInfiniteRadius, std::move(label));
}

MonoidGenFun poly_monoid(int d, std::vector<PolyTerm> terms, std::string label) {
  if (d < 1) throw ArgumentError("poly_monoid: d must be >= 1");
  return MonoidGenFun(poly_genfun(2 * d, d, std::move(terms), std::move(label)));
}

PolyPoisson::PolyPoisson(int d, const std::vector<Entry>& entries) : d_(d) {
  if (d < 1) throw ArgumentError("PolyPoisson: d must be >= 1");
  upper_.resize(static_cast<std::size_t>(d) * (d - 1) / 2);
  for (const Entry& e : entries) {
    if (e.i < 0 || e.j < 0 || e.i >= d || e.j >= d) {
      throw InputError("PolyPoisson: index out of range");
    }
    if (e.i == e.j) throw InputError("PolyPoisson: diagonal entry in an antisymmetric field");
    check_exponents(e.term.x, d, "x");
    if (e.term.coeff == 0.0) continue;
    Monomial mono = e.term;
    int i = e.i, j = e.j;
    if (i > j) {
      std::swap(i, j);
      mono.coeff = -mono.coeff;
    }
    auto& list = upper_[upper_index(d, i, j)];
    auto it = std::find_if(list.begin(), list.end(),
                           [&](const Monomial& m) { return m.x == mono.x; });
    if (it == list.end()) {
      list.push_back(std::move(mono));
    } else {
      it->coeff += mono.coeff;
    }
  }
}

PolyPoisson PolyPoisson::constant(const Matrix& alpha) {
  if (!alpha.square()) throw ArgumentError("PolyPoisson: bivector must be square");
  const int d = alpha.rows();
  std::vector<Entry> entries;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (alpha(i, j) != -alpha(j, i)) {
        throw ArgumentError("PolyPoisson: bivector is not antisymmetric");
      }
      if (i < j && alpha(i, j) != 0.0) {
        entries.push_back({i, j, {alpha(i, j), std::vector<int>(d, 0)}});
      }
    }
  }
  return PolyPoisson(d, entries);
}

PolyPoisson PolyPoisson::linear(int d, std::span<const double> c) {
  if (static_cast<int>(c.size()) != d * d * d) throw ArgumentError("PolyPoisson::linear: size");
  std::vector<Entry> entries;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        const double v = c[(i * d + j) * d + k];
        if (v == 0.0) continue;
        std::vector<int> e(d, 0);
        e[k] = 1;
        entries.push_back({i, j, {v, e}});
      }
    }
  }
  return PolyPoisson(d, entries);
}

bool PolyPoisson::is_constant() const { return degree() <= 0; }

int PolyPoisson::degree() const {
  int deg = -1;
  for (const auto& list : upper_)
    for (const auto& m : list) deg = std::max(deg, total(m.x));
  return deg;
}

const std::vector<PolyPoisson::Monomial>& PolyPoisson::upper_entry(int i, int j) const {
  if (i < 0 || j >= d_ || i >= j) throw ArgumentError("PolyPoisson: need i < j");
  return upper_[upper_index(d_, i, j)];
}

PolyPoisson PolyPoisson::derivative(int var) const {
  if (var < 0 || var >= d_) throw ArgumentError("PolyPoisson::derivative: variable");
  PolyPoisson out;
  out.d_ = d_;
  out.upper_.resize(upper_.size());
  for (std::size_t e = 0; e < upper_.size(); ++e) {
    for (const Monomial& m : upper_[e]) {
      if (m.x[var] == 0) continue;
      Monomial dm = m;
      dm.coeff *= m.x[var];
      dm.x[var] -= 1;
      out.upper_[e].push_back(std::move(dm));
    }
  }
  return out;
}

std::vector<Jet> PolyPoisson::jets(std::span<const Jet> x) const {
  if (static_cast<int>(x.size()) != d_) throw ArgumentError("PolyPoisson: point dimension");
  const int nv = x[0].nvars();
  const int q = x[0].order();
  std::vector<Jet> full(static_cast<std::size_t>(d_) * d_, Jet(nv, q));
  for (int i = 0; i < d_; ++i) {
    for (int j = i + 1; j < d_; ++j) {
      Jet acc(nv, q);
      for (const Monomial& m : upper_[upper_index(d_, i, j)]) {
        acc.add_scaled(monomial(x, m.x), m.coeff);
      }
      full[j * d_ + i] = -acc;
      full[i * d_ + j] = std::move(acc);
    }
  }
  return full;
}

Matrix PolyPoisson::operator()(std::span<const double> x) const {
  const auto j = jets(constant_jets(x, 0, 0));
  Matrix m(d_, d_);
  for (int i = 0; i < d_; ++i)
    for (int k = 0; k < d_; ++k) m(i, k) = j[i * d_ + k].value();
  return m;
}

PoissonField PolyPoisson::field() const {
  PolyPoisson self = *this;
  const int d = d_;
  return PoissonField(
      d,
      [self, d](std::span<const Jet> x) {
        const auto full = self.jets(x);
        std::vector<Jet> up;
        for (int i = 0; i < d; ++i)
          for (int j = i + 1; j < d; ++j) up.push_back(full[i * d + j]);
        return up;
      },
      "poly");
}

std::vector<PolyPoisson::Entry> PolyPoisson::entries() const {
  std::vector<Entry> out;
  for (int i = 0; i < d_; ++i)
    for (int j = i + 1; j < d_; ++j)
      for (const Monomial& m : upper_[upper_index(d_, i, j)]) out.push_back({i, j, m});
  return out;
}

}  // namespace symgf
