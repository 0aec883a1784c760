#include "symgf/poisson_field.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "symgf/errors.hpp"

namespace symgf {

int upper_index(int d, int i, int j) {
  // Rows 0..i-1 hold (d-1) + (d-2) + ... entries.
  return i * (2 * d - i - 1) / 2 + (j - i - 1);
}

PoissonField::PoissonField(int d, UpperFn upper, std::string label)
    : d_(d), upper_(std::move(upper)), label_(std::move(label)) {
  if (d < 1) throw ArgumentError("PoissonField: d must be >= 1");
  if (!upper_) throw ArgumentError("PoissonField: empty field");
}

PoissonField PoissonField::constant(const Matrix& alpha) {
  if (!alpha.square()) throw ArgumentError("PoissonField: bivector must be square");
  const int d = alpha.rows();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (alpha(i, j) != -alpha(j, i)) {
        throw ArgumentError("PoissonField: bivector is not antisymmetric");
      }
    }
  }
  return PoissonField(
      d,
      [alpha, d](std::span<const Jet> x) {
        std::vector<Jet> out;
        for (int i = 0; i < d; ++i) {
          for (int j = i + 1; j < d; ++j) {
            out.push_back(Jet::constant(alpha(i, j), x[0].nvars(), x[0].order()));
          }
        }
        return out;
      },
      "constant");
}

std::vector<Jet> PoissonField::upper(std::span<const Jet> x) const {
  if (static_cast<int>(x.size()) != d_) throw ArgumentError("PoissonField: point dimension");
  auto out = upper_(x);
  if (static_cast<int>(out.size()) != d_ * (d_ - 1) / 2) {
    throw ArgumentError("PoissonField: wrong number of upper-triangle entries");
  }
  return out;
}

std::vector<Jet> PoissonField::jets(std::span<const Jet> x) const {
  const auto up = upper(x);
  const int nv = x[0].nvars();
  const int q = x[0].order();
  std::vector<Jet> full(static_cast<std::size_t>(d_) * d_, Jet(nv, q));
  for (int i = 0; i < d_; ++i) {
    for (int j = i + 1; j < d_; ++j) {
      const Jet& e = up[upper_index(d_, i, j)];
      full[i * d_ + j] = e;
      full[j * d_ + i] = -e;
    }
  }
  return full;
}

Matrix PoissonField::operator()(std::span<const double> x) const {
  const auto j = jets(constant_jets(x, 0, 0));
  Matrix m(d_, d_);
  for (int i = 0; i < d_; ++i)
    for (int k = 0; k < d_; ++k) m(i, k) = j[i * d_ + k].value();
  return m;
}

double jacobi_residual(const PoissonField& alpha, std::span<const double> x) {
  const int d = alpha.d();
  const auto a = alpha.jets(seed_jets(x, 1));
  auto val = [&](int i, int j) { return a[i * d + j].value(); };
  auto der = [&](int i, int j, int k) { return a[i * d + j].grad(k); };
  double worst = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int l = 0; l < d; ++l) {
        double s = 0.0;
        for (int k = 0; k < d; ++k) {
          s += val(i, k) * der(j, l, k) + val(l, k) * der(i, j, k) + val(j, k) * der(l, i, k);
        }
        worst = std::max(worst, std::abs(s));
      }
    }
  }
  return worst;
}

}  // namespace symgf
