#include "symgf/lie.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "symgf/errors.hpp"

namespace symgf {

namespace {

std::vector<Matrix> adjoint_representation(const LieStructure& lie) {
  const int d = lie.d();
  std::vector<Matrix> rep;
  for (int i = 0; i < d; ++i) {
    // (ad e_i) e_j = c^k_{ij} e_k
    Matrix m(d, d);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) m(k, j) = lie.c(i, j, k);
    rep.push_back(std::move(m));
  }
  return rep;
}

double levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0.0;
  return ((i + 1) % 3 == j) ? 1.0 : -1.0;
}

}  // namespace

LieStructure::LieStructure(int d, std::vector<double> c, std::string name)
    : d_(d), c_(std::move(c)), name_(std::move(name)) {
  if (d < 1) throw ArgumentError("LieStructure: d must be >= 1");
  if (static_cast<int>(c_.size()) != d * d * d) {
    throw ArgumentError("LieStructure: expected d^3 structure constants");
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        if (this->c(i, j, k) != -this->c(j, i, k)) {
          throw ArgumentError("LieStructure: constants are not antisymmetric in (i, j)");
        }
      }
  const double defect = jacobi_defect();
  if (defect > 1e-12) {
    throw ArgumentError("LieStructure: Jacobi identity fails (defect " +
                        std::to_string(defect) + ")");
  }
  rep_ = adjoint_representation(*this);
}

LieStructure LieStructure::so3() {
  std::vector<double> c(27, 0.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[(i * 3 + j) * 3 + k] = levi_civita(i, j, k);
  LieStructure lie(3, std::move(c), "so3");
  // Defining representation: (L_i)_{jk} = -eps_{ijk}; [L_i, L_j] = eps_{ijk} L_k.
  std::vector<Matrix> rep;
  for (int i = 0; i < 3; ++i) {
    Matrix m(3, 3);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) m(j, k) = -levi_civita(i, j, k);
    rep.push_back(std::move(m));
  }
  lie.set_representation(std::move(rep));
  return lie;
}

LieStructure LieStructure::heisenberg() {
  std::vector<double> c(27, 0.0);
  c[(0 * 3 + 1) * 3 + 2] = 1.0;
  c[(1 * 3 + 0) * 3 + 2] = -1.0;
  LieStructure lie(3, std::move(c), "heisenberg");
  // Strictly upper triangular 3x3: E1 = e12, E2 = e23, E3 = e13. The adjoint
  // representation has a kernel (the center), so it cannot serve as oracle.
  Matrix e1(3, 3), e2(3, 3), e3(3, 3);
  e1(0, 1) = 1.0;
  e2(1, 2) = 1.0;
  e3(0, 2) = 1.0;
  lie.set_representation({e1, e2, e3});
  return lie;
}

LieStructure LieStructure::abelian(int d) {
  return LieStructure(d, std::vector<double>(static_cast<std::size_t>(d) * d * d, 0.0),
                      "abelian");
}

bool LieStructure::is_abelian() const {
  return std::all_of(c_.begin(), c_.end(), [](double v) { return v == 0.0; });
}

double LieStructure::norm() const {
  double s = 0.0;
  for (double v : c_) s += v * v;
  return std::sqrt(s);
}

double LieStructure::jacobi_defect() const {
  const int d = d_;
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int l = 0; l < d; ++l)
        for (int n = 0; n < d; ++n) {
          double s = 0.0;
          for (int m = 0; m < d; ++m) {
            s += c(i, j, m) * c(m, l, n) + c(j, l, m) * c(m, i, n) + c(l, i, m) * c(m, j, n);
          }
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

void LieStructure::set_representation(std::vector<Matrix> rep) {
  if (static_cast<int>(rep.size()) != d_) throw ArgumentError("representation: need d matrices");
  const int n = rep[0].rows();
  for (const Matrix& m : rep) {
    if (!m.square() || m.rows() != n) throw ArgumentError("representation: shape mismatch");
  }
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) {
      Matrix lhs = rep[i] * rep[j] - rep[j] * rep[i];
      for (int k = 0; k < d_; ++k) lhs -= rep[k] * c(i, j, k);
      if (lhs.max_abs() > 1e-12) {
        throw ArgumentError("representation does not satisfy the bracket relations");
      }
    }
  rep_ = std::move(rep);
}

MonoidGenFun lie_monoid(const LieStructure& lie, int trunc) {
  if (trunc > kMaxBchOrder) {
    throw UnsupportedOrderError("lie_monoid: BCH truncation above 4 is not supported");
  }
  if (trunc < 1) throw ArgumentError("lie_monoid: truncation must be >= 1");
  const int d = lie.d();
  const double radius =
      lie.is_abelian() ? kInfiniteRadius : 0.5 * std::numbers::ln2 / lie.norm();
  GenFun s(
      2 * d, d,
      [lie, d, trunc](std::span<const Jet> a) {
        const auto a_n = bch_series(lie, a.subspan(0, d), a.subspan(d, d), trunc);
        return pairing(a.subspan(2 * d, d), a_n);
      },
      radius, lie.name() + "-bch" + std::to_string(trunc));
  return MonoidGenFun(std::move(s));
}

Vec bch_matrix_oracle(const LieStructure& lie, std::span<const double> u,
                      std::span<const double> v) {
  const int d = lie.d();
  if (static_cast<int>(u.size()) != d || static_cast<int>(v.size()) != d) {
    throw ArgumentError("bch_matrix_oracle: dimension mismatch");
  }
  const auto& rep = lie.representation();
  const int n = rep[0].rows();
  Matrix x(n, n), y(n, n);
  for (int i = 0; i < d; ++i) {
    x += rep[i] * u[i];
    y += rep[i] * v[i];
  }
  const Matrix z = mat_log(mat_exp(x) * mat_exp(y));
  // Normal equations of min |sum_i a_i E_i - Z|_F.
  Matrix gram(d, d);
  Vec rhs(d, 0.0);
  auto frob = [](const Matrix& a, const Matrix& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) s += a.data()[k] * b.data()[k];
    return s;
  };
  for (int i = 0; i < d; ++i) {
    rhs[i] = frob(rep[i], z);
    for (int j = 0; j < d; ++j) gram(i, j) = frob(rep[i], rep[j]);
  }
  const LuDecomposition lu(gram);
  if (lu.singular()) {
    throw NumericDomainError("bch_matrix_oracle: representation is not faithful");
  }
  return lu.solve(rhs);
}

PolyPoisson kirillov_kostant(const LieStructure& lie) {
  return PolyPoisson::linear(lie.d(), lie.constants());
}

}  // namespace symgf
