#include "symgf/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "symgf/errors.hpp"

namespace symgf {

Matrix::Matrix(int rows, int cols, double fill)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {
  if (rows < 0 || cols < 0) throw ArgumentError("negative matrix dimension");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) {
      throw ArgumentError("ragged matrix initializer");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r > 0 ? static_cast<int>(rows[0].size()) : 0;
  Matrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) {
      throw ArgumentError("ragged matrix rows");
    }
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

double Matrix::norm1() const {
  double best = 0.0;
  for (int j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (int i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

double Matrix::norm_inf() const { return transpose().norm1(); }

double Matrix::norm_frobenius() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ArgumentError("matrix add shape");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ArgumentError("matrix sub shape");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double c) {
  for (double& v : data_) v *= c;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw ArgumentError("matrix product shape");
  Matrix c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int k = 0; k < a.cols_; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Vec operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols_ != static_cast<int>(x.size())) {
    throw ArgumentError("matrix-vector shape");
  }
  Vec y(a.rows_, 0.0);
  for (int i = 0; i < a.rows_; ++i) {
    double s = 0.0;
    for (int j = 0; j < a.cols_; ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

LuDecomposition::LuDecomposition(const Matrix& a) : lu_(a) {
  if (!a.square()) throw ArgumentError("LU of a non-square matrix");
  const int n = a.rows();
  norm1_ = a.norm1();
  perm_.resize(n);
  for (int i = 0; i < n; ++i) perm_[i] = i;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(lu_(i, k)) > std::abs(lu_(piv, k))) piv = i;
    }
    if (lu_(piv, k) == 0.0) {
      singular_ = true;
      continue;
    }
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
      std::swap(perm_[k], perm_[piv]);
    }
    for (int i = k + 1; i < n; ++i) {
      const double f = lu_(i, k) / lu_(k, k);
      lu_(i, k) = f;
      if (f == 0.0) continue;
      for (int j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
    }
  }
}

Vec LuDecomposition::solve(std::span<const double> b) const {
  if (singular_) throw ArgumentError("solve with a singular matrix");
  const int n = lu_.rows();
  if (static_cast<int>(b.size()) != n) throw ArgumentError("solve rhs size");
  Vec x(n);
  for (int i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
  }
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
    x[i] /= lu_(i, i);
  }
  return x;
}

Matrix LuDecomposition::solve(const Matrix& b) const {
  const int n = lu_.rows();
  if (b.rows() != n) throw ArgumentError("solve rhs rows");
  Matrix x(n, b.cols());
  Vec col(n);
  for (int j = 0; j < b.cols(); ++j) {
    for (int i = 0; i < n; ++i) col[i] = b(i, j);
    const Vec s = solve(col);
    for (int i = 0; i < n; ++i) x(i, j) = s[i];
  }
  return x;
}

Matrix LuDecomposition::inverse() const {
  return solve(Matrix::identity(lu_.rows()));
}

double LuDecomposition::condition1() const {
  if (singular_) return std::numeric_limits<double>::infinity();
  return norm1_ * inverse().norm1();
}

Vec solve(const Matrix& a, std::span<const double> b) {
  return LuDecomposition(a).solve(b);
}

Matrix inverse(const Matrix& a) { return LuDecomposition(a).inverse(); }

Matrix mat_exp(const Matrix& a) {
  if (!a.square()) throw ArgumentError("mat_exp of a non-square matrix");
  const int n = a.rows();
  // Scale so that the degree-6 Taylor remainder (|A|^7 / 7!) is below
  // double precision.
  const double norm = a.norm1();
  int squarings = 0;
  if (norm > 1.0 / 64.0) {
    squarings = static_cast<int>(std::ceil(std::log2(norm * 64.0)));
  }
  const Matrix scaled = a * std::ldexp(1.0, -squarings);
  // Work with E = exp(A) - I so the squaring phase, E <- 2E + E^2, does not
  // lose the small part of exp(A) to cancellation against I.
  Matrix e = scaled * (1.0 / 6.0);
  for (int k = 5; k >= 1; --k) {
    e = (scaled + scaled * e) * (1.0 / k);
  }
  for (int s = 0; s < squarings; ++s) e = e * 2.0 + e * e;
  return Matrix::identity(n) + e;
}

Matrix mat_sqrt(const Matrix& b) {
  if (!b.square()) throw ArgumentError("mat_sqrt of a non-square matrix");
  const int n = b.rows();
  Matrix y = b;
  Matrix z = Matrix::identity(n);
  for (int it = 0; it < 100; ++it) {
    LuDecomposition ly(y);
    LuDecomposition lz(z);
    if (ly.singular() || lz.singular()) {
      throw NumericDomainError("mat_sqrt: singular iterate");
    }
    Matrix yn = (y + lz.inverse()) * 0.5;
    Matrix zn = (z + ly.inverse()) * 0.5;
    const double change = (yn - y).norm1();
    y = std::move(yn);
    z = std::move(zn);
    if (change <= 1e-15 * std::max(1.0, y.norm1())) return y;
  }
  throw NumericDomainError("mat_sqrt: Denman-Beavers iteration did not converge");
}

Matrix mat_log(const Matrix& b) {
  if (!b.square()) throw ArgumentError("mat_log of a non-square matrix");
  const int n = b.rows();
  const Matrix id = Matrix::identity(n);
  Matrix x = b;
  int roots = 0;
  while ((x - id).norm1() > 0.25) {
    if (roots >= 40) {
      throw NumericDomainError("mat_log: argument outside the convergence region");
    }
    x = mat_sqrt(x);
    ++roots;
  }
  const Matrix e = x - id;
  if (e.norm1() >= 1.0) {
    throw NumericDomainError("mat_log: argument outside the convergence region");
  }
  // log(I + E) = sum_k (-1)^{k+1} E^k / k
  Matrix sum(n, n);
  Matrix power = e;
  for (int k = 1; k <= 200; ++k) {
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    sum += power * (sign / k);
    if (power.norm1() / k < 1e-18) break;
    power = power * e;
  }
  return sum * std::ldexp(1.0, roots);
}

}  // namespace symgf
