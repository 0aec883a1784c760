#pragma once

#include <initializer_list>
#include <span>
#include <vector>

namespace symgf {

using Vec = std::vector<double>;

// Small dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(int n);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(int r, int c) { return data_[r * cols_ + c]; }
  double operator()(int r, int c) const { return data_[r * cols_ + c]; }
  std::span<const double> data() const { return data_; }

  Matrix transpose() const;
  double norm1() const;
  double norm_inf() const;
  double norm_frobenius() const;
  double max_abs() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double c);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, double c) { return a *= c; }
  friend Matrix operator*(double c, Matrix a) { return a *= c; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vec operator*(const Matrix& a, std::span<const double> x);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// LU factorization with partial pivoting of a square matrix.
class LuDecomposition {
 public:
  explicit LuDecomposition(const Matrix& a);

  bool singular() const { return singular_; }
  Vec solve(std::span<const double> b) const;
  Matrix solve(const Matrix& b) const;
  Matrix inverse() const;
  // 1-norm condition number; +inf when singular.
  double condition1() const;

 private:
  Matrix lu_;
  std::vector<int> perm_;
  double norm1_ = 0.0;
  bool singular_ = false;
};

Vec solve(const Matrix& a, std::span<const double> b);
Matrix inverse(const Matrix& a);

// Scaling and squaring with a degree-6 Taylor polynomial.
Matrix mat_exp(const Matrix& a);
// Inverse scaling and squaring: repeated square roots until the argument is
// close to I, then the Mercator series. Throws NumericDomainError when the
// square roots do not bring B near the identity.
Matrix mat_log(const Matrix& b);
// Principal square root by the Denman-Beavers iteration.
Matrix mat_sqrt(const Matrix& b);

}  // namespace symgf
