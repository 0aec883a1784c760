#pragma once

#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "symgf/errors.hpp"
#include "symgf/genfun.hpp"
#include "symgf/jet.hpp"
#include "symgf/matrix.hpp"
#include "symgf/poly.hpp"

namespace symgf {

// Structure constants [e_i, e_j] = c^k_{ij} e_k of a real Lie algebra.
class LieStructure {
 public:
  LieStructure() = default;
  // `c` is indexed [i][j][k] (row-major, d^3 entries). Throws ArgumentError
  // unless c is antisymmetric in (i, j) and satisfies Jacobi to 1e-12.
  LieStructure(int d, std::vector<double> c, std::string name = "lie");

  static LieStructure so3();
  static LieStructure heisenberg();
  static LieStructure abelian(int d);

  int d() const { return d_; }
  const std::string& name() const { return name_; }
  double c(int i, int j, int k) const { return c_[(i * d_ + j) * d_ + k]; }
  std::span<const double> constants() const { return c_; }
  bool is_abelian() const;
  // sqrt(sum c^2); |[u,v]| <= norm() |u| |v|.
  double norm() const;

  // Largest |c^m_{ij} c^n_{ml} + c^m_{jl} c^n_{mi} + c^m_{li} c^n_{mj}|.
  double jacobi_defect() const;

  // Matrices E_i with [E_i, E_j] = c^k_{ij} E_k. Built-in algebras carry a
  // faithful representation; otherwise this is the adjoint one.
  const std::vector<Matrix>& representation() const { return rep_; }
  void set_representation(std::vector<Matrix> rep);

  template <class T>
  std::vector<T> bracket(std::span<const T> u, std::span<const T> v) const;

 private:
  int d_ = 0;
  std::vector<double> c_;
  std::vector<Matrix> rep_;
  std::string name_;
};

inline constexpr int kMaxBchOrder = 4;

// BCH series of log(exp(u) exp(v)) truncated at total degree `trunc`:
// u + v + 1/2 [u,v] + 1/12 ([u,[u,v]] + [v,[v,u]]) - 1/24 [v,[u,[u,v]]].
template <class T>
std::vector<T> bch_series(const LieStructure& lie, std::span<const T> u,
                          std::span<const T> v, int trunc);

// S(p1, p2, x) = <x, BCH_trunc(p1, p2)>; domain radius 0.5 ln 2 / |c|.
MonoidGenFun lie_monoid(const LieStructure& lie, int trunc);

// Ground truth for BCH: log(exp(U) exp(V)) in the representation, projected
// back onto span{E_i} by least squares.
Vec bch_matrix_oracle(const LieStructure& lie, std::span<const double> u,
                      std::span<const double> v);

// alpha^{ij}(x) = c^k_{ij} x_k
PolyPoisson kirillov_kostant(const LieStructure& lie);

// ---------------------------------------------------------------------------

namespace detail {
inline double zero_like(const double&) { return 0.0; }
inline Jet zero_like(const Jet& a) { return Jet(a.nvars(), a.order()); }

template <class T>
void axpy(T& acc, double c, const T& x) {
  if constexpr (std::is_same_v<T, Jet>) {
    acc.add_scaled(x, c);
  } else {
    acc += c * x;
  }
}
}  // namespace detail

template <class T>
std::vector<T> LieStructure::bracket(std::span<const T> u, std::span<const T> v) const {
  if (static_cast<int>(u.size()) != d_ || static_cast<int>(v.size()) != d_) {
    throw ArgumentError("bracket: dimension mismatch");
  }
  std::vector<T> out(d_, detail::zero_like(u[0]));
  for (int i = 0; i < d_; ++i) {
    for (int j = 0; j < d_; ++j) {
      if (i == j) continue;
      bool any = false;
      for (int k = 0; k < d_; ++k) any = any || c(i, j, k) != 0.0;
      if (!any) continue;
      const T uv = u[i] * v[j];
      for (int k = 0; k < d_; ++k) {
        if (c(i, j, k) != 0.0) detail::axpy(out[k], c(i, j, k), uv);
      }
    }
  }
  return out;
}

template <class T>
std::vector<T> bch_series(const LieStructure& lie, std::span<const T> u,
                          std::span<const T> v, int trunc) {
  if (trunc < 1 || trunc > kMaxBchOrder) {
    throw UnsupportedOrderError("BCH truncation must be in [1, 4]");
  }
  const int d = lie.d();
  std::vector<T> out;
  out.reserve(d);
  for (int i = 0; i < d; ++i) out.push_back(u[i] + v[i]);
  if (trunc < 2) return out;
  const std::vector<T> uv = lie.bracket(u, v);
  for (int i = 0; i < d; ++i) detail::axpy(out[i], 0.5, uv[i]);
  if (trunc < 3) return out;
  const std::vector<T> u_uv = lie.bracket(u, std::span<const T>(uv));
  std::vector<T> vu(uv);
  for (auto& e : vu) e = -e;
  const std::vector<T> v_vu = lie.bracket(v, std::span<const T>(vu));
  for (int i = 0; i < d; ++i) {
    detail::axpy(out[i], 1.0 / 12.0, u_uv[i]);
    detail::axpy(out[i], 1.0 / 12.0, v_vu[i]);
  }
  if (trunc < 4) return out;
  const std::vector<T> v_u_uv = lie.bracket(v, std::span<const T>(u_uv));
  for (int i = 0; i < d; ++i) detail::axpy(out[i], -1.0 / 24.0, v_u_uv[i]);
  return out;
}

}  // namespace symgf
