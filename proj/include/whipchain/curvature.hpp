#pragma once

#include <cmath>
#include <vector>

#include "whipchain/chain.hpp"
#include "whipchain/common.hpp"
#include "whipchain/tension.hpp"

namespace whipchain {

/// Tangent direction at a chain configuration, stored by the normal
/// components eta_k of the joint displacements: u_k - u_{k-1} =
/// (1/n) eta_k (-sin theta_k, cos theta_k). Rigid links kill the tangential
/// component, so eta determines the whole lift.
struct TangentVector {
  std::vector<double> eta;
};

inline void validate(const ChainState& s, const TangentVector& tv) {
  validate(s);
  require(static_cast<int>(tv.eta.size()) == s.n, "tangent vector size must equal n");
  require_all_finite(tv.eta, "eta");
}

/// Joint displacements u_1..u_n accumulated from the pinned end (u_0 = 0).
inline std::vector<Vec2> ambient_lift(const ChainState& s, const TangentVector& tv) {
  validate(s, tv);
  std::vector<Vec2> u(s.n);
  const double invn = 1.0 / s.n;
  Vec2 acc{0.0, 0.0};
  for (int k = 0; k < s.n; ++k) {
    acc += Vec2{-invn * tv.eta[k] * std::sin(s.theta[k]),
                invn * tv.eta[k] * std::cos(s.theta[k])};
    u[k] = acc;
  }
  return u;
}

/// Kinetic-energy metric: sum_k <u_k, v_k> over the ambient lifts.
inline double metric_inner(const ChainState& s, const TangentVector& u,
                           const TangentVector& v) {
  const std::vector<Vec2> lu = ambient_lift(s, u);
  const std::vector<Vec2> lv = ambient_lift(s, v);
  double acc = 0.0;
  for (int k = 0; k < s.n; ++k) acc += dot(lu[k], lv[k]);
  return acc;
}

/// Polarized second-fundamental-form coefficients:
/// lambda(u,v)_i = sum_j M^{ij} eta_j xi_j (1-based formula, 0-based storage).
inline std::vector<double> second_fundamental_form(const ChainState& s,
                                                   const TangentVector& u,
                                                   const TangentVector& v) {
  validate(s, u);
  validate(s, v);
  const Matrix inv = closed_form_inverse(assemble(s).op);
  std::vector<double> lam(s.n, 0.0);
  for (int i = 0; i < s.n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < s.n; ++j) acc += inv(i, j) * u.eta[j] * v.eta[j];
    lam[i] = acc;
  }
  return lam;
}

/// Ambient form of the same object:
/// B(u,v)_k = lambda_{k+1}(x_{k+1}-x_k) + lambda_k (x_{k-1}-x_k),
/// with lambda_{n+1} = 0 at the free end.
inline std::vector<Vec2> sff_ambient(const ChainState& s, const TangentVector& u,
                                     const TangentVector& v) {
  const std::vector<double> lam = second_fundamental_form(s, u, v);
  const CartesianFrame f = reconstruct(s);
  std::vector<Vec2> B(s.n);
  for (int k = 1; k <= s.n; ++k) {
    Vec2 b = lam[k - 1] * (f.positions[k - 1] - f.positions[k]);
    if (k < s.n) b += lam[k] * (f.positions[k + 1] - f.positions[k]);
    B[k - 1] = b;
  }
  return B;
}

/// <R(u,v)v,u> = (1/2n^2) sum_{i,j} M^{ij} (eta_i xi_j - eta_j xi_i)^2.
inline double curvature_numerator(const ChainState& s, const TangentVector& u,
                                  const TangentVector& v) {
  validate(s, u);
  validate(s, v);
  const Matrix inv = closed_form_inverse(assemble(s).op);
  double acc = 0.0;
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.n; ++j) {
      const double w = u.eta[i] * v.eta[j] - u.eta[j] * v.eta[i];
      acc += inv(i, j) * w * w;
    }
  return acc / (2.0 * s.n * s.n);
}

/// Independent route to the same number: flat ambient space gives
/// <R(u,v)v,u> = <B(u,u),B(v,v)> - <B(u,v),B(u,v)> with plain Euclidean
/// inner products of the ambient B-vectors. No use of the double-sum form.
inline double gauss_codazzi_oracle(const ChainState& s, const TangentVector& u,
                                   const TangentVector& v) {
  const std::vector<Vec2> Buu = sff_ambient(s, u, u);
  const std::vector<Vec2> Bvv = sff_ambient(s, v, v);
  const std::vector<Vec2> Buv = sff_ambient(s, u, v);
  double acc = 0.0;
  for (int k = 0; k < s.n; ++k) acc += dot(Buu[k], Bvv[k]) - dot(Buv[k], Buv[k]);
  return acc;
}

/// K(u,v) = numerator / (|u|^2 |v|^2 - <u,v>^2) in the kinetic-energy metric.
inline double sectional_curvature(const ChainState& s, const TangentVector& u,
                                  const TangentVector& v) {
  const double uu = metric_inner(s, u, u);
  const double vv = metric_inner(s, v, v);
  const double uv = metric_inner(s, u, v);
  const double denom = uu * vv - uv * uv;
  if (denom <= 1e-14)
    throw numerical_error("degenerate plane: lifted section has (near-)zero area");
  return curvature_numerator(s, u, v) / denom;
}

}  // namespace whipchain
