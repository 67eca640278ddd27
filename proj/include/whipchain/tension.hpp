#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "whipchain/chain.hpp"
#include "whipchain/common.hpp"

namespace whipchain {

/// The symmetric tridiagonal constraint operator M of the link-tension
/// system. diag is structurally (1, 2, 2, ..., 2); off[k] = -a_{k+1} where
/// a_i = cos(theta_{i+1} - theta_i) couples links i and i+1 (1-based i;
/// storage is 0-based, so a_i lives at off[i-1]).
struct TridiagonalOperator {
  int n = 0;
  std::vector<double> diag;  // size n
  std::vector<double> off;   // size n-1, off[k] = -a_{k+1}

  double a(int k) const { return -off[k]; }  // 0-based: a(k) couples links k+1, k+2
};

inline void validate(const TridiagonalOperator& op) {
  require(op.n >= 1, "operator needs n >= 1");
  require(static_cast<int>(op.diag.size()) == op.n, "diag size must equal n");
  require(static_cast<int>(op.off.size()) == op.n - 1, "off size must equal n-1");
  require_all_finite(op.diag, "diag");
  require_all_finite(op.off, "off");
}

/// Discrete link tensions; the boundary convention lambda_{n+1} = 0 is
/// implicit (free end carries no tension).
struct TensionVector {
  std::vector<double> lambda;
};

struct TensionSystem {
  TridiagonalOperator op;
  std::vector<double> rhs;
};

/// rhs_i = omega_i^2 - n g sin(theta_1) [i=1]; the gravity term enters only
/// the first row because only the pinned end feels the support reaction.
inline TensionSystem assemble(const ChainState& s) {
  validate(s);
  TensionSystem sys;
  sys.op.n = s.n;
  sys.op.diag.assign(s.n, 2.0);
  sys.op.diag[0] = 1.0;
  sys.op.off.resize(s.n - 1);
  for (int k = 0; k + 1 < s.n; ++k)
    sys.op.off[k] = -std::cos(s.theta[k + 1] - s.theta[k]);
  sys.rhs.resize(s.n);
  for (int k = 0; k < s.n; ++k) sys.rhs[k] = s.omega[k] * s.omega[k];
  sys.rhs[0] -= s.n * s.g * std::sin(s.theta[0]);
  return sys;
}

/// Forward-elimination pivots: b_1 = d_1, b_{i+1} = d_{i+1} - a_i^2 / b_i.
/// For any valid operator (|a_i| <= 1) these stay in [1, 2]; the guard only
/// trips on corrupted input.
inline std::vector<double> elimination_pivots(const TridiagonalOperator& op) {
  validate(op);
  std::vector<double> b(op.n);
  b[0] = op.diag[0];
  for (int k = 1; k < op.n; ++k) {
    if (std::fabs(b[k - 1]) < 1e-14)
      throw numerical_error("singular pivot in tridiagonal elimination");
    const double a = op.a(k - 1);
    b[k] = op.diag[k] - a * a / b[k - 1];
  }
  if (std::fabs(b[op.n - 1]) < 1e-14)
    throw numerical_error("singular pivot in tridiagonal elimination");
  return b;
}

/// Thomas-style O(n) solve of M lambda = rhs (the production path; the
/// closed-form inverse below is for curvature and Green-limit work).
inline TensionVector solve_tension(const TridiagonalOperator& op,
                                   std::span<const double> rhs) {
  require(static_cast<int>(rhs.size()) == op.n, "rhs size must equal n");
  const std::vector<double> b = elimination_pivots(op);
  std::vector<double> y(op.n);
  y[0] = rhs[0];
  for (int k = 1; k < op.n; ++k)
    y[k] = rhs[k] + (op.a(k - 1) / b[k - 1]) * y[k - 1];
  TensionVector t;
  t.lambda.resize(op.n);
  t.lambda[op.n - 1] = y[op.n - 1] / b[op.n - 1];
  for (int k = op.n - 2; k >= 0; --k)
    t.lambda[k] = (y[k] + op.a(k) * t.lambda[k + 1]) / b[k];
  return t;
}

/// Closed-form inverse entries (1-based in the formula):
///   M^{ij} = sum_{m=max(i,j)}^{n} (1/b_m) prod_{k=i}^{m-1}(a_k/b_k)
///                                  prod_{l=j}^{m-1}(a_l/b_l).
/// Materialized in O(n^2) via the tail sums T_i = 1/b_i + (a_i/b_i)^2 T_{i+1},
/// so that M^{ij} = T_max * prod_{l=min}^{max-1}(a_l/b_l).
/// 0-based call: entry (i, j) of the returned matrix is M^{i+1, j+1}.
inline Matrix closed_form_inverse(const TridiagonalOperator& op) {
  const std::vector<double> b = elimination_pivots(op);
  const int n = op.n;
  std::vector<double> r(n - 1);  // r[k] = a_{k+1}/b_{k+1}, 0-based
  for (int k = 0; k + 1 < n; ++k) r[k] = op.a(k) / b[k];
  std::vector<double> T(n);
  T[n - 1] = 1.0 / b[n - 1];
  for (int k = n - 2; k >= 0; --k) T[k] = 1.0 / b[k] + r[k] * r[k] * T[k + 1];
  Matrix inv(n, n);
  for (int i = 0; i < n; ++i) {
    inv(i, i) = T[i];
    double prod = T[i];
    for (int j = i - 1; j >= 0; --j) {
      prod *= r[j];
      inv(i, j) = prod;
      inv(j, i) = prod;
    }
  }
  return inv;
}

/// Single entry of the closed-form inverse in O(n); used where the full
/// table would be waste (Green-limit sweeps). 0-based (i, j).
inline double inverse_entry(const TridiagonalOperator& op, int i, int j) {
  require(i >= 0 && i < op.n && j >= 0 && j < op.n, "inverse_entry index out of range");
  const std::vector<double> b = elimination_pivots(op);
  const int hi = std::max(i, j);
  const int lo = std::min(i, j);
  double tail = 0.0;  // T[hi] by the same recurrence as closed_form_inverse
  for (int k = op.n - 1; k >= hi; --k) {
    const double rk = (k + 1 < op.n) ? op.a(k) / b[k] : 0.0;
    tail = 1.0 / b[k] + rk * rk * tail;
  }
  double prod = 1.0;
  for (int l = lo; l < hi; ++l) prod *= op.a(l) / b[l];
  return prod * tail;
}

/// Sign analysis: sweep unit-velocity probes omega = e_j (g as given) and
/// record every tension that comes out below -1e-12; with gravity on, also
/// report the rest-state (omega = 0) tensions.
struct TensionSignReport {
  struct NegativeEntry {
    int i;  // 1-based tension index with lambda_i < -1e-12
    int j;  // 1-based probe index (omega = e_j)
    double lambda;
  };
  std::vector<NegativeEntry> negatives;
  std::vector<double> rest_lambda;  // empty when g == 0
};

inline TensionSignReport tension_sign_probe(const ChainState& state) {
  validate(state);
  ChainState probe = state;
  TensionSignReport report;
  for (int j = 0; j < state.n; ++j) {
    probe.omega.assign(state.n, 0.0);
    probe.omega[j] = 1.0;
    const TensionSystem sys = assemble(probe);
    const TensionVector t = solve_tension(sys.op, sys.rhs);
    for (int i = 0; i < state.n; ++i)
      if (t.lambda[i] < -1e-12)
        report.negatives.push_back({i + 1, j + 1, t.lambda[i]});
  }
  if (state.g > 0.0) {
    probe.omega.assign(state.n, 0.0);
    const TensionSystem sys = assemble(probe);
    report.rest_lambda = solve_tension(sys.op, sys.rhs).lambda;
  }
  return report;
}

}  // namespace whipchain
