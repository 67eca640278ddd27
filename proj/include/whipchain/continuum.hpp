#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <span>
#include <vector>

#include "whipchain/common.hpp"

namespace whipchain {

/// Unit-length continuum whip on the uniform grid s_j = j/m, pinned at s=0,
/// free at s=1. theta is the tangent angle against the positive x axis;
/// kappa = theta_s is recovered by differences, never stored.
struct ContinuumCurve {
  int m = 0;
  std::vector<double> theta;    // m+1 nodes
  std::vector<double> theta_t;  // m+1 nodes
  double g = 0.0;

  double h() const { return 1.0 / m; }
};

inline void validate(const ContinuumCurve& c) {
  require(c.m >= 2, "continuum grid needs m >= 2");
  require(static_cast<int>(c.theta.size()) == c.m + 1, "theta size must equal m+1");
  require(static_cast<int>(c.theta_t.size()) == c.m + 1, "theta_t size must equal m+1");
  require_all_finite(c.theta, "theta");
  require_all_finite(c.theta_t, "theta_t");
  require(std::isfinite(c.g) && c.g >= 0.0, "g must be finite and nonnegative");
}

/// Second-order first derivative on the grid: central interior, one-sided
/// three-point stencils at both ends.
inline std::vector<double> grid_derivative(std::span<const double> v, double h) {
  const int m = static_cast<int>(v.size()) - 1;
  require(m >= 2, "grid_derivative needs at least 3 nodes");
  std::vector<double> d(m + 1);
  d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
  for (int j = 1; j < m; ++j) d[j] = (v[j + 1] - v[j - 1]) / (2.0 * h);
  d[m] = (3.0 * v[m] - 4.0 * v[m - 1] + v[m - 2]) / (2.0 * h);
  return d;
}

/// kappa_j = theta_s(s_j) by the same stencils.
inline std::vector<double> curve_kappa(const ContinuumCurve& c) {
  validate(c);
  return grid_derivative(c.theta, c.h());
}

namespace detail {

/// Reusable Thomas factorization of one tridiagonal matrix, so a table of
/// right-hand sides (the Green columns) shares a single elimination pass.
struct TriFactor {
  std::vector<double> pivot;  // modified diagonal
  std::vector<double> lower;  // multipliers sub_j / pivot_{j-1}
  std::vector<double> upper;  // original superdiagonal

  TriFactor(std::span<const double> sub, std::span<const double> diag,
            std::span<const double> super)
      : pivot(diag.begin(), diag.end()),
        lower(diag.size(), 0.0),
        upper(super.begin(), super.end()) {
    const int N = static_cast<int>(diag.size());
    for (int j = 1; j < N; ++j) {
      if (std::fabs(pivot[j - 1]) < 1e-300)
        throw numerical_error("singular pivot in grid solve");
      lower[j] = sub[j - 1] / pivot[j - 1];
      pivot[j] -= lower[j] * upper[j - 1];
    }
    if (std::fabs(pivot[N - 1]) < 1e-300)
      throw numerical_error("singular pivot in grid solve");
  }

  std::vector<double> solve(std::span<const double> rhs) const {
    const int N = static_cast<int>(pivot.size());
    std::vector<double> x(rhs.begin(), rhs.end());
    for (int j = 1; j < N; ++j) x[j] -= lower[j] * x[j - 1];
    x[N - 1] /= pivot[N - 1];
    for (int j = N - 2; j >= 0; --j) x[j] = (x[j] - upper[j] * x[j + 1]) / pivot[j];
    return x;
  }
};

/// Discretization of -u'' + kappa^2 u on nodes 0..m-1 (node m is Dirichlet
/// and eliminated). Row 0 is the ghost-point Neumann row: the even
/// reflection u_{-1} = u_1 - 2h u_s(0) folded into the node-0 equation, so
/// the row stays tridiagonal and keeps second order; sources at node 0 are
/// lumped over the half cell (hence the 2/h weight used by callers).
inline TriFactor neumann_dirichlet_factor(std::span<const double> kappa, int m) {
  const double h = 1.0 / m;
  const double ih2 = 1.0 / (h * h);
  std::vector<double> sub(m - 1), diag(m), super(m - 1);
  diag[0] = 2.0 * ih2 + kappa[0] * kappa[0];
  if (m > 1) super[0] = -2.0 * ih2;
  for (int j = 1; j < m; ++j) {
    diag[j] = 2.0 * ih2 + kappa[j] * kappa[j];
    sub[j - 1] = -ih2;
    if (j < m - 1) super[j] = -ih2;
  }
  return TriFactor(sub, diag, super);
}

}  // namespace detail

/// Grid Green function of -G'' + kappa^2 G = delta(s - s_k) with G_s(0) = 0,
/// G(1) = 0. The delta is lumped as 1/h at node k (2/h at node 0, whose
/// ghost row represents a half cell). G[j][k] ~ G(s_j, s_k).
struct GreenTable {
  int m = 0;
  Matrix G;  // (m+1) x (m+1)

  double h() const { return 1.0 / m; }
};

/// One column of the table; k = m returns the zero column (source at the
/// Dirichlet node).
inline std::vector<double> green_column(std::span<const double> kappa, int k) {
  const int m = static_cast<int>(kappa.size()) - 1;
  require(m >= 2, "green grid needs m >= 2");
  require(k >= 0 && k <= m, "source node out of range");
  std::vector<double> g(m + 1, 0.0);
  if (k == m) return g;
  const detail::TriFactor F = detail::neumann_dirichlet_factor(kappa, m);
  std::vector<double> rhs(m, 0.0);
  rhs[k] = (k == 0 ? 2.0 : 1.0) * m;  // 1/h lumped delta, half cell at node 0
  const std::vector<double> col = F.solve(rhs);
  for (int j = 0; j < m; ++j) g[j] = col[j];
  return g;
}

inline GreenTable green_table(std::span<const double> kappa) {
  const int m = static_cast<int>(kappa.size()) - 1;
  require(m >= 2, "green grid needs m >= 2");
  require_all_finite(std::vector<double>(kappa.begin(), kappa.end()), "kappa");
  const detail::TriFactor F = detail::neumann_dirichlet_factor(kappa, m);
  GreenTable table;
  table.m = m;
  table.G = Matrix(m + 1, m + 1, 0.0);
  Matrix& G = table.G;
  parallel_for(0, m, [&](int k) {
    std::vector<double> rhs(m, 0.0);
    rhs[k] = (k == 0 ? 2.0 : 1.0) * m;
    const std::vector<double> col = F.solve(rhs);
    for (int j = 0; j < m; ++j) G(j, k) = col[j];
  });
  return table;
}

/// Continuum tension: sigma_ss - kappa^2 sigma = -theta_t^2 with
/// sigma_s(0) = g sin(theta(0)) and sigma(1) = 0. Same operator as the
/// Green table; the inhomogeneous Neumann value rides on the node-0 rhs.
inline std::vector<double> sigma_solve(const ContinuumCurve& c) {
  validate(c);
  const int m = c.m;
  const std::vector<double> kappa = curve_kappa(c);
  const detail::TriFactor F = detail::neumann_dirichlet_factor(kappa, m);
  std::vector<double> rhs(m);
  for (int j = 0; j < m; ++j) rhs[j] = c.theta_t[j] * c.theta_t[j];
  rhs[0] -= 2.0 * m * c.g * std::sin(c.theta[0]);
  const std::vector<double> sol = F.solve(rhs);
  std::vector<double> sigma(m + 1, 0.0);
  for (int j = 0; j < m; ++j) sigma[j] = sol[j];
  return sigma;
}

namespace detail {

/// theta_tt = 2 sigma_s theta_s + sigma theta_ss. The clamp at s=0 uses the
/// even-reflection ghost theta_{-1} = theta_1 (zero curvature at the pin:
/// theta_s(0)=0, theta_ss(0)=2(theta_1-theta_0)/h^2). The free end needs no
/// extra condition: sigma(1)=0 degenerates the equation, and one-sided
/// second-order stencils close the last row.
inline std::vector<double> theta_acceleration(const ContinuumCurve& c,
                                              std::span<const double> sigma) {
  const int m = c.m;
  const double h = c.h();
  const std::vector<double> sigma_s = grid_derivative(sigma, h);
  std::vector<double> acc(m + 1);
  const auto& th = c.theta;
  acc[0] = sigma[0] * 2.0 * (th[1] - th[0]) / (h * h);  // theta_s(0)=0 kills the transport term
  for (int j = 1; j < m; ++j) {
    const double ts = (th[j + 1] - th[j - 1]) / (2.0 * h);
    const double tss = (th[j + 1] - 2.0 * th[j] + th[j - 1]) / (h * h);
    acc[j] = 2.0 * sigma_s[j] * ts + sigma[j] * tss;
  }
  const double ts_m = (3.0 * th[m] - 4.0 * th[m - 1] + th[m - 2]) / (2.0 * h);
  const double tss_m =
      (2.0 * th[m] - 5.0 * th[m - 1] + 4.0 * th[m - 2] - th[m - 3]) / (h * h);
  acc[m] = 2.0 * sigma_s[m] * ts_m + sigma[m] * tss_m;
  return acc;
}

}  // namespace detail

/// Method-of-lines RK4 on (theta, theta_t); every stage re-solves the
/// tension BVP. Checks the advisory CFL bound dt <= h/(2 sqrt(max sigma))
/// against the freshly solved sigma each step, and aborts on non-finite
/// values. Samples at t=0, every sample_every-th step, and the final step.
/// Initial data should satisfy the clamp compatibility theta_s(0) = 0.
inline std::vector<ContinuumCurve> evolve(const ContinuumCurve& initial, double dt,
                                          double T, int sample_every = 1) {
  validate(initial);
  require(initial.m >= 4, "evolve needs m >= 4 for the free-end stencils");
  require(dt > 0.0 && T > 0.0, "dt and T must be positive");
  require(sample_every >= 1, "sample_every must be >= 1");
  const long long steps = std::llround(T / dt);
  require(steps >= 1, "T/dt must round to at least one step");

  const int m = initial.m;
  const double h = initial.h();
  std::vector<ContinuumCurve> samples;
  ContinuumCurve c = initial;
  samples.push_back(c);

  const auto stage_acc = [&](const ContinuumCurve& s, bool check_cfl) {
    const std::vector<double> sigma = sigma_solve(s);
    if (check_cfl) {
      double smax = 0.0;
      for (double v : sigma) smax = std::max(smax, v);
      if (smax > 0.0 && dt > h / (2.0 * std::sqrt(smax))) {
        char msg[128];
        std::snprintf(msg, sizeof msg,
                      "time step %.3g violates the advisory bound %.3g (max sigma %.3g)",
                      dt, h / (2.0 * std::sqrt(smax)), smax);
        throw numerical_error(msg);
      }
    }
    return detail::theta_acceleration(s, sigma);
  };

  ContinuumCurve stage = c;
  for (long long k = 1; k <= steps; ++k) {
    const std::vector<double> k1t = c.theta_t;
    const std::vector<double> k1w = stage_acc(c, true);
    for (int j = 0; j <= m; ++j) {
      stage.theta[j] = c.theta[j] + 0.5 * dt * k1t[j];
      stage.theta_t[j] = c.theta_t[j] + 0.5 * dt * k1w[j];
    }
    const std::vector<double> k2t = stage.theta_t;
    const std::vector<double> k2w = stage_acc(stage, false);
    for (int j = 0; j <= m; ++j) {
      stage.theta[j] = c.theta[j] + 0.5 * dt * k2t[j];
      stage.theta_t[j] = c.theta_t[j] + 0.5 * dt * k2w[j];
    }
    const std::vector<double> k3t = stage.theta_t;
    const std::vector<double> k3w = stage_acc(stage, false);
    for (int j = 0; j <= m; ++j) {
      stage.theta[j] = c.theta[j] + dt * k3t[j];
      stage.theta_t[j] = c.theta_t[j] + dt * k3w[j];
    }
    const std::vector<double> k4t = stage.theta_t;
    const std::vector<double> k4w = stage_acc(stage, false);
    const double w = dt / 6.0;
    for (int j = 0; j <= m; ++j) {
      c.theta[j] += w * (k1t[j] + 2.0 * k2t[j] + 2.0 * k3t[j] + k4t[j]);
      c.theta_t[j] += w * (k1w[j] + 2.0 * k2w[j] + 2.0 * k3w[j] + k4w[j]);
    }
    for (int j = 0; j <= m; ++j)
      if (!std::isfinite(c.theta[j]) || !std::isfinite(c.theta_t[j])) {
        char msg[128];
        std::snprintf(msg, sizeof msg,
                      "curve became non-finite at t=%.6g (step %lld, node %d)",
                      k * dt, k, j);
        throw numerical_error(msg);
      }
    if (k % sample_every == 0 || k == steps) samples.push_back(c);
  }
  return samples;
}

/// Metric kinetic energy (1/2) int |eta_t|^2 ds, with eta_t(s) accumulated
/// from theta_t by cumulative trapezoid — the continuum twin of summing
/// |v_i|^2 over reconstructed joint velocities.
inline double curve_kinetic_energy(const ContinuumCurve& c) {
  validate(c);
  const int m = c.m;
  const double h = c.h();
  std::vector<double> speed2(m + 1);
  Vec2 v{0.0, 0.0};
  speed2[0] = 0.0;
  Vec2 prev{-c.theta_t[0] * std::sin(c.theta[0]), c.theta_t[0] * std::cos(c.theta[0])};
  for (int j = 1; j <= m; ++j) {
    const Vec2 cur{-c.theta_t[j] * std::sin(c.theta[j]),
                   c.theta_t[j] * std::cos(c.theta[j])};
    v += 0.5 * h * (prev + cur);
    prev = cur;
    speed2[j] = norm2(v);
  }
  double e = 0.5 * h * (0.5 * speed2[0] + 0.5 * speed2[m]);
  for (int j = 1; j < m; ++j) e += 0.5 * h * speed2[j];
  return e;
}

namespace detail {

inline std::vector<double> trapezoid_weights(int m, double h) {
  std::vector<double> w(m + 1, h);
  w[0] = 0.5 * h;
  w[m] = 0.5 * h;
  return w;
}

}  // namespace detail

/// Sectional-curvature quadrature against the Green kernel:
///   (1/2) intint G(s,q) sum_{a,b} (X'_a(s) Y'_b(q) - X'_b(q) Y'_a(s))^2,
/// with the square expanded to |X'(s)|^2|Y'(q)|^2 + |X'(q)|^2|Y'(s)|^2
/// - 2<X',Y'>(s)<X',Y'>(q) and trapezoid weights on both axes.
inline double continuum_curvature(const ContinuumCurve& curve,
                                  std::span<const Vec2> Xp, std::span<const Vec2> Yp) {
  validate(curve);
  const int m = curve.m;
  require(static_cast<int>(Xp.size()) == m + 1 && static_cast<int>(Yp.size()) == m + 1,
          "derivative fields must be sampled on the m+1 grid");
  const GreenTable table = green_table(curve_kappa(curve));
  const std::vector<double> w = detail::trapezoid_weights(m, curve.h());
  std::vector<double> xx(m + 1), yy(m + 1), xy(m + 1);
  for (int j = 0; j <= m; ++j) {
    xx[j] = norm2(Xp[j]);
    yy[j] = norm2(Yp[j]);
    xy[j] = dot(Xp[j], Yp[j]);
  }
  double acc = 0.0;
  for (int j = 0; j <= m; ++j) {
    double row = 0.0;
    for (int k = 0; k <= m; ++k)
      row += w[k] * table.G(j, k) * (xx[j] * yy[k] + xx[k] * yy[j] - 2.0 * xy[j] * xy[k]);
    acc += w[j] * row;
  }
  return 0.5 * acc;
}

/// Polarized form:
///   intint G(s,q) (|X'(q)|^2 <Y'(s),W'(s)> - <X',Y'>(q) <X',W'>(s)) ds dq.
/// W' = Y' collapses to the curvature quadrature above (G is symmetric).
inline double polarized_curvature(const ContinuumCurve& curve, std::span<const Vec2> Xp,
                                  std::span<const Vec2> Yp, std::span<const Vec2> Wp) {
  validate(curve);
  const int m = curve.m;
  require(static_cast<int>(Xp.size()) == m + 1 && static_cast<int>(Yp.size()) == m + 1 &&
              static_cast<int>(Wp.size()) == m + 1,
          "derivative fields must be sampled on the m+1 grid");
  const GreenTable table = green_table(curve_kappa(curve));
  const std::vector<double> w = detail::trapezoid_weights(m, curve.h());
  std::vector<double> xx(m + 1), xy(m + 1), yw(m + 1), xw(m + 1);
  for (int j = 0; j <= m; ++j) {
    xx[j] = norm2(Xp[j]);
    xy[j] = dot(Xp[j], Yp[j]);
    yw[j] = dot(Yp[j], Wp[j]);
    xw[j] = dot(Xp[j], Wp[j]);
  }
  double acc = 0.0;
  for (int s = 0; s <= m; ++s) {
    double row = 0.0;
    for (int q = 0; q <= m; ++q)
      row += w[q] * table.G(s, q) * (xx[q] * yw[s] - xy[q] * xw[s]);
    acc += w[s] * row;
  }
  return acc;
}

/// Residual of the energy identity G(q,q) = int G_s^2 + kappa^2 G^2 ds,
/// max over source nodes. O(1/m): the grid derivative smears the G_s jump
/// at s=q across one cell.
inline double green_identity_check(std::span<const double> kappa) {
  const int m = static_cast<int>(kappa.size()) - 1;
  const GreenTable table = green_table(kappa);
  const double h = table.h();
  const std::vector<double> w = detail::trapezoid_weights(m, h);
  double worst = 0.0;
  std::vector<double> col(m + 1);
  for (int k = 0; k <= m; ++k) {
    for (int j = 0; j <= m; ++j) col[j] = table.G(j, k);
    const std::vector<double> ds = grid_derivative(col, h);
    double integral = 0.0;
    for (int j = 0; j <= m; ++j)
      integral += w[j] * (ds[j] * ds[j] + kappa[j] * kappa[j] * col[j] * col[j]);
    worst = std::max(worst, std::fabs(table.G(k, k) - integral));
  }
  return worst;
}

}  // namespace whipchain
