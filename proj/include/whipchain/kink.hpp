#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "whipchain/chain.hpp"
#include "whipchain/common.hpp"
#include "whipchain/profile.hpp"
#include "whipchain/tension.hpp"

namespace whipchain {

namespace detail {

/// Kink positions snapped to grid nodes, strictly inside (0, m), sorted.
/// Two kinks landing closer than two cells apart are unresolvable on this
/// grid (the restart of one would overwrite the sentinel of the next).
inline std::vector<int> snap_kinks(std::span<const KinkSpec> kinks, int m) {
  std::vector<int> nodes;
  for (const KinkSpec& k : kinks) {
    validate(k);
    nodes.push_back(std::clamp<int>(static_cast<int>(std::lround(k.s_o * m)), 1, m - 1));
  }
  std::sort(nodes.begin(), nodes.end());
  for (size_t i = 1; i < nodes.size(); ++i)
    require(nodes[i] - nodes[i - 1] >= 2, "kinks closer than two grid cells apart");
  return nodes;
}

/// One RK4 cell step of f' = kappa^2(s) - f^2.
inline double riccati_step(const std::function<double(double)>& kappa, double s,
                           double h, double f) {
  const auto rhs = [&](double sv, double fv) {
    const double kv = kappa(sv);
    return kv * kv - fv * fv;
  };
  const double k1 = rhs(s, f);
  const double k2 = rhs(s + 0.5 * h, f + 0.5 * h * k1);
  const double k3 = rhs(s + 0.5 * h, f + 0.5 * h * k2);
  const double k4 = rhs(s + h, f + h * k3);
  return f + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace detail

/// Integrates f' = kappa^2 - f^2, f(0) = 0, by RK4 on the nodes j/m. Each
/// kink blows f up: the node at the (snapped) kink records +infinity, and
/// integration restarts one cell to the right with f = 1/eps, eps = 1/m —
/// the value the exact blow-up solution 1/(s - s_o) takes there. The kink
/// ANGLE never enters: only the position does.
inline std::vector<double> riccati_solve(const std::function<double(double)>& kappa,
                                         std::span<const KinkSpec> kinks, int m) {
  require(m >= 2, "riccati grid needs m >= 2");
  const std::vector<int> kink_nodes = detail::snap_kinks(kinks, m);
  const double h = 1.0 / m;
  std::vector<double> f(m + 1, 0.0);
  size_t next_kink = 0;
  int j = 0;
  double v = 0.0;
  f[0] = 0.0;
  while (j < m) {
    if (next_kink < kink_nodes.size() && j + 1 == kink_nodes[next_kink]) {
      f[j + 1] = std::numeric_limits<double>::infinity();
      ++next_kink;
      if (j + 2 <= m) {
        v = static_cast<double>(m);  // 1/eps just right of the kink
        f[j + 2] = v;
      }
      j += 2;
      continue;
    }
    v = detail::riccati_step(kappa, j * h, h, v);
    f[j + 1] = v;
    ++j;
  }
  return f;
}

/// How well the elimination pivots track the Riccati solution:
/// max_i |b_i - 1 - f(i/n)/n|, skipping indices within exclude_cells of any
/// kink (and the +inf sentinels). The curvature fed to the Riccati solve is
/// recovered from the chain's own angle differences, with kink joints
/// patched by neighbour interpolation so the jump does not pollute the
/// smooth field.
inline double pivot_approximation_residual(const ChainState& state,
                                           std::span<const KinkSpec> kinks,
                                           int exclude_cells = 2) {
  validate(state);
  const int n = state.n;
  require(n >= 4, "pivot residual needs n >= 4");
  const std::vector<double> b = elimination_pivots(assemble(state).op);
  const std::vector<int> kink_nodes = detail::snap_kinks(kinks, n);

  // kappa at joint i (arc i/n) ~ n * (theta_{i+1} - theta_i), i = 1..n-1.
  std::vector<double> knode(n, 0.0);
  for (int i = 1; i < n; ++i) knode[i] = n * (state.theta[i] - state.theta[i - 1]);
  for (int node : kink_nodes) {
    if (node >= 2 && node + 1 < n)
      knode[node] = 0.5 * (knode[node - 1] + knode[node + 1]);
    else if (node + 1 < n)
      knode[node] = knode[node + 1];
    else
      knode[node] = knode[node - 1];
  }
  knode[0] = knode[1];
  const auto kappa = [&](double s) {
    const double x = std::clamp(s * n, 0.0, static_cast<double>(n - 1));
    const int lo = std::min(static_cast<int>(x), n - 2);
    const double t = x - lo;
    return (1.0 - t) * knode[lo] + t * knode[lo + 1];
  };

  const std::vector<double> f = riccati_solve(kappa, kinks, n);
  double worst = 0.0;
  for (int i = 1; i <= n; ++i) {
    bool near_kink = false;
    for (int node : kink_nodes)
      if (std::abs(i - node) <= exclude_cells) near_kink = true;
    if (near_kink || !std::isfinite(f[i])) continue;
    worst = std::max(worst, std::fabs(b[i - 1] - 1.0 - f[i] / n));
  }
  return worst;
}

/// Kinked Green-function formula evaluated by grid quadrature:
///   G(x,y) = int_{max(x,y)}^1 phi(x,s) phi(y,s)
///            exp(-int_x^s f) exp(-int_y^s f) ds,
/// phi(x,s) = prod of cos(alpha) over kinks strictly between x and s.
/// int f across a kink diverges logarithmically; it is truncated at
/// eps = 1/m of the kink (the cell right of the sentinel contributes
/// nothing, the cell left of it is closed with a rectangle rule), so
/// straddling values carry the eps truncation and shrink as m grows.
/// x and y snap to the nearest grid node.
inline double kink_green(double x, double y, const std::function<double(double)>& kappa,
                         std::span<const KinkSpec> kinks, int m = 1000) {
  require(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0, "x, y must lie in [0,1]");
  const std::vector<int> kink_nodes = detail::snap_kinks(kinks, m);
  const std::vector<double> f = riccati_solve(kappa, kinks, m);
  const double h = 1.0 / m;

  std::vector<double> F(m + 1, 0.0);  // cumulative int f with truncated kink cells
  for (int j = 1; j <= m; ++j) {
    if (!std::isfinite(f[j]))
      F[j] = F[j - 1] + h * f[j - 1];  // rectangle into the blow-up node
    else if (!std::isfinite(f[j - 1]))
      F[j] = F[j - 1];  // truncated cell just right of the kink
    else
      F[j] = F[j - 1] + 0.5 * h * (f[j - 1] + f[j]);
  }

  const int jx = static_cast<int>(std::lround(x * m));
  const int jy = static_cast<int>(std::lround(y * m));
  const int j0 = std::max(jx, jy);
  const auto phi = [&](int from, int at) {
    double p = 1.0;
    for (size_t q = 0; q < kinks.size(); ++q) {
      const int node = kink_nodes[q];
      if (from < node && node < at) p *= std::cos(kinks[q].alpha);
    }
    return p;
  };
  double acc = 0.0;
  for (int j = j0; j <= m; ++j) {
    const double w = (j == j0 || j == m) ? 0.5 * h : h;
    const double val = phi(jx, j) * phi(jy, j) *
                       std::exp(-(F[j] - F[jx])) * std::exp(-(F[j] - F[jy]));
    acc += w * val;
  }
  return acc;
}

/// (1/n) M^{ij} at i = floor(nx), j = floor(ny) for chains sampled from the
/// profile at each n — the discrete quantity whose limit is the continuum
/// Green function G(x, y).
inline std::vector<double> discrete_green_limit(const ThetaProfile& profile, double x,
                                                double y, std::span<const int> n_list) {
  require(x > 0.0 && x <= 1.0 && y > 0.0 && y <= 1.0, "x, y must lie in (0,1]");
  std::vector<double> values;
  values.reserve(n_list.size());
  for (int n : n_list) {
    require(n >= 2, "discrete Green limit needs n >= 2");
    const ChainState chain = profile.sample_chain(n);
    const TridiagonalOperator op = assemble(chain).op;
    const int i = std::max(1, static_cast<int>(std::floor(n * x)));
    const int j = std::max(1, static_cast<int>(std::floor(n * y)));
    values.push_back(inverse_entry(op, i - 1, j - 1) / n);
  }
  return values;
}

/// Straight chain at angle theta1, at rest, g=1: returns lambda_1, which the
/// closed form says is -n g M^{11} sin(theta1). The sign identity
/// sign(lambda_1) = -sign(sin theta1) is enforced, not just reported.
inline double gravity_negative_tension_probe(double theta1, int n) {
  require(n >= 1, "probe needs n >= 1");
  ChainState s;
  s.n = n;
  s.theta.assign(n, theta1);
  s.omega.assign(n, 0.0);
  s.g = 1.0;
  const TensionSystem sys = assemble(s);
  const double lambda1 = solve_tension(sys.op, sys.rhs).lambda[0];
  const double target = -std::sin(theta1);
  const bool sign_ok = (std::fabs(lambda1) <= 1e-12 && std::fabs(target) <= 1e-12) ||
                       (lambda1 > 0) == (target > 0);
  if (!sign_ok)
    throw numerical_error("rest-state tension sign disagrees with -sign(sin theta1)");
  return lambda1;
}

}  // namespace whipchain
