#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "whipchain/chain.hpp"
#include "whipchain/common.hpp"
#include "whipchain/continuum.hpp"
#include "whipchain/dynamics.hpp"
#include "whipchain/tension.hpp"

namespace whipchain {

/// A closed-form scalar field on [0,1] with two derivatives, sampled on
/// demand by the residual and comparison routines.
struct AnalyticProfile {
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
};

struct TruncationResidual {
  double evolution = 0.0;
  double tension = 0.0;
};

/// Plugs exact samples of smooth theta, sigma into the discrete evolution
/// and tension stencils and measures the gap to the continuum right sides
/// (sigma theta'' + 2 sigma' theta' and theta'^2 sigma - sigma''). Interior
/// joints only; the first and last rows carry boundary data, not the
/// interior stencil.
inline TruncationResidual truncation_residual(const AnalyticProfile& theta,
                                              const AnalyticProfile& sigma, int n) {
  require(n >= 3, "truncation residual needs n >= 3");
  const double h = 1.0 / n;
  TruncationResidual r;
  for (int k = 2; k <= n - 1; ++k) {
    const double s = k * h, sp = (k + 1) * h, sm = (k - 1) * h;
    const double th = theta.value(s), thp = theta.value(sp), thm = theta.value(sm);
    const double sg = sigma.value(s), sgp = sigma.value(sp), sgm = sigma.value(sm);

    const double evol_lhs =
        n * static_cast<double>(n) * (sgp * std::sin(thp - th) - sgm * std::sin(th - thm));
    const double evol_rhs = sg * theta.d2(s) + 2.0 * sigma.d1(s) * theta.d1(s);
    r.evolution = std::max(r.evolution, std::fabs(evol_lhs - evol_rhs));

    const double ten_lhs = n * static_cast<double>(n) *
                           (2.0 * sg - std::cos(th - thm) * sgm - std::cos(thp - th) * sgp);
    const double td = theta.d1(s);
    const double ten_rhs = td * td * sg - sigma.d2(s);
    r.tension = std::max(r.tension, std::fabs(ten_lhs - ten_rhs));
  }
  return r;
}

struct RefinementLevel {
  int resolution = 0;
  double error = 0.0;
};

struct RefinementReport {
  std::vector<RefinementLevel> levels;
  double observed_order = 0.0;
};

/// Least-squares slope of log error against log resolution, negated so a
/// second-order method reports ~2. Sequences already at rounding level
/// (every error below 1e-12) report +infinity: the fit would measure noise.
inline double observed_order(std::span<const RefinementLevel> levels) {
  require(levels.size() >= 2, "order fit needs at least two levels");
  bool all_tiny = true;
  for (const RefinementLevel& l : levels) {
    require(l.resolution > 0, "resolutions must be positive");
    require(l.error >= 0.0 && std::isfinite(l.error), "errors must be finite and nonnegative");
    if (l.error >= 1e-12) all_tiny = false;
  }
  if (all_tiny) return std::numeric_limits<double>::infinity();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double nl = static_cast<double>(levels.size());
  for (const RefinementLevel& l : levels) {
    const double x = std::log(static_cast<double>(l.resolution));
    const double y = std::log(std::max(l.error, 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return -(nl * sxy - sx * sy) / (nl * sxx - sx * sx);
}

inline void validate(const RefinementReport& report) {
  require(report.levels.size() >= 3, "a refinement report needs at least three levels");
}

/// Smooth initial data for a chain family: angle and angular velocity as
/// functions of arclength, plus gravity.
struct ContinuumData {
  std::function<double(double)> theta;
  std::function<double(double)> theta_t;
  double g = 0.0;
};

inline ChainState sample_state(const ContinuumData& data, int n) {
  ChainState s;
  s.n = n;
  s.g = data.g;
  s.theta.resize(n);
  s.omega.resize(n);
  for (int i = 1; i <= n; ++i) {
    s.theta[i - 1] = data.theta(static_cast<double>(i) / n);
    s.omega[i - 1] = data.theta_t(static_cast<double>(i) / n);
  }
  return s;
}

/// dt small enough that time error stays below spatial error in order
/// studies: rod tensions scale like n^2 sigma, so frequencies grow with n.
inline double default_dt_rule(int n) { return std::min(1e-3, 0.2 / n); }

/// Runs the chain at every resolution in n_list from the same sampled data,
/// then measures each coarse run against the finest at the shared joints
/// i/n (so every coarse resolution must divide the finest). Max angle norm
/// at the final time. Levels run concurrently.
inline RefinementReport refinement_study(const ContinuumData& data,
                                         std::span<const int> n_list, double T,
                                         std::function<double(int)> dt_rule = {}) {
  require(n_list.size() >= 4, "study needs at least four resolutions");
  require(T > 0.0 && std::isfinite(T), "final time must be positive");
  if (!dt_rule) dt_rule = default_dt_rule;
  const int n_fine = n_list.back();
  for (size_t i = 0; i < n_list.size(); ++i) {
    require(n_list[i] >= 2, "resolutions must be >= 2");
    if (i > 0) require(n_list[i] > n_list[i - 1], "resolutions must increase");
    require(n_fine % n_list[i] == 0, "every resolution must divide the finest");
  }

  std::vector<ChainState> finals(n_list.size());
  parallel_for(0, static_cast<int>(n_list.size()), [&](int idx) {
    const int n = n_list[idx];
    const double dt = dt_rule(n);
    require(dt > 0.0, "dt rule must return positive steps");
    Trajectory traj = simulate(sample_state(data, n), dt, T,
                               std::numeric_limits<int>::max());
    finals[idx] = traj.states.back();
  });

  RefinementReport report;
  const ChainState& fine = finals.back();
  for (size_t idx = 0; idx + 1 < n_list.size(); ++idx) {
    const int n = n_list[idx];
    const int stride = n_fine / n;
    double err = 0.0;
    for (int i = 1; i <= n; ++i)
      err = std::max(err, std::fabs(finals[idx].theta[i - 1] - fine.theta[i * stride - 1]));
    report.levels.push_back({n, err});
  }
  report.observed_order = observed_order(report.levels);
  return report;
}

/// max_k |lambda_k / n^2 - sigma(k/n)|: the rod tensions against a continuum
/// tension profile under the 1/n^2 scaling.
inline double tension_comparison(const ChainState& state,
                                 const std::function<double(double)>& sigma) {
  validate(state);
  const TensionSystem sys = assemble(state);
  const std::vector<double>& lam = solve_tension(sys.op, sys.rhs).lambda;
  const double n2 = static_cast<double>(state.n) * state.n;
  double worst = 0.0;
  for (int k = 1; k <= state.n; ++k)
    worst = std::max(worst,
                     std::fabs(lam[k - 1] / n2 - sigma(static_cast<double>(k) / state.n)));
  return worst;
}

/// max_k |discrete angular acceleration at joint k - continuum acceleration
/// at s=k/n|, the continuum side evaluated on its own grid and linearly
/// interpolated. Shrinks under refinement for smooth data with
/// theta_ss(0) = 0. The first joint balances a single neighbour rod where
/// the interior stencil balances two, so its acceleration tends to
/// (3/2) sigma(0) theta_ss(0) instead of the continuum sigma(0) theta_ss(0):
/// data bent at the pin keeps a persistent sigma(0) theta_ss(0) / 2 gap.
inline double acceleration_comparison(const ChainState& state, const ContinuumCurve& curve) {
  validate(state);
  validate(curve);
  const std::vector<double> disc = acceleration(state);
  const std::vector<double> sig = sigma_solve(curve);
  const std::vector<double> cont = detail::theta_acceleration(curve, sig);
  const int m = curve.m;
  double worst = 0.0;
  for (int k = 1; k <= state.n; ++k) {
    const double x = static_cast<double>(k) * m / state.n;
    const int lo = std::min(static_cast<int>(x), m - 1);
    const double t = x - lo;
    const double c = (1.0 - t) * cont[lo] + t * cont[lo + 1];
    worst = std::max(worst, std::fabs(disc[k - 1] - c));
  }
  return worst;
}

}  // namespace whipchain
