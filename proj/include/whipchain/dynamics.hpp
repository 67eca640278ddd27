#pragma once

#include <cmath>
#include <cstdio>
#include <vector>

#include "whipchain/chain.hpp"
#include "whipchain/common.hpp"
#include "whipchain/tension.hpp"

namespace whipchain {

/// theta-form equations of motion driven by the tension solve (1-based i):
///   thetadd_i = lambda_{i+1} sin(theta_{i+1}-theta_i)
///             - lambda_{i-1} sin(theta_i-theta_{i-1}),   2 <= i <= n,
///   thetadd_1 = lambda_2 sin(theta_2-theta_1) - n g cos(theta_1),
/// with lambda_{n+1} = 0 at the free end.
inline std::vector<double> acceleration(const ChainState& s) {
  const TensionSystem sys = assemble(s);
  const TensionVector t = solve_tension(sys.op, sys.rhs);
  std::vector<double> acc(s.n);
  const auto lam = [&](int i) {  // 1-based, lambda_{n+1} = 0
    return (i >= 1 && i <= s.n) ? t.lambda[i - 1] : 0.0;
  };
  acc[0] = lam(2) * (s.n >= 2 ? std::sin(s.theta[1] - s.theta[0]) : 0.0) -
           s.n * s.g * std::cos(s.theta[0]);
  for (int i = 2; i <= s.n; ++i) {
    const double fwd = (i < s.n) ? std::sin(s.theta[i] - s.theta[i - 1]) : 0.0;
    acc[i - 1] = lam(i + 1) * fwd - lam(i - 1) * std::sin(s.theta[i - 1] - s.theta[i - 2]);
  }
  return acc;
}

/// Cross-check of the two formulations: differentiate the reconstruction
/// twice and measure how far xdd_i is from
///   -g e_2 + lambda_{i+1}(x_{i+1}-x_i) + lambda_i(x_{i-1}-x_i).
/// The multipliers are shared between the theta-form and Cartesian-form
/// systems, so the residual is pure rounding (<= 1e-9 by contract).
inline double cartesian_residual(const ChainState& s) {
  const TensionSystem sys = assemble(s);
  const TensionVector t = solve_tension(sys.op, sys.rhs);
  const std::vector<double> acc = acceleration(s);
  const CartesianFrame f = reconstruct(s);
  const auto lam = [&](int i) { return (i >= 1 && i <= s.n) ? t.lambda[i - 1] : 0.0; };
  const double invn = 1.0 / s.n;
  Vec2 xdd{0.0, 0.0};
  double worst = 0.0;
  for (int i = 1; i <= s.n; ++i) {
    const double c = std::cos(s.theta[i - 1]);
    const double sn = std::sin(s.theta[i - 1]);
    const double w = s.omega[i - 1];
    xdd += Vec2{invn * (-acc[i - 1] * sn - w * w * c),
                invn * (acc[i - 1] * c - w * w * sn)};
    Vec2 rhs{0.0, -s.g};
    if (i < s.n) rhs += lam(i + 1) * (f.positions[i + 1] - f.positions[i]);
    rhs += lam(i) * (f.positions[i - 1] - f.positions[i]);
    const Vec2 resid = xdd - rhs;
    worst = std::max(worst, std::sqrt(norm2(resid)));
  }
  return worst;
}

/// Classical 4-stage explicit Runge-Kutta on (theta, omega). Every stage
/// re-solves the tension system; lambda is state-dependent and freezing it
/// across stages would drop the order.
inline ChainState step_rk4(const ChainState& s, double dt) {
  require(dt > 0.0 && std::isfinite(dt), "dt must be positive and finite");
  const int n = s.n;
  ChainState stage = s;
  const std::vector<double> k1t = s.omega;
  const std::vector<double> k1w = acceleration(s);

  for (int i = 0; i < n; ++i) {
    stage.theta[i] = s.theta[i] + 0.5 * dt * k1t[i];
    stage.omega[i] = s.omega[i] + 0.5 * dt * k1w[i];
  }
  const std::vector<double> k2t = stage.omega;
  const std::vector<double> k2w = acceleration(stage);

  for (int i = 0; i < n; ++i) {
    stage.theta[i] = s.theta[i] + 0.5 * dt * k2t[i];
    stage.omega[i] = s.omega[i] + 0.5 * dt * k2w[i];
  }
  const std::vector<double> k3t = stage.omega;
  const std::vector<double> k3w = acceleration(stage);

  for (int i = 0; i < n; ++i) {
    stage.theta[i] = s.theta[i] + dt * k3t[i];
    stage.omega[i] = s.omega[i] + dt * k3w[i];
  }
  const std::vector<double> k4t = stage.omega;
  const std::vector<double> k4w = acceleration(stage);

  ChainState out = s;
  const double w = dt / 6.0;
  for (int i = 0; i < n; ++i) {
    out.theta[i] = s.theta[i] + w * (k1t[i] + 2.0 * k2t[i] + 2.0 * k3t[i] + k4t[i]);
    out.omega[i] = s.omega[i] + w * (k1w[i] + 2.0 * k2w[i] + 2.0 * k3w[i] + k4w[i]);
  }
  return out;
}

struct TrajectorySample {
  double kinetic = 0.0;
  double potential = 0.0;
  double angular_momentum = 0.0;
  double min_tension = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<ChainState> states;
  std::vector<TrajectorySample> diagnostics;
};

/// Fixed-step integration to T with diagnostics recorded at t=0, every
/// sample_every-th step, and the final step. Aborts (numerical_error) the
/// moment any angle or rate stops being finite.
inline Trajectory simulate(const ChainState& initial, double dt, double T,
                           int sample_every = 1) {
  validate(initial);
  require(dt > 0.0 && T > 0.0, "dt and T must be positive");
  require(sample_every >= 1, "sample_every must be >= 1");
  const long long steps = std::llround(T / dt);
  require(steps >= 1, "T/dt must round to at least one step");

  Trajectory traj;
  const auto record = [&](double t, const ChainState& s) {
    const TensionSystem sys = assemble(s);
    const TensionVector lam = solve_tension(sys.op, sys.rhs);
    double min_t = lam.lambda[0];
    for (double v : lam.lambda) min_t = std::min(min_t, v);
    const Energy e = energy(s);
    traj.times.push_back(t);
    traj.states.push_back(s);
    traj.diagnostics.push_back({e.kinetic, e.potential, angular_momentum(s), min_t});
  };

  ChainState s = initial;
  record(0.0, s);
  for (long long k = 1; k <= steps; ++k) {
    try {
      s = step_rk4(s, dt);
    } catch (const validation_error&) {
      // The state was valid entering the step, so a validation failure from
      // a stage evaluation means the numbers left the finite range mid-step.
      char msg[128];
      std::snprintf(msg, sizeof msg, "state collapsed during step %lld (t=%.6g)", k,
                    k * dt);
      throw numerical_error(msg);
    }
    for (int i = 0; i < s.n; ++i)
      if (!std::isfinite(s.theta[i]) || !std::isfinite(s.omega[i])) {
        char msg[128];
        std::snprintf(msg, sizeof msg,
                      "state became non-finite at t=%.6g (step %lld, link %d)",
                      k * dt, k, i + 1);
        throw numerical_error(msg);
      }
    if (k % sample_every == 0 || k == steps) record(k * dt, s);
  }
  return traj;
}

}  // namespace whipchain
