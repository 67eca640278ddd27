#include "whipchain/dynamics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "whipchain/chain.hpp"
#include "whipchain/tension.hpp"

using namespace whipchain;

namespace {

ChainState make_state(std::vector<double> theta, std::vector<double> omega, double g = 0.0) {
  ChainState s;
  s.n = static_cast<int>(theta.size());
  s.theta = std::move(theta);
  s.omega = std::move(omega);
  s.g = g;
  return s;
}

ChainState smooth_state(int n, double g) {
  ChainState s;
  s.n = n;
  s.g = g;
  s.theta.resize(n);
  s.omega.resize(n);
  for (int i = 1; i <= n; ++i) {
    const double x = static_cast<double>(i) / n;
    s.theta[i - 1] = -M_PI / 2 + 0.4 * (1.0 - std::cos(M_PI * x));
    s.omega[i - 1] = 0.3 * std::sin(M_PI * x);
  }
  return s;
}

TEST(DynamicsTest, SinglePendulumAcceleration) {
  const std::vector<double> acc = acceleration(make_state({0.0}, {0.0}, 1.0));
  ASSERT_EQ(acc.size(), 1u);
  EXPECT_NEAR(acc[0], -1.0, 1e-15);
}

TEST(DynamicsTest, DecoupledBendAcceleration) {
  const std::vector<double> acc = acceleration(make_state({0.0, M_PI / 2}, {1.0, 0.0}));
  EXPECT_NEAR(acc[0], 0.0, 1e-14);
  EXPECT_NEAR(acc[1], -1.0, 1e-14);
}

TEST(DynamicsTest, HangingChainIsInEquilibrium) {
  const std::vector<double> acc =
      acceleration(make_state(std::vector<double>(40, -M_PI / 2),
                              std::vector<double>(40, 0.0), 9.8));
  for (double a : acc) EXPECT_NEAR(a, 0.0, 1e-10);
}

TEST(DynamicsTest, RigidRotationHasNoAngularAcceleration) {
  const std::vector<double> acc =
      acceleration(make_state(std::vector<double>(25, 0.7), std::vector<double>(25, 1.3)));
  for (double a : acc) EXPECT_NEAR(a, 0.0, 1e-11);
}

// The same tensions must close the Cartesian equations of motion:
// acc_i = -g e2 + lambda_{i+1}(x_{i+1}-x_i) + lambda_i(x_{i-1}-x_i).
TEST(DynamicsTest, AngleFormSharesTensionsWithCartesianForm) {
  std::mt19937_64 rng(67);
  for (int rep = 0; rep < 20; ++rep) {
    const ChainState s = oracle::random_state(rng, 3 + rep * 2, 3.0, rep % 2 ? 9.8 : 0.0, 2.0);
    EXPECT_LE(cartesian_residual(s), 1e-10) << "n=" << s.n;
  }
}

TEST(DynamicsTest, AccelerationIsQuadraticInRates) {
  std::mt19937_64 rng(71);
  const ChainState s = oracle::random_state(rng, 14, 3.0, 0.0, 1.0);
  const std::vector<double> base = acceleration(s);
  for (double c : {2.0, -3.0}) {
    ChainState scaled = s;
    for (double& w : scaled.omega) w *= c;
    const std::vector<double> acc = acceleration(scaled);
    for (int i = 0; i < s.n; ++i)
      EXPECT_NEAR(acc[i], c * c * base[i], 1e-10 * std::max(1.0, std::fabs(base[i])));
  }
}

TEST(DynamicsTest, StepErrorShrinksSixteenfoldWhenHalved) {
  const ChainState s = smooth_state(6, 9.8);
  const double dt = 0.02;

  ChainState ref = s;
  for (int k = 0; k < 64; ++k) ref = step_rk4(ref, dt / 64);
  const ChainState one = step_rk4(s, dt);
  ChainState two = step_rk4(s, dt / 2);
  two = step_rk4(two, dt / 2);

  const auto err = [&](const ChainState& a) {
    double e = 0.0;
    for (int i = 0; i < a.n; ++i) {
      e = std::max(e, std::fabs(a.theta[i] - ref.theta[i]));
      e = std::max(e, std::fabs(a.omega[i] - ref.omega[i]));
    }
    return e;
  };
  const double e1 = err(one), e2 = err(two);
  ASSERT_GT(e1, 1e-12);  // errors must sit well above rounding for the ratio to mean anything
  ASSERT_GT(e2, 1e-13);
  EXPECT_GT(e1 / e2, 12.0);
  EXPECT_LT(e1 / e2, 20.0);
}

TEST(DynamicsTest, EquilibriumIsAFixedPointOfTheStepper) {
  const ChainState s =
      make_state(std::vector<double>(20, -M_PI / 2), std::vector<double>(20, 0.0), 9.8);
  ChainState cur = s;
  for (int k = 0; k < 100; ++k) cur = step_rk4(cur, 1e-3);
  for (int i = 0; i < s.n; ++i) {
    EXPECT_NEAR(cur.theta[i], s.theta[i], 1e-13);
    EXPECT_NEAR(cur.omega[i], 0.0, 1e-13);
  }
}

TEST(DynamicsTest, FreeMotionConservesEnergyAndAngularMomentum) {
  const ChainState s = smooth_state(10, 0.0);
  const Trajectory traj = simulate(s, 1e-3, 1.0, 100);
  const double e0 = traj.diagnostics.front().kinetic;
  const double l0 = traj.diagnostics.front().angular_momentum;
  ASSERT_GT(std::fabs(e0), 0.0);
  for (const TrajectorySample& d : traj.diagnostics) {
    EXPECT_NEAR(d.kinetic, e0, 1e-9 * std::fabs(e0));
    EXPECT_NEAR(d.angular_momentum, l0, 1e-9 * std::max(1.0, std::fabs(l0)));
  }
}

TEST(DynamicsTest, GravityMotionConservesTotalEnergy) {
  const ChainState s = smooth_state(10, 9.8);
  const Trajectory traj = simulate(s, 1e-3, 1.0, 100);
  const double e0 = traj.diagnostics.front().kinetic + traj.diagnostics.front().potential;
  for (const TrajectorySample& d : traj.diagnostics)
    EXPECT_NEAR(d.kinetic + d.potential, e0, 1e-9 * std::max(1.0, std::fabs(e0)));
}

TEST(DynamicsTest, SampleScheduleCoversEndpoints) {
  const ChainState s = smooth_state(5, 0.0);
  const Trajectory traj = simulate(s, 1e-3, 0.1, 30);
  ASSERT_GE(traj.times.size(), 3u);
  EXPECT_DOUBLE_EQ(traj.times.front(), 0.0);
  EXPECT_NEAR(traj.times.back(), 0.1, 1e-12);
  for (size_t i = 1; i < traj.times.size(); ++i) EXPECT_GT(traj.times[i], traj.times[i - 1]);
  EXPECT_EQ(traj.times.size(), traj.states.size());
  EXPECT_EQ(traj.times.size(), traj.diagnostics.size());
}

TEST(DynamicsTest, OverflowingRunAbortsWithDiagnostics) {
  const ChainState s = make_state({0.3, 0.9}, {1e154, 1e154});
  EXPECT_THROW(simulate(s, 1e-3, 0.01), numerical_error);
}

TEST(DynamicsTest, MinTensionDiagnosticTracksSolvedTension) {
  const ChainState s = smooth_state(8, 9.8);
  const Trajectory traj = simulate(s, 1e-3, 0.01, 1);
  const TensionSystem sys = assemble(traj.states.front());
  const TensionVector lam = solve_tension(sys.op, sys.rhs);
  double expect = lam.lambda[0];
  for (double v : lam.lambda) expect = std::min(expect, v);
  EXPECT_NEAR(traj.diagnostics.front().min_tension, expect, 1e-12);
}

}  // namespace
