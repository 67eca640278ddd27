#include "whipchain/convergence.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"

using namespace whipchain;

namespace {

AnalyticProfile constant(double c) {
  return {[c](double) { return c; }, [](double) { return 0.0; },
          [](double) { return 0.0; }};
}

TEST(ConvergenceTest, TruncationVanishesOnConstantFields) {
  const TruncationResidual r = truncation_residual(constant(0.7), constant(3.0), 50);
  EXPECT_NEAR(r.evolution, 0.0, 1e-14);
  EXPECT_NEAR(r.tension, 0.0, 1e-14);
}

TEST(ConvergenceTest, TruncationIsSecondOrderOnSmoothFields) {
  const AnalyticProfile theta{
      [](double s) { return std::sin(M_PI * s); },
      [](double s) { return M_PI * std::cos(M_PI * s); },
      [](double s) { return -M_PI * M_PI * std::sin(M_PI * s); }};
  const AnalyticProfile sigma{
      [](double s) { return (1.0 - s) * (1.0 - s); },
      [](double s) { return -2.0 * (1.0 - s); },
      [](double) { return 2.0; }};
  const TruncationResidual coarse = truncation_residual(theta, sigma, 100);
  const TruncationResidual fine = truncation_residual(theta, sigma, 200);
  ASSERT_GT(coarse.evolution, 1e-9);
  ASSERT_GT(coarse.tension, 1e-9);
  EXPECT_GE(coarse.evolution / fine.evolution, 3.6);
  EXPECT_GE(coarse.tension / fine.tension, 3.6);
}

TEST(ConvergenceTest, TruncationNearMachineZeroOnGentleLinearFields) {
  const double b = 1e-3;
  const AnalyticProfile theta{[b](double s) { return 0.3 + b * s; },
                              [b](double) { return b; }, [](double) { return 0.0; }};
  const AnalyticProfile sigma{[](double s) { return 2.0 - s; },
                              [](double) { return -1.0; }, [](double) { return 0.0; }};
  const TruncationResidual r = truncation_residual(theta, sigma, 100);
  EXPECT_LE(r.evolution, 1e-10);
  EXPECT_LE(r.tension, 1e-10);
}

TEST(ConvergenceTest, ObservedOrderRecoversPowerLaw) {
  std::vector<RefinementLevel> levels;
  for (int n : {10, 20, 40, 80}) levels.push_back({n, 3.0 / (n * n)});
  EXPECT_NEAR(observed_order(levels), 2.0, 1e-9);
}

TEST(ConvergenceTest, ObservedOrderReportsInfinityAtRoundingFloor) {
  const std::vector<RefinementLevel> levels{{10, 1e-14}, {20, 3e-13}, {40, 1e-15}};
  EXPECT_TRUE(std::isinf(observed_order(levels)));
}

TEST(ConvergenceTest, ObservedOrderValidation) {
  EXPECT_THROW(observed_order(std::vector<RefinementLevel>{{10, 1.0}}), validation_error);
  EXPECT_THROW(observed_order(std::vector<RefinementLevel>{{10, 1.0}, {20, -1.0}}),
               validation_error);
  EXPECT_THROW(observed_order(std::vector<RefinementLevel>{{0, 1.0}, {20, 0.5}}),
               validation_error);

  RefinementReport two;
  two.levels = {{10, 1.0}, {20, 0.25}};
  EXPECT_THROW(validate(two), validation_error);
}

TEST(ConvergenceTest, RefinementStudyExactOnRigidRotation) {
  ContinuumData data;
  data.theta = [](double) { return 0.4; };
  data.theta_t = [](double) { return 1.3; };
  data.g = 0.0;
  const std::vector<int> n_list{10, 20, 40, 80};
  const RefinementReport report = refinement_study(data, n_list, 0.5);
  ASSERT_EQ(report.levels.size(), 3u);
  for (const RefinementLevel& l : report.levels) EXPECT_LE(l.error, 1e-12);
  EXPECT_TRUE(std::isinf(report.observed_order));
}

TEST(ConvergenceTest, RefinementStudyHangingChainStaysPut) {
  ContinuumData data;
  data.theta = [](double) { return -M_PI / 2; };
  data.theta_t = [](double) { return 0.0; };
  data.g = 9.8;
  const std::vector<int> n_list{10, 20, 40, 80};
  const RefinementReport report = refinement_study(data, n_list, 0.5);
  for (const RefinementLevel& l : report.levels) EXPECT_LE(l.error, 1e-10);
}

// Interior truncation is second order but the free end contributes a first-
// order boundary term, so the measured order for the full angle vector sits
// between 1 and 2. Demand at least first order and a strict decrease.
TEST(ConvergenceTest, RefinementStudyConvergesOnSmoothSwing) {
  ContinuumData data;
  data.theta = [](double s) { return -M_PI / 2 + 0.3 * (1.0 - std::cos(M_PI * s)); };
  data.theta_t = [](double) { return 0.0; };
  data.g = 9.8;
  const std::vector<int> n_list{25, 50, 100, 200};
  const RefinementReport report = refinement_study(data, n_list, 0.5);
  ASSERT_EQ(report.levels.size(), 3u);
  EXPECT_LT(report.levels[1].error, report.levels[0].error);
  EXPECT_LT(report.levels[2].error, report.levels[1].error);
  EXPECT_GE(report.observed_order, 1.0);
}

TEST(ConvergenceTest, RefinementStudyValidation) {
  ContinuumData data;
  data.theta = [](double) { return 0.0; };
  data.theta_t = [](double) { return 0.0; };

  const std::vector<int> three{10, 20, 40};
  EXPECT_THROW(refinement_study(data, three, 0.1), validation_error);
  const std::vector<int> nondiv{10, 20, 40, 70};
  EXPECT_THROW(refinement_study(data, nondiv, 0.1), validation_error);
  const std::vector<int> unsorted{10, 40, 20, 80};
  EXPECT_THROW(refinement_study(data, unsorted, 0.1), validation_error);
  const std::vector<int> good{10, 20, 40, 80};
  EXPECT_THROW(refinement_study(data, good, -1.0), validation_error);
}

TEST(ConvergenceTest, DefaultStepRule) {
  EXPECT_DOUBLE_EQ(default_dt_rule(10), 1e-3);
  EXPECT_DOUBLE_EQ(default_dt_rule(200), 1e-3);
  EXPECT_DOUBLE_EQ(default_dt_rule(400), 5e-4);
}

// Hanging chain: discrete rod tensions sit exactly one grid offset above the
// continuum profile g(1-s), so the comparison equals g/n to rounding.
TEST(ConvergenceTest, TensionComparisonHangingOffsetIsOneCell) {
  const double g = 9.8;
  for (int n : {25, 50, 100}) {
    ChainState s;
    s.n = n;
    s.g = g;
    s.theta.assign(n, -M_PI / 2);
    s.omega.assign(n, 0.0);
    const double got = tension_comparison(s, [g](double x) { return g * (1.0 - x); });
    EXPECT_NEAR(got, g / n, 1e-10);
  }
}

// Spinning straight chain against the parabolic tension profile. The exact
// discrete solution overshoots by (omega^2/2)(k+n)/n^2, peaking at w^2/n.
TEST(ConvergenceTest, TensionComparisonRotatingPeaksAtFreeEnd) {
  const double w = 2.0;
  for (int n : {40, 80}) {
    ChainState s;
    s.n = n;
    s.g = 0.0;
    s.theta.assign(n, 0.3);
    s.omega.assign(n, w);
    const double got =
        tension_comparison(s, [w](double x) { return 0.5 * w * w * (1.0 - x * x); });
    EXPECT_NEAR(got, w * w / n, 1e-10);
  }
}

TEST(ConvergenceTest, TensionComparisonZeroForRestChainWithoutGravity) {
  ChainState s;
  s.n = 30;
  s.g = 0.0;
  s.theta.assign(30, 0.9);
  s.omega.assign(30, 0.0);
  EXPECT_NEAR(tension_comparison(s, [](double) { return 0.0; }), 0.0, 1e-14);
}

namespace {

ContinuumCurve rest_curve(int m, double g, double (*profile)(double)) {
  ContinuumCurve curve;
  curve.m = m;
  curve.g = g;
  curve.theta.resize(m + 1);
  curve.theta_t.assign(m + 1, 0.0);
  for (int j = 0; j <= m; ++j) curve.theta[j] = profile(static_cast<double>(j) / m);
  return curve;
}

ChainState rest_chain(int n, double g, double (*profile)(double)) {
  ChainState s;
  s.n = n;
  s.g = g;
  s.theta.resize(n);
  s.omega.assign(n, 0.0);
  for (int i = 1; i <= n; ++i) s.theta[i - 1] = profile(static_cast<double>(i) / n);
  return s;
}

// Hangs near vertical with theta_s(0) = theta_ss(0) = 0, so the pinned joint
// carries no boundary mismatch and the whole comparison can shrink.
double pin_flat_profile(double s) {
  return -M_PI / 2 + 0.1 * (M_PI * s - std::sin(M_PI * s));
}

// Bent at the pin: theta_ss(0) = 0.15 pi^2.
double pin_bent_profile(double s) {
  return -M_PI / 2 + 0.15 * (1.0 - std::cos(M_PI * s));
}

}  // namespace

TEST(ConvergenceTest, AccelerationComparisonShrinksWithChainRefinement) {
  const ContinuumCurve curve = rest_curve(800, 1.0, pin_flat_profile);
  std::vector<double> errs;
  for (int n : {20, 40, 80})
    errs.push_back(acceleration_comparison(rest_chain(n, 1.0, pin_flat_profile), curve));
  EXPECT_LT(errs[1], errs[0]);
  EXPECT_LT(errs[2], errs[1]);
  EXPECT_LE(errs[2], 0.5 * errs[0]);
}

// Data bent at the pin never agrees there: the first joint's acceleration
// tends to (3/2) sigma(0) theta_ss(0), the continuum's to sigma(0) theta_ss(0),
// so the comparison saturates at half sigma(0) theta_ss(0).
TEST(ConvergenceTest, AccelerationComparisonSaturatesAtBentPin) {
  const ContinuumCurve curve = rest_curve(800, 1.0, pin_bent_profile);
  const double sigma0 = sigma_solve(curve)[0];
  const double gap = 0.5 * sigma0 * 0.15 * M_PI * M_PI;
  for (int n : {80, 160})
    EXPECT_NEAR(acceleration_comparison(rest_chain(n, 1.0, pin_bent_profile), curve),
                gap, 0.05 * gap);
}

}  // namespace
