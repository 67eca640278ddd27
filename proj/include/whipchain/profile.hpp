#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "whipchain/chain.hpp"
#include "whipchain/common.hpp"

namespace whipchain {

/// A kink: the tangent angle jumps by alpha at arc position s_o. When a
/// profile is discretized, s_o snaps to the nearest grid/link boundary.
struct KinkSpec {
  double s_o = 0.5;
  double alpha = 0.0;
};

inline void validate(const KinkSpec& k) {
  require(k.s_o > 0.0 && k.s_o < 1.0, "kink position must lie strictly inside (0,1)");
  require(k.alpha != 0.0 && std::fabs(k.alpha) < std::numbers::pi,
          "kink angle must be nonzero with |alpha| < pi");
}

/// Arc-length angle profile theta(s) = smooth(s) + sum of kink jumps.
/// smooth_d is the analytic derivative of the smooth part (the curvature
/// away from kinks); callers that integrate curvature use it directly.
struct ThetaProfile {
  std::function<double(double)> smooth;
  std::function<double(double)> smooth_d;
  std::vector<KinkSpec> kinks;  // sorted by s_o, distinct

  double operator()(double s) const {
    double v = smooth(s);
    for (const KinkSpec& k : kinks)
      if (s > k.s_o) v += k.alpha;
    return v;
  }

  /// Chain sample: theta_i = theta(i/n) with each kink snapped to the
  /// nearest link boundary, so the full jump lands in one angle difference.
  ChainState sample_chain(int n, double g = 0.0) const {
    require(n >= 1, "chain needs at least one link");
    ChainState s;
    s.n = n;
    s.g = g;
    s.theta.resize(n);
    s.omega.assign(n, 0.0);
    for (int i = 1; i <= n; ++i) {
      double v = smooth(static_cast<double>(i) / n);
      for (const KinkSpec& k : kinks) {
        const int node = static_cast<int>(std::lround(k.s_o * n));
        if (i > node) v += k.alpha;
      }
      s.theta[i - 1] = v;
    }
    return s;
  }
};

inline ThetaProfile straight_profile(double angle) {
  return {[angle](double) { return angle; }, [](double) { return 0.0; }, {}};
}

/// theta(s) = amplitude * sin(pi s).
inline ThetaProfile sine_profile(double amplitude) {
  using std::numbers::pi;
  return {[amplitude](double s) { return amplitude * std::sin(pi * s); },
          [amplitude](double s) { return amplitude * pi * std::cos(pi * s); },
          {}};
}

/// theta(s) = sum_k coeffs[k-1] * sin(k pi s).
inline ThetaProfile custom_profile(std::vector<double> coeffs) {
  using std::numbers::pi;
  auto value = [coeffs](double s) {
    double v = 0.0;
    for (size_t k = 0; k < coeffs.size(); ++k)
      v += coeffs[k] * std::sin((k + 1) * pi * s);
    return v;
  };
  auto deriv = [coeffs](double s) {
    double v = 0.0;
    for (size_t k = 0; k < coeffs.size(); ++k)
      v += coeffs[k] * (k + 1) * pi * std::cos((k + 1) * pi * s);
    return v;
  };
  return {value, deriv, {}};
}

}  // namespace whipchain
