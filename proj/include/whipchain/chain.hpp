#pragma once

#include <cmath>
#include <vector>

#include "whipchain/common.hpp"

namespace whipchain {

/// Inextensible chain of n rigid links of length 1/n, pinned at the origin,
/// free at the far end. theta[k] is the angle of link k+1 against the
/// positive x axis (storage is 0-based; formulas in comments use the 1-based
/// link index i = k+1). Angles are kept unwrapped: no mod-2pi normalization,
/// only differences of neighbouring angles ever enter the formulas.
struct ChainState {
  int n = 0;
  std::vector<double> theta;
  std::vector<double> omega;  // d(theta)/dt, same indexing
  double g = 0.0;             // gravity pulls along -y
};

inline void validate(const ChainState& s) {
  require(s.n >= 1, "chain needs at least one link");
  require(static_cast<int>(s.theta.size()) == s.n, "theta size must equal n");
  require(static_cast<int>(s.omega.size()) == s.n, "omega size must equal n");
  require_all_finite(s.theta, "theta");
  require_all_finite(s.omega, "omega");
  require(std::isfinite(s.g) && s.g >= 0.0, "g must be finite and nonnegative");
}

/// Joint positions and velocities, index 0..n. positions[0] is the pinned end.
struct CartesianFrame {
  std::vector<Vec2> positions;
  std::vector<Vec2> velocities;
};

/// x_i = x_{i-1} + (1/n)(cos theta_i, sin theta_i), x_0 = 0;
/// v_i = v_{i-1} + (1/n) omega_i (-sin theta_i, cos theta_i), v_0 = 0.
inline CartesianFrame reconstruct(const ChainState& s) {
  validate(s);
  CartesianFrame f;
  f.positions.resize(s.n + 1);
  f.velocities.resize(s.n + 1);
  const double invn = 1.0 / s.n;
  Vec2 x{0.0, 0.0};
  Vec2 v{0.0, 0.0};
  f.positions[0] = x;
  f.velocities[0] = v;
  for (int k = 0; k < s.n; ++k) {
    const double c = std::cos(s.theta[k]);
    const double sn = std::sin(s.theta[k]);
    x += Vec2{invn * c, invn * sn};
    v += Vec2{-invn * s.omega[k] * sn, invn * s.omega[k] * c};
    f.positions[k + 1] = x;
    f.velocities[k + 1] = v;
  }
  return f;
}

struct Energy {
  double kinetic = 0.0;
  double potential = 0.0;
  double total() const { return kinetic + potential; }
};

/// Unit point masses at the n moving joints:
/// K = (1/2) sum |v_i|^2, U = g sum y_i, i = 1..n.
inline Energy energy(const ChainState& s) {
  const CartesianFrame f = reconstruct(s);
  Energy e;
  for (int i = 1; i <= s.n; ++i) {
    e.kinetic += 0.5 * norm2(f.velocities[i]);
    e.potential += s.g * f.positions[i].y;
  }
  return e;
}

/// L = sum x_i x v_i about the pinned end (scalar in the plane).
inline double angular_momentum(const ChainState& s) {
  const CartesianFrame f = reconstruct(s);
  double L = 0.0;
  for (int i = 1; i <= s.n; ++i) L += cross(f.positions[i], f.velocities[i]);
  return L;
}

/// max_i | |x_i - x_{i-1}|^2 - 1/n^2 |: how far the frame drifted off the
/// rigid-link constraint surface. n is inferred from the frame size.
inline double constraint_residual(const CartesianFrame& f) {
  require(f.positions.size() == f.velocities.size(),
          "positions/velocities size mismatch");
  require(f.positions.size() >= 2, "frame needs at least one link");
  const int n = static_cast<int>(f.positions.size()) - 1;
  const double target = 1.0 / (static_cast<double>(n) * n);
  double worst = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double len2 = norm2(f.positions[i] - f.positions[i - 1]);
    worst = std::max(worst, std::fabs(len2 - target));
  }
  return worst;
}

}  // namespace whipchain
