#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "evsim/core/rng.hpp"

namespace evsim {

// Scalar learning machine. Keeps a running estimate v of the average of
// its inputs and emits one binary event per input. The two candidate
// updates are gamma*v (event -1) and gamma*v + 1-gamma (event +1); the
// one closer to the input wins, ties going to +1.
struct ScalarDlmState {
  double v = 0.5;
  double gamma = 0.99;
};

inline std::pair<ScalarDlmState, int> scalar_dlm_step(ScalarDlmState s,
                                                      double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::domain_error("scalar_dlm_step: input outside [0,1]");
  }
  const double lo = s.gamma * s.v;
  const double hi = lo + (1.0 - s.gamma);
  int w;
  if (std::abs(hi - u) <= std::abs(lo - u)) {
    s.v = hi;
    w = +1;
  } else {
    s.v = lo;
    w = -1;
  }
  return {s, w};
}

// Probabilistic reference processor: click +1 with probability p.
inline int born_sample(double p, double r) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("born_sample: p outside [0,1]");
  }
  return r < p ? +1 : -1;
}

// Direction learner behind the Malus-law polarizer model. The internal
// unit vector chases the input direction; the emitted bit says which
// component got reinforced, and its stationary frequencies follow
// cos^2/sin^2 of the input angle.
struct DirectionDlmState {
  double v0 = 1.0;
  double v1 = 0.0;
  double gamma = 0.99;
};

inline std::pair<DirectionDlmState, int> direction_dlm_step(
    DirectionDlmState s, const Eigen::Vector2d& u) {
  if (std::abs(u.norm() - 1.0) > 1e-9) {
    throw std::domain_error("direction_dlm_step: input not unit length");
  }
  const double g2 = s.gamma * s.gamma;
  const double s0 = std::sqrt(std::clamp(1.0 + g2 * (s.v0 * s.v0 - 1.0), 0.0, 1.0));
  const double s1 = std::sqrt(std::clamp(1.0 + g2 * (s.v1 * s.v1 - 1.0), 0.0, 1.0));
  // Candidate order fixed: (w=0,+), (w=0,-), (w=1,+), (w=1,-).
  const double c0[4] = {s0, -s0, s.gamma * s.v0, s.gamma * s.v0};
  const double c1[4] = {s.gamma * s.v1, s.gamma * s.v1, s1, -s1};
  const int wc[4] = {0, 0, 1, 1};
  int best = 0;
  double best_cost = -(c0[0] * u[0] + c1[0] * u[1]);
  for (int k = 1; k < 4; ++k) {
    const double cost = -(c0[k] * u[0] + c1[k] * u[1]);
    if (cost < best_cost) {
      best_cost = cost;
      best = k;
    }
  }
  s.v0 = c0[best];
  s.v1 = c1[best];
  return {s, wc[best]};
}

// Exponential moving average of unit vectors; the core of the adaptive
// threshold detector.
struct AverageDlmState {
  Eigen::Vector2d v = Eigen::Vector2d::Zero();
  double gamma = 0.99;
};

inline AverageDlmState average_dlm_update(AverageDlmState s,
                                          const Eigen::Vector2d& u) {
  s.v = s.gamma * s.v + (1.0 - s.gamma) * u;
  return s;
}

inline ScalarDlmState random_scalar_state(double gamma, RngStream& rng) {
  return {rng.next_double(), gamma};
}

inline DirectionDlmState random_direction_state(double gamma, RngStream& rng) {
  const double a = rng.next_double(0.0, 2.0 * M_PI);
  return {std::cos(a), std::sin(a), gamma};
}

inline AverageDlmState random_average_state(double gamma, RngStream& rng) {
  const double a = rng.next_double(0.0, 2.0 * M_PI);
  return {Eigen::Vector2d(std::cos(a), std::sin(a)), gamma};
}

}  // namespace evsim
