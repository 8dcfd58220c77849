#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "evsim/core/rng.hpp"
#include "evsim/dlm/dlm.hpp"

namespace evsim {

// Adaptive threshold detector: exponentially averages incoming unit
// vectors and clicks with probability equal to the squared norm of the
// average. Identical messages drive the norm to 1, so a steady beam is
// detected with near-unit efficiency after the transient.
struct AdaptiveDetector {
  AverageDlmState state;
  long long clicks = 0;
  long long arrivals = 0;
};

inline int adaptive_detect(AdaptiveDetector& det, const Eigen::Vector2d& msg,
                           double r) {
  det.state = average_dlm_update(det.state, msg);
  ++det.arrivals;
  const int w = det.state.v.squaredNorm() > r ? 1 : 0;
  det.clicks += w;
  return w;
}

// Ideal counter used by the interferometer experiments.
struct CounterDetector {
  long long clicks = 0;
  void detect() { ++clicks; }
};

// Semi-circular screen of adaptive detectors with 1 degree spacing,
// positions theta_k = -90..+90 degrees, windows [theta_k - 0.5 deg,
// theta_k + 0.5 deg).
class DetectorScreen {
 public:
  static constexpr int kCount = 181;

  DetectorScreen(double gamma, std::uint64_t seed) {
    detectors_.reserve(kCount);
    rngs_.reserve(kCount);
    for (int k = 0; k < kCount; ++k) {
      rngs_.emplace_back(seed, "screen/detector/" + std::to_string(k));
      // fresh detectors start with a zero average: the click rate
      // builds up as the beam trains them
      AdaptiveDetector det;
      det.state.gamma = gamma;
      detectors_.push_back(det);
    }
  }

  static int route(double theta) {
    const double deg = theta * 180.0 / M_PI;
    if (deg < -90.0 || deg > 90.0) {
      throw std::domain_error("DetectorScreen: angle outside [-90, 90] deg");
    }
    const int idx = static_cast<int>(std::floor(deg + 0.5)) + 90;
    return std::min(idx, kCount - 1);
  }

  // Routes the hit and runs the adaptive detection step; the other 180
  // detectors are untouched.
  int accept(double theta, const Eigen::Vector2d& msg) {
    const int k = route(theta);
    return adaptive_detect(detectors_[k], msg, rngs_[k].next_double()) ? k : -1;
  }

  const AdaptiveDetector& detector(int k) const { return detectors_.at(k); }
  static double angle_deg(int k) { return k - 90.0; }

 private:
  std::vector<AdaptiveDetector> detectors_;
  std::vector<RngStream> rngs_;
};

}  // namespace evsim
