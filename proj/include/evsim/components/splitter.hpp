#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "evsim/core/rng.hpp"
#include "evsim/messengers/messages.hpp"

namespace evsim {

// Beam splitter as an adaptive processor. Two last-message registers
// (one per input channel) plus an input-ratio estimate v with
// v0 + v1 = 1, updated as v' = gamma*v + (1-gamma)*q where q marks the
// channel that just fired. The deterministic stage combines registers
// and v into a 4-amplitude vector whose squared halves drive the
// stochastic choice of output channel.
//
// photon_5050 and neutron share the mixing matrix
//   ( sqrt(T)   i sqrt(R) )
//   ( i sqrt(R)  sqrt(T)  )
// applied per spinor component (photon_5050 is the R = 1/2 case); the
// polarizing kind routes component 0 versus component 1 instead of
// channel versus channel. Scalar photon messages ride in component 0 as
// the complex number c0 + i c1.
enum class SplitterKind { photon_5050, polarizing, neutron };

class BeamSplitter {
 public:
  BeamSplitter(SplitterKind kind, double gamma, double reflectivity,
               RngStream& init_rng)
      : kind_(kind), gamma_(gamma), refl_(reflectivity) {
    if (refl_ < 0.0 || refl_ > 1.0) {
      throw std::invalid_argument("BeamSplitter: reflectivity outside [0,1]");
    }
    if (kind_ == SplitterKind::photon_5050) refl_ = 0.5;
    v_ = Eigen::Vector2d(init_rng.next_double(), 0.0);
    v_[1] = 1.0 - v_[0];
    for (auto& reg : reg_) {
      const double a = init_rng.next_double(0.0, 2.0 * M_PI);
      const double b = init_rng.next_double(0.0, 2.0 * M_PI);
      const double th = init_rng.next_double(0.0, M_PI);
      reg = SpinorMessage(std::polar(std::cos(th / 2), a),
                          std::polar(std::sin(th / 2), b));
    }
  }

  struct Output {
    int channel;
    SpinorMessage message;
  };

  // One event: store the message in the input channel's register,
  // update v, then route stochastically with the draw r.
  Output process(int input_channel, const SpinorMessage& msg, double r) {
    if (input_channel != 0 && input_channel != 1) {
      throw std::invalid_argument("BeamSplitter: bad channel");
    }
    reg_[input_channel] = msg;
    Eigen::Vector2d q = Eigen::Vector2d::Zero();
    q[input_channel] = 1.0;
    v_ = gamma_ * v_ + (1.0 - gamma_) * q;

    const double w0 = std::sqrt(v_[0]);
    const double w1 = std::sqrt(v_[1]);
    const std::complex<double> I(0.0, 1.0);
    // pair_a is the branch selected when its squared norm exceeds r;
    // it leaves through channel 0 for the plain photon splitter and
    // through channel 1 for the polarizing and neutron conventions.
    SpinorMessage pair_a, pair_b;
    if (kind_ == SplitterKind::polarizing) {
      pair_a = SpinorMessage(w0 * reg_[0][0], I * w1 * reg_[1][1]);
      pair_b = SpinorMessage(w1 * reg_[1][0], I * w0 * reg_[0][1]);
    } else {
      const double t = std::sqrt(1.0 - refl_);
      const double rr = std::sqrt(refl_);
      pair_a = t * w0 * reg_[0] + I * rr * w1 * reg_[1];
      pair_b = I * rr * w0 * reg_[0] + t * w1 * reg_[1];
    }
    const bool take_a = pair_a.squaredNorm() > r;
    SpinorMessage out = take_a ? pair_a : pair_b;
    const double n = out.norm();
    if (n == 0.0) {
      // probability-0 branch hit with exactly zero amplitude
      out = take_a ? pair_b : pair_a;
    }
    out.normalize();
    int channel = take_a ? 0 : 1;
    if (kind_ != SplitterKind::photon_5050) channel = 1 - channel;
    return {channel, out};
  }

  const Eigen::Vector2d& ratio() const { return v_; }
  const SpinorMessage& register_for(int ch) const { return reg_[ch]; }

 private:
  SplitterKind kind_;
  double gamma_;
  double refl_;
  Eigen::Vector2d v_;
  SpinorMessage reg_[2];
};

}  // namespace evsim
