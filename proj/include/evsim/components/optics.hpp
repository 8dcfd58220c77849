#pragma once

#include <cmath>
#include <complex>

#include "evsim/messengers/messages.hpp"

namespace evsim {

// Half-wave plate with optical axis at theta: reflects the polarization
// about the axis and retards by -pi/2.
template <typename T>
SpinorMessageT<T> hwp_transform(const SpinorMessageT<T>& u, T theta) {
  const T c = std::cos(2 * theta);
  const T s = std::sin(2 * theta);
  const std::complex<T> mi(0, -1);
  return {mi * (u[0] * c + u[1] * s), mi * (u[0] * s - u[1] * c)};
}

// Electro-optic modulator: when active, acts as a half-wave plate with
// the axis at rotation/2, turning the polarization by `rotation`. The
// interferometer-closing voltage corresponds to rotation = pi/4.
template <typename T>
SpinorMessageT<T> eom_transform(const SpinorMessageT<T>& u, bool active,
                                T rotation = T(M_PI) / 4) {
  return active ? hwp_transform(u, rotation / 2) : u;
}

// Phase shifter: plain global phase, no adaptive state.
template <typename T>
SpinorMessageT<T> phase_shift(const SpinorMessageT<T>& u, T chi) {
  return advance_phase(u, chi);
}

// Spin analyzer: passes the particle to the detector with probability
// equal to the squared spin-up amplitude.
template <typename T>
bool spin_analyzer_select(const SpinorMessageT<T>& m, T r) {
  return std::norm(m[0]) > r;
}

// Malus-law polarizer of the simplified EPRB station: outcome +1 with
// probability cos^2 of the analyzed angle.
inline int malus_pbs_sample(double xi_prime, double r) {
  const double c = std::cos(xi_prime);
  return r <= c * c ? +1 : -1;
}

// Detection delay drawn uniformly from [0, T0 sin^4(2 xi')].
inline double time_tag_sample(double xi_prime, double T0, double r) {
  const double s = std::sin(2.0 * xi_prime);
  return T0 * s * s * s * s * r;
}

}  // namespace evsim
