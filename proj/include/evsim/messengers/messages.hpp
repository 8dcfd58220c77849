#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>

#include "evsim/core/rng.hpp"

namespace evsim {

// Photon phase message: unit vector (cos 2pi f t, sin 2pi f t). Handled
// by beam splitters as the complex number c0 + i c1.
template <typename T = double>
using ScalarMessageT = Eigen::Matrix<T, 2, 1>;
using ScalarMessage = ScalarMessageT<double>;

// Polarized photon or neutron spin message: unit complex 2-spinor.
template <typename T = double>
using SpinorMessageT = Eigen::Matrix<std::complex<T>, 2, 1>;
using SpinorMessage = SpinorMessageT<double>;

template <typename T>
std::complex<T> as_complex(const ScalarMessageT<T>& c) {
  return {c[0], c[1]};
}

template <typename T>
ScalarMessageT<T> from_complex(std::complex<T> z) {
  return {z.real(), z.imag()};
}

inline ScalarMessage scalar_message(double phase) {
  return {std::cos(phase), std::sin(phase)};
}

// One particle in flight. path_label is set once by the input beam
// splitter and stays fixed until detection.
struct Messenger {
  SpinorMessage message = SpinorMessage(1.0, 0.0);
  std::optional<int> path_label;
  double tof = 0.0;
};

// Free-flight phase accumulation: both components pick up e^{i phi}.
template <typename T>
SpinorMessageT<T> advance_phase(const SpinorMessageT<T>& m, T phi) {
  return std::exp(std::complex<T>(0, phi)) * m;
}

template <typename T>
ScalarMessageT<T> advance_phase(const ScalarMessageT<T>& c, T phi) {
  return from_complex(std::exp(std::complex<T>(0, phi)) * as_complex(c));
}

enum class PauliAxis { x, y, z };

// Spin rotation e^{+i(angle/2) sigma_axis}. Covers the mu-metal plates
// (pi/2 about y), the spin rotator (alpha about x) and the spin flipper
// (pi about x).
template <typename T>
SpinorMessageT<T> su2_rotate(const SpinorMessageT<T>& m, PauliAxis axis,
                             T angle) {
  const T c = std::cos(angle / 2);
  const T s = std::sin(angle / 2);
  const std::complex<T> I(0, 1);
  Eigen::Matrix<std::complex<T>, 2, 2> rot;
  switch (axis) {
    case PauliAxis::x:
      rot << c, I * s, I * s, c;
      break;
    case PauliAxis::y:
      rot << c, s, -s, c;
      break;
    case PauliAxis::z:
      rot << std::exp(I * (angle / 2)), std::complex<T>(0),
          std::complex<T>(0), std::exp(-I * (angle / 2));
      break;
  }
  return rot * m;
}

// Two-beam source geometry. Sources are slits of width a centred at
// +d/2 (source 1) and -d/2 (source 2).
enum class SourceMode { random_source, fixed_source, alternating };

struct TwoBeamSource {
  double a;
  double d;
  SourceMode mode = SourceMode::random_source;
  int fixed_index = 1;      // fixed_source: which slit (1 = upper)
  int group_size = 1;       // alternating: emissions per slit before switching
  long long emitted = 0;
};

struct Emission {
  double y;
  double beta;
  int source;  // 1 = upper slit, 2 = lower slit
};

inline Emission two_beam_emit(TwoBeamSource& src, RngStream& rng) {
  if (!(src.a > 0.0 && src.d > src.a)) {
    throw std::invalid_argument("two_beam_emit: need 0 < a < d");
  }
  int source;
  switch (src.mode) {
    case SourceMode::random_source:
      source = rng.next_double() < 0.5 ? 1 : 2;
      break;
    case SourceMode::fixed_source:
      source = src.fixed_index;
      break;
    case SourceMode::alternating:
      source = ((src.emitted / src.group_size) % 2 == 0) ? 1 : 2;
      break;
  }
  ++src.emitted;
  const double center = (source == 1 ? +0.5 : -0.5) * src.d;
  const double y = center + rng.next_double(-0.5 * src.a, 0.5 * src.a);
  const double beta = rng.next_double(-0.5 * M_PI, 0.5 * M_PI);
  return {y, beta, source};
}

// Maps an emission to the screen hit angle and time of flight. Lengths
// are in units of c/f, times in units of 1/f.
struct ScreenHit {
  double theta;
  double t;
};

inline ScreenHit two_beam_geometry(double y, double beta, double X) {
  if (!(std::abs(y) < X)) {
    throw std::domain_error("two_beam_geometry: |y| must be < X");
  }
  const double cb = std::cos(beta);
  const double sin_theta =
      (y * cb * cb + std::sin(beta) * std::sqrt(X * X - y * y * cb * cb)) / X;
  const double theta = std::asin(sin_theta);
  const double t = std::sqrt(X * X - 2.0 * y * X * sin_theta + y * y);
  return {theta, t};
}

}  // namespace evsim
