#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "evsim/messengers/messages.hpp"

// Closed-form wave/quantum predictions used as comparison targets,
// plus exact state-vector propagation for the neutron networks.
namespace evsim::oracle {

using Complex = std::complex<double>;

// Malus law: (ordinary, extraordinary) intensity fractions.
inline std::pair<double, double> malus_intensity(double psi, double phi) {
  const double s = std::sin(psi - phi);
  const double c = std::cos(psi - phi);
  return {s * s, c * c};
}

// Fraunhofer two-slit intensity: sinc^2 envelope of one slit of width a
// times the interference factor at separation d, normalized to peak 1.
// q is the wavenumber.
inline double two_beam_intensity(double theta, double q, double a, double d) {
  if (!(a > 0.0)) throw std::domain_error("two_beam_intensity: a must be > 0");
  const double x = 0.5 * q * a * std::sin(theta);
  double envelope;
  if (std::abs(x) < 1e-6) {
    envelope = 1.0 - x * x / 3.0;  // sin^2(x)/x^2 series
  } else {
    envelope = std::sin(x) * std::sin(x) / (x * x);
  }
  const double f = std::cos(0.5 * q * d * std::sin(theta));
  return envelope * f * f;
}

// Mach-Zehnder output probabilities for input (1,0).
inline std::pair<double, double> mzi_probabilities(double phi0, double phi1) {
  const double s = std::sin((phi0 - phi1) / 2);
  const double c = std::cos((phi0 - phi1) / 2);
  return {s * s, c * c};
}

// Full 2x2 interferometer matrix, second splitter x phases x first
// splitter.
inline Eigen::Matrix2cd mzi_matrix(double phi0, double phi1) {
  Eigen::Matrix2cd bs;
  const Complex I(0, 1);
  bs << 1.0 / std::sqrt(2.0), I / std::sqrt(2.0), I / std::sqrt(2.0),
      1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd ph = Eigen::Matrix2cd::Zero();
  ph(0, 0) = std::exp(Complex(0, phi0));
  ph(1, 1) = std::exp(Complex(0, phi1));
  return bs * ph * bs;
}

// Triple-Laue interferometer H- and O-beam probabilities; the uncounted
// mirror-plate exits carry the rest.
inline std::pair<double, double> neutron_mzi_probabilities(double chi,
                                                           double R) {
  if (R < 0.0 || R > 1.0) {
    throw std::domain_error("neutron_mzi_probabilities: R outside [0,1]");
  }
  const double T = 1.0 - R;
  const double p_H = R * (T * T + R * R - 2.0 * R * T * std::cos(chi));
  const double p_O = 2.0 * R * R * T * (1.0 + std::cos(chi));
  return {p_H, p_O};
}

// 8-dimensional neutron state: amplitudes (path 0..3) x (spin up,down).
using StateVector8 = Eigen::Matrix<Complex, 8, 1>;

// A block operation acts with a 2x2 unitary either on a pair of paths
// (per spin component) or on the spin of one path.
struct BlockOp {
  enum class Target { paths, spin_of_path };
  Target target;
  int a = 0;  // paths: first path index; spin_of_path: the path
  int b = 0;  // paths: second path index
  Eigen::Matrix2cd u;
};

// Splitter with real t = sqrt(1-R), r = sqrt(R): transmission keeps the
// path, reflection crosses with factor i r.
inline BlockOp splitter_block(int path_a, int path_b, double R) {
  const double t = std::sqrt(1.0 - R);
  const double r = std::sqrt(R);
  BlockOp op{BlockOp::Target::paths, path_a, path_b, {}};
  op.u << Complex(t, 0), Complex(0, r), Complex(0, r), Complex(t, 0);
  return op;
}

// Mirror-plate variant: the beam staying on its path is the reflected
// one (factor i r), the transmitted part crosses to the other slot.
inline BlockOp mirror_block(int path_a, int path_b, double R) {
  const double t = std::sqrt(1.0 - R);
  const double r = std::sqrt(R);
  BlockOp op{BlockOp::Target::paths, path_a, path_b, {}};
  op.u << Complex(0, r), Complex(t, 0), Complex(t, 0), Complex(0, r);
  return op;
}

inline BlockOp phase_block(int path, double chi) {
  BlockOp op{BlockOp::Target::paths, path, path, {}};
  const Complex e = std::exp(Complex(0, chi));
  op.u << e, Complex(0), Complex(0), e;
  return op;
}

inline BlockOp spin_rotation_block(int path, PauliAxis axis, double angle) {
  BlockOp op{BlockOp::Target::spin_of_path, path, path, {}};
  SpinorMessage e0 = su2_rotate(SpinorMessage(1.0, 0.0), axis, angle);
  SpinorMessage e1 = su2_rotate(SpinorMessage(0.0, 1.0), axis, angle);
  op.u << e0[0], e1[0], e0[1], e1[1];
  return op;
}

inline StateVector8 propagate_neutron_state(const std::vector<BlockOp>& network,
                                            StateVector8 psi) {
  for (const auto& op : network) {
    if (!(op.u * op.u.adjoint()).isIdentity(1e-9)) {
      throw std::invalid_argument("propagate_neutron_state: non-unitary block");
    }
    if (op.target == BlockOp::Target::paths) {
      for (int spin = 0; spin < 2; ++spin) {
        const int ia = 2 * op.a + spin;
        const int ib = 2 * op.b + spin;
        if (op.a == op.b) {
          psi[ia] = op.u(0, 0) * psi[ia];
        } else {
          const Complex pa = psi[ia];
          const Complex pb = psi[ib];
          psi[ia] = op.u(0, 0) * pa + op.u(0, 1) * pb;
          psi[ib] = op.u(1, 0) * pa + op.u(1, 1) * pb;
        }
      }
    } else {
      const int i = 2 * op.a;
      const Complex up = psi[i];
      const Complex dn = psi[i + 1];
      psi[i] = op.u(0, 0) * up + op.u(0, 1) * dn;
      psi[i + 1] = op.u(1, 0) * up + op.u(1, 1) * dn;
    }
  }
  return psi;
}

// Interferometer network over paths {1 = arm with the phase shifter,
// 2 = other arm, 3 and 0 = uncounted mirror-plate exits}. Input enters
// on path 1; after the last block the O-beam reads on path 1 and the
// H-beam on path 2.
inline std::vector<BlockOp> neutron_mzi_network(double chi, double R) {
  return {
      splitter_block(1, 2, R),  // entry splitter: transmit to 1, reflect to 2
      mirror_block(1, 3, R),    // mirror plate of arm 1, loss to path 3
      mirror_block(2, 0, R),    // mirror plate of arm 2, loss to path 0
      phase_block(1, chi),      // phase shifter
      mirror_block(1, 2, R),    // exit splitter: O on path 1, H on path 2
  };
}

inline std::pair<double, double> neutron_mzi_from_network(double chi,
                                                          double R) {
  StateVector8 psi = StateVector8::Zero();
  psi[2] = 1.0;  // path 1, spin up
  psi = propagate_neutron_state(neutron_mzi_network(chi, R), psi);
  const double p_O = std::norm(psi[2]) + std::norm(psi[3]);
  const double p_H = std::norm(psi[4]) + std::norm(psi[5]);
  return {p_H, p_O};
}

// Bell-test network: the interferometer above plus opposite pi/2 spin
// turns about y on the two arms and an alpha turn about x on the O-beam.
inline std::vector<BlockOp> neutron_bell_network(double alpha, double chi,
                                                 double R) {
  return {
      splitter_block(1, 2, R),
      spin_rotation_block(1, PauliAxis::y, -M_PI / 2),
      spin_rotation_block(2, PauliAxis::y, +M_PI / 2),
      mirror_block(1, 3, R),
      mirror_block(2, 0, R),
      phase_block(1, chi),
      mirror_block(1, 2, R),
      spin_rotation_block(1, PauliAxis::x, alpha),
  };
}

// Probability that a neutron leaves in the O-beam with spin up:
// T R^2 (1 + cos(alpha + chi)).
inline double neutron_bell_up_probability(double alpha, double chi, double R) {
  StateVector8 psi = StateVector8::Zero();
  psi[2] = 1.0;
  psi = propagate_neutron_state(neutron_bell_network(alpha, chi, R), psi);
  return std::norm(psi[2]);
}

// Photon singlet correlations: single-particle averages vanish, the
// pair correlation is -cos 2(a1-a2).
inline std::tuple<double, double, double> singlet_correlation(double a1,
                                                              double a2) {
  return {0.0, 0.0, -std::cos(2.0 * (a1 - a2))};
}

// Spin-1/2 singlet analogue for unit setting vectors a1, a2.
inline double singlet_correlation_spin_half(double a1, double a2) {
  return -std::cos(a1 - a2);
}

// Spin-path correlation of the neutron Bell test, independent of R.
inline double neutron_bell_E(double alpha, double chi) {
  return std::cos(alpha + chi);
}

}  // namespace evsim::oracle
