#include <doctest.h>

#include <cmath>
#include <complex>

#include "evsim/messengers/messages.hpp"

using namespace evsim;

namespace {
bool close(const SpinorMessage& a, const SpinorMessage& b, double tol = 1e-12) {
  return (a - b).norm() < tol;
}
}  // namespace

TEST_CASE("scalar message is a unit phase vector") {
  for (double phase : {0.0, 1.0, 2.5, -0.7}) {
    const ScalarMessage m = scalar_message(phase);
    CHECK(std::abs(m.norm() - 1.0) < 1e-12);
  }
  CHECK(scalar_message(0.0)[0] == 1.0);
  CHECK(scalar_message(0.0)[1] == 0.0);
}

TEST_CASE("complex view round trip") {
  const ScalarMessage m = scalar_message(0.8);
  CHECK((from_complex(as_complex(m)) - m).norm() < 1e-15);
}

TEST_CASE("phase advance identities") {
  const ScalarMessage m = scalar_message(0.3);
  CHECK((advance_phase(m, 0.0) - m).norm() < 1e-15);
  CHECK((advance_phase(m, 2.0 * M_PI) - m).norm() < 1e-12);
  const ScalarMessage q = advance_phase(scalar_message(0.0), M_PI / 2);
  CHECK(q[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(q[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("phase advance preserves spinor norm") {
  RngStream rng(9, "phasenorm");
  for (int i = 0; i < 1000; ++i) {
    SpinorMessage m(std::polar(std::cos(rng.next_double(0.0, M_PI / 2)),
                               rng.next_double(0.0, 2 * M_PI)),
                    0.0);
    m[1] = std::polar(std::sqrt(std::max(0.0, 1.0 - std::norm(m[0]))),
                      rng.next_double(0.0, 2 * M_PI));
    const SpinorMessage w = advance_phase(m, rng.next_double(0.0, 2 * M_PI));
    CHECK(std::abs(w.norm() - m.norm()) < 1e-12);
  }
}

TEST_CASE("spin rotation basics") {
  const SpinorMessage up(1.0, 0.0);
  CHECK(close(su2_rotate(up, PauliAxis::x, 0.0), up));
  // e^{i pi sigma_x / 2} = i sigma_x
  const SpinorMessage fx = su2_rotate(up, PauliAxis::x, M_PI);
  CHECK(std::abs(fx[0]) < 1e-12);
  CHECK(std::abs(fx[1] - std::complex<double>(0.0, 1.0)) < 1e-12);
  // rotation about y keeps everything real for a real input
  const SpinorMessage fy = su2_rotate(up, PauliAxis::y, M_PI / 2);
  CHECK(fy[0].real() == doctest::Approx(std::cos(M_PI / 4)).epsilon(1e-12));
  CHECK(fy[1].real() == doctest::Approx(-std::sin(M_PI / 4)).epsilon(1e-12));
  CHECK(std::abs(fy[0].imag()) < 1e-12);
  // z rotation only changes the component phases
  const SpinorMessage fz = su2_rotate(SpinorMessage(0.6, 0.8), PauliAxis::z, 1.1);
  CHECK(std::abs(fz[0]) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(std::abs(fz[1]) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("spin rotation is unitary and invertible") {
  RngStream rng(13, "su2");
  for (int i = 0; i < 300; ++i) {
    const double th = rng.next_double(0.0, M_PI);
    SpinorMessage m(std::polar(std::cos(th / 2), rng.next_double(0.0, 2 * M_PI)),
                    std::polar(std::sin(th / 2), rng.next_double(0.0, 2 * M_PI)));
    const double angle = rng.next_double(-2 * M_PI, 2 * M_PI);
    for (PauliAxis axis : {PauliAxis::x, PauliAxis::y, PauliAxis::z}) {
      const SpinorMessage w = su2_rotate(m, axis, angle);
      CHECK(std::abs(w.norm() - 1.0) < 1e-12);
      CHECK(close(su2_rotate(w, axis, -angle), m, 1e-12));
    }
  }
}

TEST_CASE("two-beam source masks and schedules") {
  RngStream rng(21, "source");
  TwoBeamSource fixed{1.0, 5.0, SourceMode::fixed_source, 1};
  for (int i = 0; i < 200; ++i) {
    const Emission e = two_beam_emit(fixed, rng);
    CHECK(e.source == 1);
    CHECK(e.y >= 2.0);
    CHECK(e.y <= 3.0);
  }
  TwoBeamSource alt{1.0, 5.0, SourceMode::alternating, 1, 3};
  int expected[6] = {1, 1, 1, 2, 2, 2};
  for (int i = 0; i < 6; ++i) CHECK(two_beam_emit(alt, rng).source == expected[i]);

  TwoBeamSource rnd{1.0, 5.0, SourceMode::random_source};
  int upper = 0;
  const int n = 100'000;
  for (int i = 0; i < n; ++i) upper += two_beam_emit(rnd, rng).source == 1;
  CHECK(std::abs(static_cast<double>(upper) / n - 0.5) < 0.01);

  TwoBeamSource bad{2.0, 1.0};
  CHECK_THROWS_AS(two_beam_emit(bad, rng), std::invalid_argument);
}

TEST_CASE("screen geometry closed forms") {
  // on-axis source: angle equals emission direction, flight path X
  const ScreenHit on_axis = two_beam_geometry(0.0, M_PI / 6, 75.0);
  CHECK(on_axis.theta == doctest::Approx(M_PI / 6).epsilon(1e-12));
  CHECK(on_axis.t == doctest::Approx(75.0).epsilon(1e-12));
  // normal emission from y: sin(theta) = y/X
  const double y = 2.5, X = 75.0;
  const ScreenHit normal = two_beam_geometry(y, 0.0, X);
  CHECK(std::sin(normal.theta) == doctest::Approx(y / X).epsilon(1e-12));
  CHECK(normal.t == doctest::Approx(std::sqrt(X * X - y * y)).epsilon(1e-12));
  // mirror symmetry
  const ScreenHit a = two_beam_geometry(1.7, 0.4, X);
  const ScreenHit b = two_beam_geometry(-1.7, -0.4, X);
  CHECK(a.theta == doctest::Approx(-b.theta).epsilon(1e-12));
  CHECK(a.t == doctest::Approx(b.t).epsilon(1e-12));
  CHECK_THROWS_AS(two_beam_geometry(80.0, 0.0, X), std::domain_error);
}

TEST_CASE("screen geometry ranges") {
  RngStream rng(23, "geom");
  const double X = 75.0;
  for (int i = 0; i < 5000; ++i) {
    const double y = rng.next_double(-3.0, 3.0);
    const double beta = rng.next_double(-M_PI / 2 + 1e-6, M_PI / 2 - 1e-6);
    const ScreenHit hit = two_beam_geometry(y, beta, X);
    CHECK(hit.theta > -M_PI / 2);
    CHECK(hit.theta < M_PI / 2);
    CHECK(hit.t >= X - std::abs(y) - 1e-9);
    CHECK(hit.t <= X + std::abs(y) + 1e-9);
  }
}
