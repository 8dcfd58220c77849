#include <doctest.h>

#include <cmath>
#include <complex>

#include "evsim/components/optics.hpp"
#include "evsim/components/splitter.hpp"

using namespace evsim;

namespace {
const std::complex<double> I(0.0, 1.0);

SpinorMessage random_unit(RngStream& rng) {
  const double th = rng.next_double(0.0, M_PI);
  return {std::polar(std::cos(th / 2), rng.next_double(0.0, 2 * M_PI)),
          std::polar(std::sin(th / 2), rng.next_double(0.0, 2 * M_PI))};
}
}  // namespace

TEST_CASE("splitter validates its arguments") {
  RngStream init(1, "bs/init");
  CHECK_THROWS_AS(BeamSplitter(SplitterKind::neutron, 0.98, 1.5, init),
                  std::invalid_argument);
  BeamSplitter bs(SplitterKind::photon_5050, 0.98, 0.5, init);
  CHECK_THROWS_AS(bs.process(2, SpinorMessage(1.0, 0.0), 0.5),
                  std::invalid_argument);
}

TEST_CASE("splitter outputs stay unit norm") {
  RngStream init(2, "bs/init");
  RngStream rng(2, "bs/feed");
  for (SplitterKind kind : {SplitterKind::photon_5050, SplitterKind::polarizing,
                            SplitterKind::neutron}) {
    BeamSplitter bs(kind, 0.98, 0.3, init);
    for (int i = 0; i < 3000; ++i) {
      const int ch = rng.next_double() < 0.5 ? 0 : 1;
      const auto out = bs.process(ch, random_unit(rng), rng.next_double());
      CHECK(std::abs(out.message.norm() - 1.0) < 1e-9);
      CHECK((out.channel == 0 || out.channel == 1));
    }
  }
}

TEST_CASE("ratio estimate tracks channel frequencies") {
  RngStream init(3, "bs/init");
  RngStream rng(3, "bs/feed");
  BeamSplitter bs(SplitterKind::photon_5050, 0.99, 0.5, init);
  for (int i = 0; i < 3000; ++i) {
    // 70/30 traffic split
    const int ch = rng.next_double() < 0.7 ? 0 : 1;
    bs.process(ch, random_unit(rng), rng.next_double());
    CHECK(std::abs(bs.ratio().sum() - 1.0) < 1e-12);
  }
  CHECK(std::abs(bs.ratio()[0] - 0.7) < 0.1);
}

TEST_CASE("stationary 50/50 splitter with single-channel traffic") {
  RngStream init(4, "bs/init");
  RngStream rng(4, "bs/feed");
  BeamSplitter bs(SplitterKind::photon_5050, 0.98, 0.5, init);
  const SpinorMessage in(1.0, 0.0);  // phase-zero photon on channel 0
  for (int i = 0; i < 2000; ++i) bs.process(0, in, rng.next_double());
  CHECK(bs.ratio()[0] == doctest::Approx(1.0).epsilon(1e-9));
  long long ch0 = 0, n = 20'000;
  for (long long i = 0; i < n; ++i) {
    const auto out = bs.process(0, in, rng.next_double());
    if (out.channel == 0) {
      ++ch0;
      CHECK(std::abs(out.message[0] - 1.0) < 1e-9);  // transmitted: phase kept
    } else {
      CHECK(std::abs(out.message[0] - I) < 1e-9);  // reflected: phase +pi/2
    }
  }
  CHECK(std::abs(static_cast<double>(ch0) / n - 0.5) < 0.02);
}

TEST_CASE("neutron splitter at zero reflectivity transmits everything") {
  RngStream init(5, "bs/init");
  RngStream rng(5, "bs/feed");
  BeamSplitter bs(SplitterKind::neutron, 0.98, 0.0, init);
  const SpinorMessage in(0.8, 0.6);
  for (int i = 0; i < 500; ++i) bs.process(0, in, rng.next_double());
  for (int i = 0; i < 2000; ++i) {
    const auto out = bs.process(0, in, rng.next_double());
    CHECK(out.channel == 1);  // transmission exit of the crossed convention
    CHECK((out.message - in).norm() < 1e-6);
  }
}

TEST_CASE("polarizing splitter separates the components") {
  RngStream init(6, "pbs/init");
  RngStream rng(6, "pbs/feed");
  BeamSplitter pbs(SplitterKind::polarizing, 0.98, 0.5, init);
  const SpinorMessage s_pol(1.0, 0.0);
  // steady S traffic on channel 0 leaves through channel 1 as pure S
  for (int i = 0; i < 500; ++i) pbs.process(0, s_pol, rng.next_double());
  for (int i = 0; i < 1000; ++i) {
    const auto out = pbs.process(0, s_pol, rng.next_double());
    CHECK(out.channel == 1);
    CHECK(std::abs(std::abs(out.message[0]) - 1.0) < 1e-3);
  }
}

TEST_CASE("half-wave plate identities") {
  const SpinorMessage u(std::complex<double>(0.6, 0.0),
                        std::complex<double>(0.0, 0.8));
  // axis at 45 degrees swaps the components and retards by -pi/2
  const SpinorMessage swapped = hwp_transform(u, M_PI / 4);
  CHECK(std::abs(swapped[0] - (-I) * u[1]) < 1e-12);
  CHECK(std::abs(swapped[1] - (-I) * u[0]) < 1e-12);
  // axis at 0
  const SpinorMessage straight = hwp_transform(u, 0.0);
  CHECK(std::abs(straight[0] - (-I) * u[0]) < 1e-12);
  CHECK(std::abs(straight[1] - I * u[1]) < 1e-12);
  // applying the same plate twice flips the global sign only
  const SpinorMessage twice = hwp_transform(hwp_transform(u, 0.3), 0.3);
  CHECK((twice + u).norm() < 1e-12);
}

TEST_CASE("modulator is a switchable half-wave plate") {
  const SpinorMessage u(1.0, 0.0);
  CHECK((eom_transform(u, false) - u).norm() == 0.0);
  const SpinorMessage active = eom_transform(u, true);
  CHECK(std::abs(active[0] - (-I) * std::cos(M_PI / 4)) < 1e-12);
  CHECK(std::abs(active[1] - (-I) * std::sin(M_PI / 4)) < 1e-12);
}

TEST_CASE("phase shifter is a pure global phase") {
  const SpinorMessage u(std::complex<double>(0.6, 0.1),
                        std::complex<double>(-0.2, 0.77));
  CHECK((phase_shift(u, 0.0) - u).norm() < 1e-12);
  CHECK((phase_shift(u, M_PI) + u).norm() < 1e-12);
  const SpinorMessage w = phase_shift(u, 1.234);
  CHECK(std::abs(std::abs(w[0]) - std::abs(u[0])) < 1e-12);
  CHECK(std::abs(std::abs(w[1]) - std::abs(u[1])) < 1e-12);
}

TEST_CASE("spin analyzer passes by the squared up amplitude") {
  RngStream rng(8, "analyzer");
  CHECK(spin_analyzer_select(SpinorMessage(1.0, 0.0), 0.9999));
  CHECK_FALSE(spin_analyzer_select(SpinorMessage(0.0, 1.0), 0.0));
  const SpinorMessage half(std::sqrt(0.5), std::sqrt(0.5));
  long long passed = 0;
  const int n = 10'000;
  for (int i = 0; i < n; ++i) passed += spin_analyzer_select(half, rng.next_double());
  CHECK(std::abs(static_cast<double>(passed) / n - 0.5) < 0.02);
}

TEST_CASE("polarizer sampler follows Malus law") {
  RngStream rng(9, "malus");
  CHECK(malus_pbs_sample(0.0, 0.999999) == +1);
  CHECK(malus_pbs_sample(M_PI / 2, 1e-6) == -1);
  for (double xi : {M_PI / 4, M_PI / 6, 1.0}) {
    long long sum = 0;
    const int n = 100'000;
    for (int i = 0; i < n; ++i) sum += malus_pbs_sample(xi, rng.next_double());
    const double expected = std::cos(2.0 * xi);
    const double sigma = std::sqrt((1.0 - expected * expected) / n);
    CHECK(std::abs(static_cast<double>(sum) / n - expected) < 3.5 * sigma);
  }
}

TEST_CASE("time tag delay window scales as sin^4") {
  RngStream rng(10, "tags");
  CHECK(time_tag_sample(0.0, 1000.0, 0.7) == 0.0);
  double max_full = 0.0, sum_full = 0.0;
  double max_quarter = 0.0;
  const int n = 20'000;
  for (int i = 0; i < n; ++i) {
    const double t = time_tag_sample(M_PI / 4, 1000.0, rng.next_double());
    CHECK(t >= 0.0);
    CHECK(t < 1000.0);
    max_full = std::max(max_full, t);
    sum_full += t;
    max_quarter = std::max(
        max_quarter, time_tag_sample(M_PI / 8, 1000.0, rng.next_double()));
  }
  CHECK(max_full > 990.0);            // fills [0, T0]
  CHECK(std::abs(sum_full / n - 500.0) < 10.0);
  CHECK(max_quarter < 250.0 + 1e-9);  // sin^4(pi/4) = 1/4
  CHECK(max_quarter > 245.0);
}
