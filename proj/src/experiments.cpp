#include "evsim/experiments/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>

#include "evsim/components/optics.hpp"
#include "evsim/components/splitter.hpp"
#include "evsim/core/rng.hpp"

namespace evsim {
namespace {

std::string tag(double value_deg) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", value_deg);
  return buf;
}

double deg2rad(double d) { return d * M_PI / 180.0; }

std::vector<double> sweep(double start_deg, double stop_deg, double step_deg) {
  if (!(step_deg > 0.0)) throw std::invalid_argument("sweep: step must be > 0");
  std::vector<double> values;
  for (double v = start_deg; v <= stop_deg + 1e-9; v += step_deg) {
    values.push_back(v);
  }
  return values;
}

}  // namespace

TwoBeamResult run_two_beam(const TwoBeamConfig& config) {
  RngStream source_rng(config.seed, "two-beam/source");
  DetectorScreen screen(config.gamma, config.seed);
  TwoBeamSource source{config.a, config.d, config.mode, config.fixed_index,
                       config.group_size};

  TwoBeamResult result;
  for (long long n = 0; n < config.events; ++n) {
    const Emission e = two_beam_emit(source, source_rng);
    const ScreenHit hit = two_beam_geometry(e.y, e.beta, config.X);
    // message phase 2 pi f t with f = 1 and t in units of 1/f
    screen.accept(hit.theta, scalar_message(2.0 * M_PI * hit.t));
  }
  result.emitted = config.events;
  for (int k = 0; k < DetectorScreen::kCount; ++k) {
    result.arrivals[k] = screen.detector(k).arrivals;
    result.clicks[k] = screen.detector(k).clicks;
    result.detected += screen.detector(k).clicks;
  }
  return result;
}

std::vector<MziPoint> run_mzi(const MziConfig& config) {
  RngStream source_rng(config.seed, "mzi/source");
  const double psi0 = source_rng.next_double(0.0, 2.0 * M_PI);
  const SpinorMessage input(std::polar(1.0, psi0), 0.0);
  const double phi1 = deg2rad(config.phi1_deg);

  std::vector<MziPoint> points;
  for (double phi0_deg :
       sweep(config.phi0_start_deg, config.phi0_stop_deg, config.phi0_step_deg)) {
    const std::string base = "mzi/" + tag(phi0_deg) + "/";
    RngStream init1(config.seed, base + "bs1/init");
    RngStream init2(config.seed, base + "bs2/init");
    RngStream draw1(config.seed, base + "bs1/draw");
    RngStream draw2(config.seed, base + "bs2/draw");
    BeamSplitter bs1(SplitterKind::photon_5050, config.gamma, 0.5, init1);
    BeamSplitter bs2(SplitterKind::photon_5050, config.gamma, 0.5, init2);

    MziPoint pt;
    pt.phi0 = deg2rad(phi0_deg);
    for (long long n = 0; n < config.events_per_point; ++n) {
      auto [arm, msg] = bs1.process(0, input, draw1.next_double());
      if (arm == 0) {
        ++pt.n0;
        msg = advance_phase(msg, pt.phi0);
      } else {
        ++pt.n1;
        msg = advance_phase(msg, phi1);
      }
      auto [out, final_msg] = bs2.process(arm, msg, draw2.next_double());
      (void)final_msg;
      if (out == 0) {
        ++pt.n2;
      } else {
        ++pt.n3;
      }
    }
    points.push_back(pt);
  }
  return points;
}

DelayedChoiceResult run_delayed_choice(const DelayedChoiceConfig& config) {
  if (config.reflectivity < 0.0 || config.reflectivity > 0.5) {
    throw std::invalid_argument("run_delayed_choice: R outside [0, 0.5]");
  }
  RngStream source_rng(config.seed, "delayed-choice/source");
  const double delta1 = source_rng.next_double(0.0, 2.0 * M_PI);
  const double delta2 = source_rng.next_double(0.0, 2.0 * M_PI);
  const double xi = M_PI / 4;  // equal S/P weight: both paths taken equally
  const SpinorMessage input(std::polar(std::sin(xi), delta1),
                            std::polar(std::cos(xi), delta2));
  // closing rotation: interference contrast 2 sqrt(R(1-R)) at rotation
  // eta with sin^2(eta) = R
  const double rotation = std::asin(std::sqrt(config.reflectivity));

  DelayedChoiceResult result;
  for (double phi_deg :
       sweep(config.phi_start_deg, config.phi_stop_deg, config.phi_step_deg)) {
    const std::string base = "delayed-choice/" + tag(phi_deg) + "/";
    RngStream init_in(config.seed, base + "pbs-in/init");
    RngStream init_out(config.seed, base + "pbs-out/init");
    RngStream init_wp(config.seed, base + "wp/init");
    RngStream draw_in(config.seed, base + "pbs-in/draw");
    RngStream draw_out(config.seed, base + "pbs-out/draw");
    RngStream draw_wp(config.seed, base + "wp/draw");
    RngStream chooser(config.seed, base + "config-choice");
    BeamSplitter pbs_in(SplitterKind::polarizing, config.gamma, 0.5, init_in);
    BeamSplitter pbs_out(SplitterKind::polarizing, config.gamma, 0.5, init_out);
    BeamSplitter wp(SplitterKind::polarizing, config.gamma, 0.5, init_wp);

    DelayedChoicePoint pt;
    pt.phi = deg2rad(phi_deg);
    for (long long n = 0; n < config.events_per_point; ++n) {
      auto [split_ch, msg] = pbs_in.process(0, input, draw_in.next_double());
      // channel 1 carries the first polarization component: path 0
      const int path = split_ch == 1 ? 0 : 1;
      // the configuration draw happens after the photon passed the
      // input splitter
      const bool closed = chooser.next_double() < 0.5;

      // path 0 re-enters the exit splitter on channel 1, path 1 on
      // channel 0; the channel-0 entrant picks up the scan phase
      int enter_ch;
      if (path == 0) {
        enter_ch = 1;
      } else {
        enter_ch = 0;
        msg = advance_phase(msg, pt.phi);
      }
      auto [merge_ch, merged] =
          pbs_out.process(enter_ch, msg, draw_out.next_double());
      if (merge_ch != 0) continue;  // unused exit port, no detector

      merged = eom_transform(merged, closed, rotation);
      auto [wp_ch, final_msg] = wp.process(0, merged, draw_wp.next_double());
      (void)final_msg;
      const bool d0 = wp_ch == 1;  // detector 0 sits on the S output
      if (closed) {
        if (d0) {
          ++pt.closed_n0;
          ++(path == 0 ? pt.closed_n0_path0 : pt.closed_n0_path1);
        } else {
          ++pt.closed_n1;
        }
      } else {
        if (d0) {
          ++pt.open_n0;
          ++(path == 0 ? pt.open_n0_path0 : pt.open_n0_path1);
        } else {
          ++pt.open_n1;
        }
      }
    }

    // which-path controls: block one arm, keep the closed
    // configuration, count at the same detectors. Every detected
    // event then carries a known path label.
    for (int open_path : {0, 1}) {
      for (long long n = 0; n < config.events_per_point; ++n) {
        auto [split_ch, msg] = pbs_in.process(0, input, draw_in.next_double());
        const int path = split_ch == 1 ? 0 : 1;
        if (path != open_path) continue;  // absorbed by the block
        int enter_ch;
        if (path == 0) {
          enter_ch = 1;
        } else {
          enter_ch = 0;
          msg = advance_phase(msg, pt.phi);
        }
        auto [merge_ch, merged] =
            pbs_out.process(enter_ch, msg, draw_out.next_double());
        if (merge_ch != 0) continue;
        merged = eom_transform(merged, true, rotation);
        auto [wp_ch, final_msg] = wp.process(0, merged, draw_wp.next_double());
        (void)final_msg;
        const bool d0 = wp_ch == 1;
        if (open_path == 0) {
          ++(d0 ? pt.only_path0_n0 : pt.only_path0_n1);
        } else {
          ++(d0 ? pt.only_path1_n0 : pt.only_path1_n1);
        }
      }
    }
    result.points.push_back(pt);
  }

  // the path-label asymmetry is read off the single-path controls;
  // in the merged beam the label asymmetry averages out by design
  std::vector<FringePoint> scan;
  for (const auto& pt : result.points) {
    scan.push_back({pt.phi, pt.closed_n0, pt.closed_n1, pt.only_path0_n0,
                    pt.only_path1_n0});
  }
  std::tie(result.visibility, result.distinguishability) =
      visibility_distinguishability(scan);
  return result;
}

std::vector<NeutronMziPoint> run_neutron_mzi(const NeutronMziConfig& config) {
  const double R = config.reflectivity;
  std::vector<NeutronMziPoint> points;
  for (double chi_deg :
       sweep(config.chi_start_deg, config.chi_stop_deg, config.chi_step_deg)) {
    const std::string base = "neutron-mzi/" + tag(chi_deg) + "/";
    RngStream noise_rng(config.seed, base + "source-noise");
    RngStream init[4] = {{config.seed, base + "bs0/init"},
                         {config.seed, base + "bs1/init"},
                         {config.seed, base + "bs2/init"},
                         {config.seed, base + "bs3/init"}};
    RngStream draw[4] = {{config.seed, base + "bs0/draw"},
                         {config.seed, base + "bs1/draw"},
                         {config.seed, base + "bs2/draw"},
                         {config.seed, base + "bs3/draw"}};
    BeamSplitter bs0(SplitterKind::neutron, config.gamma, R, init[0]);
    BeamSplitter bs1(SplitterKind::neutron, config.gamma, R, init[1]);
    BeamSplitter bs2(SplitterKind::neutron, config.gamma, R, init[2]);
    BeamSplitter bs3(SplitterKind::neutron, config.gamma, R, init[3]);

    NeutronMziPoint pt;
    pt.chi = deg2rad(chi_deg);
    pt.emitted = config.events_per_point;
    for (long long n = 0; n < config.events_per_point; ++n) {
      double delta = 0.0;
      if (config.noise_half_width > 0.0) {
        delta = noise_rng.next_double(-config.noise_half_width,
                                      config.noise_half_width);
      }
      SpinorMessage msg(std::polar(1.0, delta), 0.0);

      auto [entry_ch, m1] = bs0.process(0, msg, draw[0].next_double());
      int bs3_in;
      SpinorMessage m2;
      if (entry_ch == 1) {
        // transmitted arm: mirror plate keeps the reflection (output
        // channel 0), then the phase shifter
        auto [mirror_ch, mm] = bs1.process(0, m1, draw[1].next_double());
        if (mirror_ch != 0) continue;  // leaves the interferometer
        m2 = phase_shift(mm, pt.chi);
        bs3_in = 0;
      } else {
        auto [mirror_ch, mm] = bs2.process(0, m1, draw[2].next_double());
        if (mirror_ch != 0) continue;
        m2 = mm;
        bs3_in = 1;
      }
      auto [exit_ch, m3] = bs3.process(bs3_in, m2, draw[3].next_double());
      (void)m3;
      if (exit_ch == 0) {
        ++pt.n_o;
      } else {
        ++pt.n_h;
      }
    }
    points.push_back(pt);
  }
  return points;
}

EprbResult run_eprb(const EprbConfig& config) {
  RngStream source_rng(config.seed, "eprb/source");
  RngStream setting_rng[2] = {{config.seed, "eprb/station1/setting"},
                              {config.seed, "eprb/station2/setting"}};
  RngStream pbs_rng[2] = {{config.seed, "eprb/station1/pbs"},
                          {config.seed, "eprb/station2/pbs"}};
  RngStream tag_rng[2] = {{config.seed, "eprb/station1/tag"},
                          {config.seed, "eprb/station2/tag"}};
  const double settings[2][2] = {{config.a1, config.a1_prime},
                                 {config.a2, config.a2_prime}};

  EprbResult result;
  result.station1.reserve(config.pairs);
  result.station2.reserve(config.pairs);
  for (long long n = 0; n < config.pairs; ++n) {
    const double xi = source_rng.next_double(0.0, 2.0 * M_PI);
    const double base_time = static_cast<double>(n) * config.pair_spacing;
    for (int i = 0; i < 2; ++i) {
      // the pair is polarized (xi, xi + pi/2): orthogonal, correlated
      const double pol = xi + i * M_PI / 2;
      const double theta =
          settings[i][setting_rng[i].next_double() < 0.5 ? 0 : 1];
      const double xi_prime = pol - theta;
      const int x = malus_pbs_sample(xi_prime, pbs_rng[i].next_double());
      const double t =
          base_time +
          time_tag_sample(xi_prime, config.t0, tag_rng[i].next_double());
      (i == 0 ? result.station1 : result.station2).push_back({x, t, theta});
    }
  }
  return result;
}

EprbWindowAnalysis analyze_eprb_window(const EprbResult& data,
                                       const EprbConfig& config, double window,
                                       double delta_g) {
  EprbWindowAnalysis out;
  out.window = window;
  out.delta_g = delta_g;
  out.table = coincidence_count(data.station1, data.station2, window, delta_g);

  const std::pair<double, double> keys[4] = {
      {config.a1, config.a2},
      {config.a1, config.a2_prime},
      {config.a1_prime, config.a2},
      {config.a1_prime, config.a2_prime}};
  double es[4];
  for (int k = 0; k < 4; ++k) {
    auto [e1, e2, e] = correlations(out.table, keys[k]);
    const auto counts = out.table.counts.at(keys[k]);
    out.rows.push_back({keys[k].first, keys[k].second, counts, e1, e2, e});
    es[k] = e;
  }
  out.s = chsh_s(es[0], es[1], es[2], es[3]);
  return out;
}

namespace {

// The four splitters and the random streams of one neutron Bell run.
// The splitter states persist across counts: only the settings (alpha,
// chi) change between sub-runs, as they would on a real instrument. The
// input-ratio estimates are setting-independent, so a converged machine
// stays converged through the whole grid.
struct NeutronBellMachine {
  RngStream draw[4];
  RngStream analyzer_rng;
  RngStream chi_rng;
  BeamSplitter bs0, bs1, bs2, bs3;

  NeutronBellMachine(const NeutronBellConfig& config, RngStream init[4])
      : draw{{config.seed, "neutron-bell/bs0/draw"},
             {config.seed, "neutron-bell/bs1/draw"},
             {config.seed, "neutron-bell/bs2/draw"},
             {config.seed, "neutron-bell/bs3/draw"}},
        analyzer_rng(config.seed, "neutron-bell/analyzer"),
        chi_rng(config.seed, "neutron-bell/chi-choice"),
        bs0(SplitterKind::neutron, config.gamma, config.reflectivity, init[0]),
        bs1(SplitterKind::neutron, config.gamma, config.reflectivity, init[1]),
        bs2(SplitterKind::neutron, config.gamma, config.reflectivity, init[2]),
        bs3(SplitterKind::neutron, config.gamma, config.reflectivity, init[3]) {}

  static NeutronBellMachine make(const NeutronBellConfig& config) {
    RngStream init[4] = {{config.seed, "neutron-bell/bs0/init"},
                         {config.seed, "neutron-bell/bs1/init"},
                         {config.seed, "neutron-bell/bs2/init"},
                         {config.seed, "neutron-bell/bs3/init"}};
    return NeutronBellMachine(config, init);
  }

  // One sub-run with fixed spin-rotator angle alpha. With random_chi
  // false the phase shifter stays at chi_set[0]; otherwise chi is drawn
  // per event from chi_set and counts are binned by the drawn value.
  std::vector<long long> counts(double alpha_deg,
                                const std::vector<double>& chi_set,
                                bool random_chi, long long events) {
    const double alpha = deg2rad(alpha_deg);
    const SpinorMessage spin_up(1.0, 0.0);
    std::vector<long long> result(chi_set.size(), 0);
    for (long long n = 0; n < events; ++n) {
      std::size_t chi_idx = 0;
      if (random_chi) {
        chi_idx = static_cast<std::size_t>(
            chi_rng.next_double() * static_cast<double>(chi_set.size()));
        chi_idx = std::min(chi_idx, chi_set.size() - 1);
      }
      const double chi = deg2rad(chi_set[chi_idx]);

      auto [entry_ch, m1] = bs0.process(0, spin_up, draw[0].next_double());
      int bs3_in;
      SpinorMessage m2;
      if (entry_ch == 1) {
        // phase-shifter arm, spin turned by -pi/2 about y
        SpinorMessage rotated = su2_rotate(m1, PauliAxis::y, -M_PI / 2);
        auto [mirror_ch, mm] = bs1.process(0, rotated, draw[1].next_double());
        if (mirror_ch != 0) continue;  // leaves the interferometer
        m2 = phase_shift(mm, chi);
        bs3_in = 0;
      } else {
        SpinorMessage rotated = su2_rotate(m1, PauliAxis::y, +M_PI / 2);
        auto [mirror_ch, mm] = bs2.process(0, rotated, draw[2].next_double());
        if (mirror_ch != 0) continue;
        m2 = mm;
        bs3_in = 1;
      }
      auto [exit_ch, m3] = bs3.process(bs3_in, m2, draw[3].next_double());
      if (exit_ch != 0) continue;  // only the O-beam is analyzed

      const SpinorMessage analyzed = su2_rotate(m3, PauliAxis::x, alpha);
      if (spin_analyzer_select(analyzed, analyzer_rng.next_double())) {
        ++result[chi_idx];
      }
    }
    return result;
  }

  long long one_count(double alpha_deg, double chi_deg, long long events) {
    return counts(alpha_deg, {chi_deg}, false, events)[0];
  }
};

}  // namespace

std::vector<NeutronBellPoint> run_neutron_bell(
    const NeutronBellConfig& config) {
  std::vector<NeutronBellPoint> points;
  NeutronBellMachine machine = NeutronBellMachine::make(config);
  const long long events = config.events_per_count;
  if (!config.random_chi_per_event) {
    for (double alpha_deg : config.alphas_deg) {
      for (double chi_deg : config.chis_deg) {
        const long long n1 = machine.one_count(alpha_deg, chi_deg, events);
        const long long n2 =
            machine.one_count(alpha_deg + 180, chi_deg + 180, events);
        const long long n3 = machine.one_count(alpha_deg + 180, chi_deg, events);
        const long long n4 = machine.one_count(alpha_deg, chi_deg + 180, events);
        points.push_back({deg2rad(alpha_deg), deg2rad(chi_deg), n1, n2, n3, n4,
                          neutron_bell_correlation(n1, n2, n3, n4)});
      }
    }
    return points;
  }

  // control variant: chi drawn per event from the predetermined values
  // (the grid and its pi-shifted partners), counts binned by the drawn
  // value
  std::vector<double> chi_set;
  for (double chi_deg : config.chis_deg) {
    chi_set.push_back(chi_deg);
    chi_set.push_back(chi_deg + 180);
  }
  const long long variant_events =
      events * static_cast<long long>(chi_set.size());
  std::map<double, std::vector<long long>> by_alpha;
  for (double alpha_deg : config.alphas_deg) {
    for (double a : {alpha_deg, alpha_deg + 180}) {
      if (!by_alpha.count(a)) {
        by_alpha[a] = machine.counts(a, chi_set, true, variant_events);
      }
    }
  }
  for (double alpha_deg : config.alphas_deg) {
    for (std::size_t k = 0; k < config.chis_deg.size(); ++k) {
      const std::size_t idx = 2 * k;       // chi
      const std::size_t idx_pi = 2 * k + 1;  // chi + pi
      const long long n1 = by_alpha[alpha_deg][idx];
      const long long n2 = by_alpha[alpha_deg + 180][idx_pi];
      const long long n3 = by_alpha[alpha_deg + 180][idx];
      const long long n4 = by_alpha[alpha_deg][idx_pi];
      points.push_back({deg2rad(alpha_deg), deg2rad(config.chis_deg[k]), n1,
                        n2, n3, n4,
                        neutron_bell_correlation(n1, n2, n3, n4)});
    }
  }
  return points;
}

double neutron_bell_chsh(const NeutronBellConfig& base) {
  // settings alpha = 0, chi = 45 deg, alpha' = 90 deg, chi' = -45 deg
  NeutronBellMachine machine = NeutronBellMachine::make(base);
  const long long events = base.events_per_count;
  auto corr = [&](double alpha_deg, double chi_deg) {
    const long long n1 = machine.one_count(alpha_deg, chi_deg, events);
    const long long n2 =
        machine.one_count(alpha_deg + 180, chi_deg + 180, events);
    const long long n3 = machine.one_count(alpha_deg + 180, chi_deg, events);
    const long long n4 = machine.one_count(alpha_deg, chi_deg + 180, events);
    return neutron_bell_correlation(n1, n2, n3, n4);
  };
  return corr(0, 45) + corr(0, -45) - corr(90, 45) + corr(90, -45);
}

}  // namespace evsim
