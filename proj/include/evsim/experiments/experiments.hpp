#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "evsim/analysis/analysis.hpp"
#include "evsim/detectors/detectors.hpp"
#include "evsim/messengers/messages.hpp"

namespace evsim {

// ---- two-beam interference ------------------------------------------------

struct TwoBeamConfig {
  long long events = 1'000'000;
  double gamma = 0.999;
  double a = 1.0;   // slit width, units of c/f
  double d = 5.0;   // slit separation
  double X = 75.0;  // screen radius
  SourceMode mode = SourceMode::random_source;
  int fixed_index = 1;
  int group_size = 1;
  std::uint64_t seed = 1;
};

struct TwoBeamResult {
  std::array<long long, DetectorScreen::kCount> arrivals{};
  std::array<long long, DetectorScreen::kCount> clicks{};
  long long emitted = 0;
  long long detected = 0;
};

TwoBeamResult run_two_beam(const TwoBeamConfig& config);

// ---- photon Mach-Zehnder --------------------------------------------------

struct MziConfig {
  long long events_per_point = 10'000;
  double gamma = 0.98;
  double phi0_start_deg = 0.0;
  double phi0_stop_deg = 360.0;
  double phi0_step_deg = 10.0;
  double phi1_deg = 0.0;
  std::uint64_t seed = 1;
};

struct MziPoint {
  double phi0;  // radians
  long long n0 = 0, n1 = 0, n2 = 0, n3 = 0;
};

std::vector<MziPoint> run_mzi(const MziConfig& config);

// ---- delayed-choice interferometer ---------------------------------------

struct DelayedChoiceConfig {
  long long events_per_point = 10'000;
  double gamma = 0.98;
  double reflectivity = 0.5;  // of the interferometer-closing rotation
  double phi_start_deg = 0.0;
  double phi_stop_deg = 360.0;
  double phi_step_deg = 10.0;
  std::uint64_t seed = 1;
};

struct DelayedChoicePoint {
  double phi;  // radians
  // closed configuration (interference) and open configuration
  // (which-path) tallies, detector-0 clicks split by path label
  long long closed_n0 = 0, closed_n1 = 0;
  long long closed_n0_path0 = 0, closed_n0_path1 = 0;
  long long open_n0 = 0, open_n1 = 0;
  long long open_n0_path0 = 0, open_n0_path1 = 0;
  // single-path control tallies: one arm blocked after the input
  // splitter, closed configuration, same event budget
  long long only_path0_n0 = 0, only_path0_n1 = 0;
  long long only_path1_n0 = 0, only_path1_n1 = 0;
};

struct DelayedChoiceResult {
  std::vector<DelayedChoicePoint> points;
  double visibility = 0.0;
  double distinguishability = 0.0;
};

DelayedChoiceResult run_delayed_choice(const DelayedChoiceConfig& config);

// ---- neutron interferometer ----------------------------------------------

struct NeutronMziConfig {
  long long events_per_point = 100'000;
  double gamma = 0.99;
  double reflectivity = 0.2;
  double chi_start_deg = 0.0;
  double chi_stop_deg = 360.0;
  double chi_step_deg = 10.0;
  double noise_half_width = 0.0;  // per-messenger phase noise, radians
  std::uint64_t seed = 1;
};

struct NeutronMziPoint {
  double chi;  // radians
  long long n_o = 0, n_h = 0;
  long long emitted = 0;
};

std::vector<NeutronMziPoint> run_neutron_mzi(const NeutronMziConfig& config);

// ---- EPRB with time tags --------------------------------------------------

struct EprbConfig {
  long long pairs = 300'000;
  double t0 = 1000.0;           // max time-tag delay, ns
  double pair_spacing = 30'000;  // emission spacing, ns
  // station settings, radians; each station picks one of its two at
  // random per pair
  double a1 = 0.0, a1_prime = M_PI / 4;
  double a2 = M_PI / 8, a2_prime = 3 * M_PI / 8;
  std::uint64_t seed = 1;
};

struct EprbResult {
  StationRecord station1;
  StationRecord station2;
};

EprbResult run_eprb(const EprbConfig& config);

// Coincidence pipeline for one window: correlations for all four
// setting pairs plus S.
struct EprbWindowAnalysis {
  double window;
  double delta_g;
  CoincidenceTable table;
  // rows ordered (a1,a2), (a1,a2'), (a1',a2), (a1',a2')
  struct Row {
    double s1, s2;  // settings
    std::array<long long, 4> counts;
    double e1, e2, e;
  };
  std::vector<Row> rows;
  double s = 0.0;
};

EprbWindowAnalysis analyze_eprb_window(const EprbResult& data,
                                       const EprbConfig& config, double window,
                                       double delta_g);

// ---- neutron Bell test ----------------------------------------------------

struct NeutronBellConfig {
  long long events_per_count = 10'000;
  double gamma = 0.99;
  double reflectivity = 0.2;
  std::vector<double> alphas_deg = {0, 30, 60, 90, 120, 150};
  std::vector<double> chis_deg = {0, 30, 60, 90, 120, 150};
  bool random_chi_per_event = false;  // control variant
  std::uint64_t seed = 1;
};

struct NeutronBellPoint {
  double alpha, chi;  // radians
  long long n1, n2, n3, n4;
  double e;
};

std::vector<NeutronBellPoint> run_neutron_bell(const NeutronBellConfig& config);

// S at the standard settings alpha=0, chi=pi/4, alpha'=pi/2,
// chi'=-pi/4, sign pattern E(a,c) + E(a,c') - E(a',c) + E(a',c').
double neutron_bell_chsh(const NeutronBellConfig& base);

}  // namespace evsim
