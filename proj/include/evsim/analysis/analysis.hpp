#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace evsim {

// One detection at an EPRB station: outcome, time tag, local setting.
struct StationEvent {
  int x;           // +1 or -1
  double t;        // time tag
  double setting;  // analyzer angle, radians
};
using StationRecord = std::vector<StationEvent>;

// Coincidence counts C[x1][x2] per setting pair.
struct CoincidenceTable {
  double window = 0.0;
  double delta_g = 0.0;
  // key: (setting1, setting2); value: counts ordered C++, C+-, C-+, C--
  std::map<std::pair<double, double>, std::array<long long, 4>> counts;

  static int slot(int x1, int x2) {
    return (x1 > 0 ? 0 : 2) + (x2 > 0 ? 0 : 1);
  }
  long long pair_total(const std::pair<double, double>& key) const;
  long long total() const;
};

// Greedy time-ordered pairing: both records sorted by tag, heads paired
// whenever |t1 + delta_g - t2| <= W/2 (W is the full window width),
// otherwise the earlier head is dropped. Each event enters at most one
// pair; for tags on a line this greedy scheme attains the maximum
// number of pairs.
CoincidenceTable coincidence_count(const StationRecord& s1,
                                   const StationRecord& s2, double window,
                                   double delta_g);

// Offset between the station clocks, estimated from the histogram of
// tag differences t2 - t1 between each station-1 event and its nearest
// station-2 neighbour. Returns the center of the fullest bin;
// low_confidence flags a histogram with no clear peak.
struct DeltaGEstimate {
  double delta_g = 0.0;
  bool low_confidence = false;
};
DeltaGEstimate delta_g_estimate(const StationRecord& s1,
                                const StationRecord& s2, double bin_width);

// Single-station and pair correlations of one setting pair:
// E1 = (C++ - C-- + C+- - C-+)/Nc, E2 = (C++ - C-- - C+- + C-+)/Nc,
// E = (C++ + C-- - C+- - C-+)/Nc.
std::tuple<double, double, double> correlations(
    const CoincidenceTable& table, const std::pair<double, double>& key);

// S = E(a1,a2) - E(a1,a2') + E(a1',a2) + E(a1',a2').
double chsh_s(double e_ab, double e_ab2, double e_a2b, double e_a2b2);

// Boole's inequality for pair averages drawn from one list of triples:
// |F_ab +- F_ac| <= 1 +- F_bc must always hold.
struct BooleResult {
  double f_ab, f_ac, f_bc;
  bool holds;
};
BooleResult boole_triple_check(
    const std::vector<std::array<int, 3>>& triples);

// Per-phase interference record of the delayed-choice run, closed
// configuration. n0/n1 come from the merged-beam run; n0_path0 and
// n0_path1 are detector-0 clicks from the single-path control runs
// (the other arm blocked), where every event has a known path label.
struct FringePoint {
  double phi;            // radians
  long long n0 = 0;      // clicks at detector 0
  long long n1 = 0;      // clicks at detector 1
  long long n0_path0 = 0;
  long long n0_path1 = 0;
};

// V from a least-squares sinusoid fit of N0/(N0+N1) against phi
// (offset plus one harmonic; the fringe phase is free because the
// source phases are drawn at random). D = |N(path 0 at D0) -
// N(path 1 at D0)| / (N(path 0 at D0) + N(path 1 at D0)) aggregated
// over the scan.
std::pair<double, double> visibility_distinguishability(
    const std::vector<FringePoint>& scan);

// E = (N1 + N2 - N3 - N4) / (N1 + N2 + N3 + N4) with the count order
// N(alpha,chi), N(alpha+pi,chi+pi), N(alpha+pi,chi), N(alpha,chi+pi).
double neutron_bell_correlation(long long n1, long long n2, long long n3,
                                long long n4);

// One-parameter least squares of counts against a model shape:
// A = sum(model*count)/sum(model^2). Returns (A, rms residual).
std::pair<double, double> fit_amplitude(const std::vector<double>& model,
                                        const std::vector<double>& counts);

// Coefficient of determination of counts against A*model.
double r_squared(const std::vector<double>& model,
                 const std::vector<double>& counts, double amplitude);

}  // namespace evsim
