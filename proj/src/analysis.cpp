#include "evsim/analysis/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace evsim {

long long CoincidenceTable::pair_total(
    const std::pair<double, double>& key) const {
  auto it = counts.find(key);
  if (it == counts.end()) return 0;
  return std::accumulate(it->second.begin(), it->second.end(), 0LL);
}

long long CoincidenceTable::total() const {
  long long n = 0;
  for (const auto& [key, c] : counts) {
    n += std::accumulate(c.begin(), c.end(), 0LL);
  }
  return n;
}

CoincidenceTable coincidence_count(const StationRecord& s1,
                                   const StationRecord& s2, double window,
                                   double delta_g) {
  if (window < 0.0) throw std::invalid_argument("coincidence_count: W < 0");
  StationRecord a = s1;
  StationRecord b = s2;
  auto by_time = [](const StationEvent& u, const StationEvent& v) {
    return u.t < v.t;
  };
  std::sort(a.begin(), a.end(), by_time);
  std::sort(b.begin(), b.end(), by_time);

  CoincidenceTable table;
  table.window = window;
  table.delta_g = delta_g;
  // W is the full width of the coincidence window: tags count as
  // coincident when they differ by at most W/2.
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double t1 = a[i].t + delta_g;
    const double t2 = b[j].t;
    if (std::abs(t1 - t2) <= 0.5 * window) {
      auto& c = table.counts[{a[i].setting, b[j].setting}];
      ++c[CoincidenceTable::slot(a[i].x, b[j].x)];
      ++i;
      ++j;
    } else if (t1 < t2) {
      ++i;
    } else {
      ++j;
    }
  }
  return table;
}

DeltaGEstimate delta_g_estimate(const StationRecord& s1,
                                const StationRecord& s2, double bin_width) {
  if (s1.empty() || s2.empty()) {
    throw std::invalid_argument("delta_g_estimate: empty station record");
  }
  std::vector<double> t2;
  t2.reserve(s2.size());
  for (const auto& e : s2) t2.push_back(e.t);
  std::sort(t2.begin(), t2.end());

  std::map<long long, long long> histogram;  // bin index -> count
  for (const auto& e : s1) {
    auto it = std::lower_bound(t2.begin(), t2.end(), e.t);
    double best = std::numeric_limits<double>::infinity();
    if (it != t2.end()) best = *it - e.t;
    if (it != t2.begin() && std::abs(*(it - 1) - e.t) < std::abs(best)) {
      best = *(it - 1) - e.t;
    }
    ++histogram[static_cast<long long>(std::floor(best / bin_width))];
  }

  long long best_bin = 0, best_count = -1, total = 0;
  for (const auto& [bin, count] : histogram) {
    total += count;
    if (count > best_count) {
      best_count = count;
      best_bin = bin;
    }
  }
  DeltaGEstimate est;
  // t2 - t1 peaks at the clock offset; shifting station 1 by it aligns
  // the streams.
  est.delta_g = (best_bin + 0.5) * bin_width;
  const double mean = static_cast<double>(total) / histogram.size();
  est.low_confidence = histogram.size() > 1 && best_count < 2.0 * mean;
  return est;
}

std::tuple<double, double, double> correlations(
    const CoincidenceTable& table, const std::pair<double, double>& key) {
  auto it = table.counts.find(key);
  const long long nc = table.pair_total(key);
  if (it == table.counts.end() || nc == 0) {
    throw std::domain_error("correlations: no coincidences for setting pair");
  }
  const auto& c = it->second;  // C++, C+-, C-+, C--
  const double n = static_cast<double>(nc);
  const double e1 = (c[0] - c[3] + c[1] - c[2]) / n;
  const double e2 = (c[0] - c[3] - c[1] + c[2]) / n;
  const double e = (c[0] + c[3] - c[1] - c[2]) / n;
  return {e1, e2, e};
}

double chsh_s(double e_ab, double e_ab2, double e_a2b, double e_a2b2) {
  for (double e : {e_ab, e_ab2, e_a2b, e_a2b2}) {
    if (std::abs(e) > 1.0 + 1e-12) {
      throw std::domain_error("chsh_s: correlation outside [-1,1]");
    }
  }
  return e_ab - e_ab2 + e_a2b + e_a2b2;
}

BooleResult boole_triple_check(
    const std::vector<std::array<int, 3>>& triples) {
  if (triples.empty()) {
    throw std::invalid_argument("boole_triple_check: empty triple list");
  }
  double ab = 0, ac = 0, bc = 0;
  for (const auto& t : triples) {
    ab += t[0] * t[1];
    ac += t[0] * t[2];
    bc += t[1] * t[2];
  }
  const double n = static_cast<double>(triples.size());
  BooleResult r{ab / n, ac / n, bc / n, false};
  r.holds = std::abs(r.f_ab + r.f_ac) <= 1.0 + r.f_bc + 1e-12 &&
            std::abs(r.f_ab - r.f_ac) <= 1.0 - r.f_bc + 1e-12;
  return r;
}

std::pair<double, double> visibility_distinguishability(
    const std::vector<FringePoint>& scan) {
  if (scan.size() < 4) {
    throw std::invalid_argument(
        "visibility_distinguishability: need at least 4 phase points");
  }
  // least squares of N0/(N0+N1) against offset + cos + sin
  Eigen::MatrixXd design(scan.size(), 3);
  Eigen::VectorXd y(scan.size());
  for (std::size_t k = 0; k < scan.size(); ++k) {
    design(k, 0) = 1.0;
    design(k, 1) = std::cos(scan[k].phi);
    design(k, 2) = std::sin(scan[k].phi);
    const double n = static_cast<double>(scan[k].n0 + scan[k].n1);
    y(k) = n > 0 ? scan[k].n0 / n : 0.0;
  }
  Eigen::Vector3d coef = design.colPivHouseholderQr().solve(y);
  const double offset = coef(0);
  const double amp = std::hypot(coef(1), coef(2));
  const double visibility = offset > 0 ? std::min(amp / offset, 1.0) : 0.0;

  long long p0 = 0, p1 = 0;
  for (const auto& pt : scan) {
    p0 += pt.n0_path0;
    p1 += pt.n0_path1;
  }
  const double dist =
      p0 + p1 > 0 ? std::abs(static_cast<double>(p0 - p1)) / (p0 + p1) : 0.0;
  return {visibility, dist};
}

double neutron_bell_correlation(long long n1, long long n2, long long n3,
                                long long n4) {
  const long long sum = n1 + n2 + n3 + n4;
  if (n1 < 0 || n2 < 0 || n3 < 0 || n4 < 0 || sum == 0) {
    throw std::domain_error("neutron_bell_correlation: bad counts");
  }
  return static_cast<double>(n1 + n2 - n3 - n4) / static_cast<double>(sum);
}

std::pair<double, double> fit_amplitude(const std::vector<double>& model,
                                        const std::vector<double>& counts) {
  if (model.size() != counts.size() || model.size() < 2) {
    throw std::invalid_argument("fit_amplitude: need >= 2 matched points");
  }
  double mm = 0, mc = 0;
  for (std::size_t k = 0; k < model.size(); ++k) {
    mm += model[k] * model[k];
    mc += model[k] * counts[k];
  }
  if (mm == 0.0) throw std::domain_error("fit_amplitude: all-zero model");
  const double a = mc / mm;
  double ss = 0;
  for (std::size_t k = 0; k < model.size(); ++k) {
    const double d = counts[k] - a * model[k];
    ss += d * d;
  }
  return {a, std::sqrt(ss / model.size())};
}

double r_squared(const std::vector<double>& model,
                 const std::vector<double>& counts, double amplitude) {
  const double mean =
      std::accumulate(counts.begin(), counts.end(), 0.0) / counts.size();
  double ss_res = 0, ss_tot = 0;
  for (std::size_t k = 0; k < model.size(); ++k) {
    const double d = counts[k] - amplitude * model[k];
    ss_res += d * d;
    ss_tot += (counts[k] - mean) * (counts[k] - mean);
  }
  return ss_tot > 0 ? 1.0 - ss_res / ss_tot : 0.0;
}

}  // namespace evsim
