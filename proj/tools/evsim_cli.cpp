// Command-line front end: runs the event-based experiments, dumps the
// closed-form reference tables and re-analyzes saved station records.
#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "evsim/cli/config.hpp"
#include "evsim/cli/io.hpp"
#include "evsim/experiments/experiments.hpp"
#include "evsim/oracle/oracle.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

struct CommonOpts {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<long long> events;
  std::string out_path = "-";
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "JSON configuration file");
  cmd->add_option("--seed", opts.seed, "root seed for all random streams");
  cmd->add_option("--events", opts.events,
                  "event count (pairs / events per point, per experiment)");
  cmd->add_option("--out", opts.out_path, "output path ('-' for stdout)");
  cmd->add_option("--format", opts.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

evsim::RunConfig load_config(const CommonOpts& opts) {
  evsim::RunConfig config;
  if (!opts.config_path.empty()) {
    config = evsim::parse_config(evsim::read_file(opts.config_path));
  }
  if (opts.seed) evsim::apply_seed(config, *opts.seed);
  if (opts.events) evsim::apply_events(config, *opts.events);
  return config;
}

void emit(const CommonOpts& opts, const evsim::Table& table,
          const evsim::RunConfig& config, double duration_s) {
  const std::string body =
      opts.format == "json" ? evsim::to_json(table) : evsim::to_csv(table);
  if (opts.out_path == "-") {
    std::cout << body;
    return;
  }
  evsim::write_file(opts.out_path, body);
  std::ostringstream manifest;
  manifest << "{\n"
           << "  \"config_digest\": \"" << std::hex
           << evsim::config_digest(config) << std::dec << "\",\n"
           << "  \"seed\": " << config.eprb.seed << ",\n"
           << "  \"version\": \"" << kVersion << "\",\n"
           << "  \"outputs\": [\"" << opts.out_path << "\"],\n"
           << "  \"duration_s\": " << evsim::format_double(duration_s) << "\n"
           << "}\n";
  evsim::write_file(opts.out_path + ".manifest.json", manifest.str());
}

evsim::Table oracle_table(const std::string& which, double reflectivity) {
  using evsim::format_double;
  evsim::Table t;
  if (which == "mzi") {
    t.header = {"phi_deg", "P0", "P1"};
    for (int d = 0; d <= 360; d += 10) {
      auto [p0, p1] = evsim::oracle::mzi_probabilities(d * M_PI / 180.0, 0.0);
      t.rows.push_back({format_double(d), format_double(p0), format_double(p1)});
    }
  } else if (which == "two-beam") {
    t.header = {"theta_deg", "intensity"};
    for (int d = -90; d <= 90; ++d) {
      t.rows.push_back(
          {format_double(d),
           format_double(evsim::oracle::two_beam_intensity(
               d * M_PI / 180.0, 2.0 * M_PI, 1.0, 5.0))});
    }
  } else if (which == "neutron-mzi") {
    t.header = {"chi_deg", "pH", "pO"};
    for (int d = 0; d <= 360; d += 10) {
      auto [ph, po] = evsim::oracle::neutron_mzi_probabilities(
          d * M_PI / 180.0, reflectivity);
      t.rows.push_back({format_double(d), format_double(ph), format_double(po)});
    }
  } else if (which == "neutron-bell") {
    t.header = {"alpha_deg", "chi_deg", "E"};
    for (int a = 0; a <= 360; a += 30) {
      for (int c = 0; c <= 360; c += 30) {
        t.rows.push_back({format_double(a), format_double(c),
                          format_double(evsim::oracle::neutron_bell_E(
                              a * M_PI / 180.0, c * M_PI / 180.0))});
      }
    }
  } else if (which == "singlet") {
    t.header = {"a1_deg", "a2_deg", "E"};
    for (int a = 0; a <= 180; a += 5) {
      auto [e1, e2, e] =
          evsim::oracle::singlet_correlation(a * M_PI / 180.0, 0.0);
      (void)e1;
      (void)e2;
      t.rows.push_back({format_double(a), "0", format_double(e)});
    }
  } else {
    throw CLI::ValidationError(
        "oracle",
        "unknown table '" + which +
            "' (expected mzi, two-beam, neutron-mzi, neutron-bell, singlet)");
  }
  return t;
}

std::vector<std::pair<double, double>> station_setting_pairs(
    const evsim::StationRecord& s1, const evsim::StationRecord& s2) {
  auto distinct = [](const evsim::StationRecord& r) {
    std::vector<double> v;
    for (const auto& e : r) {
      if (std::find(v.begin(), v.end(), e.setting) == v.end()) {
        v.push_back(e.setting);
      }
    }
    std::sort(v.begin(), v.end());
    return v;
  };
  std::vector<std::pair<double, double>> pairs;
  for (double a : distinct(s1)) {
    for (double b : distinct(s2)) pairs.push_back({a, b});
  }
  return pairs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Event-by-event simulator of single-particle interference and "
      "entanglement experiments"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string oracle_which = "mzi";
  double oracle_r = 0.2;
  std::string station1_path, station2_path, windows_arg = "2,50,200000";
  std::string delta_g_arg = "0";
  std::string dump_prefix;

  auto* two_beam = app.add_subcommand("two-beam", "two-slit interference");
  auto* mzi = app.add_subcommand("mzi", "photon Mach-Zehnder interferometer");
  auto* delayed = app.add_subcommand("delayed-choice",
                                     "Wheeler delayed-choice interferometer");
  auto* nmzi = app.add_subcommand("neutron-mzi", "neutron interferometer");
  auto* eprb = app.add_subcommand("eprb", "EPRB pair experiment with time tags");
  eprb->add_option("--dump-stations", dump_prefix,
                   "also write <prefix>.station{1,2}.csv event records");
  auto* nbell = app.add_subcommand("neutron-bell",
                                   "single-neutron Bell-test interferometer");
  auto* oracle = app.add_subcommand("oracle", "closed-form reference tables");
  oracle->add_option("table", oracle_which,
                     "mzi | two-beam | neutron-mzi | neutron-bell | singlet");
  oracle->add_option("--reflectivity", oracle_r, "splitter reflectivity");
  auto* analyze =
      app.add_subcommand("analyze", "re-analyze saved station records");
  analyze->add_option("--station1", station1_path, "station 1 CSV")
      ->required();
  analyze->add_option("--station2", station2_path, "station 2 CSV")
      ->required();
  analyze->add_option("--windows", windows_arg, "comma list of W values, ns");
  analyze->add_option("--delta-g", delta_g_arg,
                      "clock offset in ns, or 'auto' to estimate");

  for (auto* cmd : {two_beam, mzi, delayed, nmzi, eprb, nbell, oracle, analyze}) {
    add_common(cmd, opts);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    evsim::RunConfig config;
    try {
      config = load_config(opts);
    } catch (const std::exception& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    }

    evsim::Table table;
    if (two_beam->parsed()) {
      table = evsim::two_beam_table(evsim::run_two_beam(config.two_beam));
    } else if (mzi->parsed()) {
      table = evsim::mzi_table(evsim::run_mzi(config.mzi));
    } else if (delayed->parsed()) {
      table = evsim::delayed_choice_table(
          evsim::run_delayed_choice(config.delayed_choice),
          config.delayed_choice.reflectivity);
    } else if (nmzi->parsed()) {
      table = evsim::neutron_mzi_table(
          evsim::run_neutron_mzi(config.neutron_mzi));
    } else if (eprb->parsed()) {
      const evsim::EprbResult data = evsim::run_eprb(config.eprb);
      std::vector<evsim::EprbWindowAnalysis> windows;
      for (double w : config.eprb_windows) {
        windows.push_back(
            evsim::analyze_eprb_window(data, config.eprb, w, 0.0));
      }
      table = evsim::eprb_table(windows);
      if (!dump_prefix.empty()) {
        evsim::write_file(dump_prefix + ".station1.csv",
                          evsim::to_csv(evsim::station_table(data.station1)));
        evsim::write_file(dump_prefix + ".station2.csv",
                          evsim::to_csv(evsim::station_table(data.station2)));
      }
    } else if (nbell->parsed()) {
      table = evsim::neutron_bell_table(
          evsim::run_neutron_bell(config.neutron_bell));
    } else if (oracle->parsed()) {
      table = oracle_table(oracle_which, oracle_r);
    } else if (analyze->parsed()) {
      const evsim::StationRecord s1 = evsim::station_from_table(
          evsim::from_csv(evsim::read_file(station1_path)));
      const evsim::StationRecord s2 = evsim::station_from_table(
          evsim::from_csv(evsim::read_file(station2_path)));
      double delta_g = 0.0;
      if (delta_g_arg == "auto") {
        delta_g = evsim::delta_g_estimate(s1, s2, 0.5).delta_g;
      } else {
        delta_g = std::stod(delta_g_arg);
      }
      table.header = {"W_ns", "a1_deg", "a2_deg", "Cpp", "Cpm",
                      "Cmp",  "Cmm",    "E1",     "E2",  "E"};
      std::stringstream ws(windows_arg);
      std::string token;
      while (std::getline(ws, token, ',')) {
        const double w = std::stod(token);
        const evsim::CoincidenceTable ct =
            evsim::coincidence_count(s1, s2, w, delta_g);
        for (const auto& key : station_setting_pairs(s1, s2)) {
          if (ct.pair_total(key) == 0) continue;
          auto [e1, e2, e] = evsim::correlations(ct, key);
          const auto& c = ct.counts.at(key);
          table.rows.push_back(
              {evsim::format_double(w),
               evsim::format_double(key.first * 180.0 / M_PI),
               evsim::format_double(key.second * 180.0 / M_PI),
               std::to_string(c[0]), std::to_string(c[1]),
               std::to_string(c[2]), std::to_string(c[3]),
               evsim::format_double(e1), evsim::format_double(e2),
               evsim::format_double(e)});
        }
      }
    }

    const double duration =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    emit(opts, table, config, duration);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
