#include "evsim/cli/config.hpp"

#include <json.hpp>
#include <set>
#include <sstream>
#include <stdexcept>

#include "evsim/core/rng.hpp"

namespace evsim {
namespace {

using nlohmann::json;

void check_keys(const json& section, const std::string& name,
                const std::set<std::string>& allowed) {
  if (!section.is_object()) {
    throw std::runtime_error("config: section '" + name +
                             "' must be an object");
  }
  for (const auto& [key, value] : section.items()) {
    (void)value;
    if (!allowed.count(key)) {
      throw std::runtime_error("config: unknown key '" + name + "." + key +
                               "'");
    }
  }
}

template <typename T>
void get(const json& section, const char* key, T& target) {
  if (section.contains(key)) target = section.at(key).template get<T>();
}

void parse_two_beam(const json& s, TwoBeamConfig& c) {
  check_keys(s, "two_beam",
             {"events", "gamma", "a", "d", "X", "mode", "fixed_index",
              "group_size", "seed"});
  get(s, "events", c.events);
  get(s, "gamma", c.gamma);
  get(s, "a", c.a);
  get(s, "d", c.d);
  get(s, "X", c.X);
  get(s, "fixed_index", c.fixed_index);
  get(s, "group_size", c.group_size);
  get(s, "seed", c.seed);
  if (s.contains("mode")) {
    const std::string mode = s.at("mode").get<std::string>();
    if (mode == "random") {
      c.mode = SourceMode::random_source;
    } else if (mode == "fixed") {
      c.mode = SourceMode::fixed_source;
    } else if (mode == "alternating") {
      c.mode = SourceMode::alternating;
    } else {
      throw std::runtime_error("config: two_beam.mode must be random, fixed "
                               "or alternating");
    }
  }
}

void parse_mzi(const json& s, MziConfig& c) {
  check_keys(s, "mzi",
             {"events_per_point", "gamma", "phi0_start_deg", "phi0_stop_deg",
              "phi0_step_deg", "phi1_deg", "seed"});
  get(s, "events_per_point", c.events_per_point);
  get(s, "gamma", c.gamma);
  get(s, "phi0_start_deg", c.phi0_start_deg);
  get(s, "phi0_stop_deg", c.phi0_stop_deg);
  get(s, "phi0_step_deg", c.phi0_step_deg);
  get(s, "phi1_deg", c.phi1_deg);
  get(s, "seed", c.seed);
}

void parse_delayed_choice(const json& s, DelayedChoiceConfig& c,
                          std::vector<double>& r_sweep) {
  check_keys(s, "delayed_choice",
             {"events_per_point", "gamma", "reflectivity", "r_sweep",
              "phi_start_deg", "phi_stop_deg", "phi_step_deg", "seed"});
  get(s, "events_per_point", c.events_per_point);
  get(s, "gamma", c.gamma);
  get(s, "reflectivity", c.reflectivity);
  get(s, "phi_start_deg", c.phi_start_deg);
  get(s, "phi_stop_deg", c.phi_stop_deg);
  get(s, "phi_step_deg", c.phi_step_deg);
  get(s, "seed", c.seed);
  get(s, "r_sweep", r_sweep);
}

void parse_neutron_mzi(const json& s, NeutronMziConfig& c) {
  check_keys(s, "neutron_mzi",
             {"events_per_point", "gamma", "reflectivity", "chi_start_deg",
              "chi_stop_deg", "chi_step_deg", "noise_half_width_deg", "seed"});
  get(s, "events_per_point", c.events_per_point);
  get(s, "gamma", c.gamma);
  get(s, "reflectivity", c.reflectivity);
  get(s, "chi_start_deg", c.chi_start_deg);
  get(s, "chi_stop_deg", c.chi_stop_deg);
  get(s, "chi_step_deg", c.chi_step_deg);
  get(s, "seed", c.seed);
  if (s.contains("noise_half_width_deg")) {
    c.noise_half_width =
        s.at("noise_half_width_deg").get<double>() * M_PI / 180.0;
  }
}

void parse_eprb(const json& s, EprbConfig& c, std::vector<double>& windows) {
  check_keys(s, "eprb",
             {"pairs", "t0_ns", "pair_spacing_ns", "a1_deg", "a1_prime_deg",
              "a2_deg", "a2_prime_deg", "windows_ns", "seed"});
  get(s, "pairs", c.pairs);
  get(s, "t0_ns", c.t0);
  get(s, "pair_spacing_ns", c.pair_spacing);
  get(s, "seed", c.seed);
  get(s, "windows_ns", windows);
  auto angle = [&](const char* key, double& target) {
    if (s.contains(key)) target = s.at(key).get<double>() * M_PI / 180.0;
  };
  angle("a1_deg", c.a1);
  angle("a1_prime_deg", c.a1_prime);
  angle("a2_deg", c.a2);
  angle("a2_prime_deg", c.a2_prime);
}

void parse_neutron_bell(const json& s, NeutronBellConfig& c) {
  check_keys(s, "neutron_bell",
             {"events_per_count", "gamma", "reflectivity", "alphas_deg",
              "chis_deg", "random_chi_per_event", "seed"});
  get(s, "events_per_count", c.events_per_count);
  get(s, "gamma", c.gamma);
  get(s, "reflectivity", c.reflectivity);
  get(s, "alphas_deg", c.alphas_deg);
  get(s, "chis_deg", c.chis_deg);
  get(s, "random_chi_per_event", c.random_chi_per_event);
  get(s, "seed", c.seed);
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root = json::parse(json_text);
  check_keys(root, "<root>",
             {"two_beam", "mzi", "delayed_choice", "neutron_mzi", "eprb",
              "neutron_bell", "seed"});
  RunConfig config;
  if (root.contains("two_beam")) parse_two_beam(root["two_beam"], config.two_beam);
  if (root.contains("mzi")) parse_mzi(root["mzi"], config.mzi);
  if (root.contains("delayed_choice")) {
    parse_delayed_choice(root["delayed_choice"], config.delayed_choice,
                         config.delayed_choice_r_sweep);
  }
  if (root.contains("neutron_mzi")) {
    parse_neutron_mzi(root["neutron_mzi"], config.neutron_mzi);
  }
  if (root.contains("eprb")) {
    parse_eprb(root["eprb"], config.eprb, config.eprb_windows);
  }
  if (root.contains("neutron_bell")) {
    parse_neutron_bell(root["neutron_bell"], config.neutron_bell);
  }
  if (root.contains("seed")) {
    apply_seed(config, root["seed"].get<std::uint64_t>());
  }
  return config;
}

std::uint64_t config_digest(const RunConfig& c) {
  std::ostringstream ss;
  ss.precision(17);
  ss << c.two_beam.events << '|' << c.two_beam.gamma << '|' << c.two_beam.a
     << '|' << c.two_beam.d << '|' << c.two_beam.X << '|'
     << static_cast<int>(c.two_beam.mode) << '|' << c.two_beam.fixed_index
     << '|' << c.two_beam.group_size << '|' << c.two_beam.seed << '|'
     << c.mzi.events_per_point << '|' << c.mzi.gamma << '|'
     << c.mzi.phi0_start_deg << '|' << c.mzi.phi0_stop_deg << '|'
     << c.mzi.phi0_step_deg << '|' << c.mzi.phi1_deg << '|' << c.mzi.seed
     << '|' << c.delayed_choice.events_per_point << '|'
     << c.delayed_choice.gamma << '|' << c.delayed_choice.reflectivity << '|'
     << c.delayed_choice.phi_start_deg << '|' << c.delayed_choice.phi_stop_deg
     << '|' << c.delayed_choice.phi_step_deg << '|' << c.delayed_choice.seed;
  for (double r : c.delayed_choice_r_sweep) ss << '|' << r;
  ss << '|' << c.neutron_mzi.events_per_point << '|' << c.neutron_mzi.gamma
     << '|' << c.neutron_mzi.reflectivity << '|' << c.neutron_mzi.chi_start_deg
     << '|' << c.neutron_mzi.chi_stop_deg << '|' << c.neutron_mzi.chi_step_deg
     << '|' << c.neutron_mzi.noise_half_width << '|' << c.neutron_mzi.seed
     << '|' << c.eprb.pairs << '|' << c.eprb.t0 << '|' << c.eprb.pair_spacing
     << '|' << c.eprb.a1 << '|' << c.eprb.a1_prime << '|' << c.eprb.a2 << '|'
     << c.eprb.a2_prime << '|' << c.eprb.seed;
  for (double w : c.eprb_windows) ss << '|' << w;
  ss << '|' << c.neutron_bell.events_per_count << '|' << c.neutron_bell.gamma
     << '|' << c.neutron_bell.reflectivity << '|'
     << c.neutron_bell.random_chi_per_event << '|' << c.neutron_bell.seed;
  for (double a : c.neutron_bell.alphas_deg) ss << '|' << a;
  for (double x : c.neutron_bell.chis_deg) ss << '|' << x;
  return fnv1a64(ss.str());
}

void apply_seed(RunConfig& config, std::uint64_t seed) {
  config.two_beam.seed = seed;
  config.mzi.seed = seed;
  config.delayed_choice.seed = seed;
  config.neutron_mzi.seed = seed;
  config.eprb.seed = seed;
  config.neutron_bell.seed = seed;
}

void apply_events(RunConfig& config, long long events) {
  config.two_beam.events = events;
  config.mzi.events_per_point = events;
  config.delayed_choice.events_per_point = events;
  config.neutron_mzi.events_per_point = events;
  config.eprb.pairs = events;
  config.neutron_bell.events_per_count = events;
}

}  // namespace evsim
