#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evsim/experiments/experiments.hpp"

namespace evsim {

// All experiment settings in one place; the JSON config file has one
// optional section per experiment and unknown keys are rejected.
struct RunConfig {
  TwoBeamConfig two_beam;
  MziConfig mzi;
  DelayedChoiceConfig delayed_choice;
  std::vector<double> delayed_choice_r_sweep = {0.0, 0.05, 0.2, 0.5};
  NeutronMziConfig neutron_mzi;
  EprbConfig eprb;
  std::vector<double> eprb_windows = {2.0, 50.0, 200'000.0};
  NeutronBellConfig neutron_bell;
};

// Parses the JSON text; throws std::runtime_error with a message naming
// the offending key on schema violations.
RunConfig parse_config(const std::string& json_text);

// Stable digest of the parsed configuration: changes iff a field does.
std::uint64_t config_digest(const RunConfig& config);

void apply_seed(RunConfig& config, std::uint64_t seed);
void apply_events(RunConfig& config, long long events);

}  // namespace evsim
