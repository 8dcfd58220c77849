#pragma once

#include <string>
#include <vector>

#include "evsim/analysis/analysis.hpp"
#include "evsim/experiments/experiments.hpp"

namespace evsim {

// Minimal rectangular table: the common currency of every serializer.
// All result CSVs go through it, and parse(serialize(t)) == t.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  bool operator==(const Table&) const = default;
};

std::string to_csv(const Table& table);
Table from_csv(const std::string& text);
std::string to_json(const Table& table);

std::string format_double(double v);

// Result tables, column layouts documented in the README.
Table two_beam_table(const TwoBeamResult& result);
Table mzi_table(const std::vector<MziPoint>& points);
Table delayed_choice_table(const DelayedChoiceResult& result,
                           double reflectivity);
Table neutron_mzi_table(const std::vector<NeutronMziPoint>& points);
Table eprb_table(const std::vector<EprbWindowAnalysis>& windows);
Table neutron_bell_table(const std::vector<NeutronBellPoint>& points);

// Station event records for offline re-analysis.
Table station_table(const StationRecord& record);
StationRecord station_from_table(const Table& table);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace evsim
