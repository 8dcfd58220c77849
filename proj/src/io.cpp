#include "evsim/cli/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace evsim {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string to_csv(const Table& table) {
  std::ostringstream out;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    out << (c ? "," : "") << table.header[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "," : "") << row[c];
    }
    out << '\n';
  }
  return out.str();
}

Table from_csv(const std::string& text) {
  Table table;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (first) {
      table.header = std::move(cells);
      first = false;
    } else {
      table.rows.push_back(std::move(cells));
    }
  }
  return table;
}

std::string to_json(const Table& table) {
  std::ostringstream out;
  out << "[\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << "  {";
    for (std::size_t c = 0; c < table.header.size(); ++c) {
      out << (c ? ", " : "") << '"' << table.header[c] << "\": \""
          << table.rows[r][c] << '"';
    }
    out << (r + 1 < table.rows.size() ? "},\n" : "}\n");
  }
  out << "]\n";
  return out.str();
}

Table two_beam_table(const TwoBeamResult& result) {
  Table t;
  t.header = {"theta_deg", "counts", "clicks"};
  for (int k = 0; k < DetectorScreen::kCount; ++k) {
    t.rows.push_back({format_double(DetectorScreen::angle_deg(k)),
                      std::to_string(result.arrivals[k]),
                      std::to_string(result.clicks[k])});
  }
  return t;
}

Table mzi_table(const std::vector<MziPoint>& points) {
  Table t;
  t.header = {"phi_deg", "N0", "N1", "N2", "N3"};
  for (const auto& p : points) {
    t.rows.push_back({format_double(p.phi0 * 180.0 / M_PI),
                      std::to_string(p.n0), std::to_string(p.n1),
                      std::to_string(p.n2), std::to_string(p.n3)});
  }
  return t;
}

Table delayed_choice_table(const DelayedChoiceResult& result,
                           double reflectivity) {
  Table t;
  t.header = {"phi_deg", "R", "config", "N0", "N1", "N0_path0", "N0_path1"};
  for (const auto& p : result.points) {
    const std::string phi = format_double(p.phi * 180.0 / M_PI);
    const std::string r = format_double(reflectivity);
    t.rows.push_back({phi, r, "closed", std::to_string(p.closed_n0),
                      std::to_string(p.closed_n1),
                      std::to_string(p.closed_n0_path0),
                      std::to_string(p.closed_n0_path1)});
    t.rows.push_back({phi, r, "open", std::to_string(p.open_n0),
                      std::to_string(p.open_n1),
                      std::to_string(p.open_n0_path0),
                      std::to_string(p.open_n0_path1)});
    t.rows.push_back({phi, r, "only-path-0", std::to_string(p.only_path0_n0),
                      std::to_string(p.only_path0_n1),
                      std::to_string(p.only_path0_n0), "0"});
    t.rows.push_back({phi, r, "only-path-1", std::to_string(p.only_path1_n0),
                      std::to_string(p.only_path1_n1), "0",
                      std::to_string(p.only_path1_n0)});
  }
  return t;
}

Table neutron_mzi_table(const std::vector<NeutronMziPoint>& points) {
  Table t;
  t.header = {"chi_deg", "NO", "NH"};
  for (const auto& p : points) {
    t.rows.push_back({format_double(p.chi * 180.0 / M_PI),
                      std::to_string(p.n_o), std::to_string(p.n_h)});
  }
  return t;
}

Table eprb_table(const std::vector<EprbWindowAnalysis>& windows) {
  Table t;
  t.header = {"W_ns", "a1",  "a2", "Cpp", "Cpm", "Cmp",
              "Cmm",  "E1",  "E2", "E",   "S"};
  for (const auto& w : windows) {
    for (const auto& row : w.rows) {
      t.rows.push_back({format_double(w.window),
                        format_double(row.s1 * 180.0 / M_PI),
                        format_double(row.s2 * 180.0 / M_PI),
                        std::to_string(row.counts[0]),
                        std::to_string(row.counts[1]),
                        std::to_string(row.counts[2]),
                        std::to_string(row.counts[3]), format_double(row.e1),
                        format_double(row.e2), format_double(row.e),
                        format_double(w.s)});
    }
  }
  return t;
}

Table neutron_bell_table(const std::vector<NeutronBellPoint>& points) {
  Table t;
  t.header = {"alpha_deg", "chi_deg", "N1", "N2", "N3", "N4", "E"};
  for (const auto& p : points) {
    t.rows.push_back(
        {format_double(p.alpha * 180.0 / M_PI),
         format_double(p.chi * 180.0 / M_PI), std::to_string(p.n1),
         std::to_string(p.n2), std::to_string(p.n3), std::to_string(p.n4),
         format_double(p.e)});
  }
  return t;
}

Table station_table(const StationRecord& record) {
  Table t;
  t.header = {"x", "t_ns", "setting_deg"};
  for (const auto& e : record) {
    t.rows.push_back({std::to_string(e.x), format_double(e.t),
                      format_double(e.setting * 180.0 / M_PI)});
  }
  return t;
}

StationRecord station_from_table(const Table& table) {
  if (table.header != std::vector<std::string>{"x", "t_ns", "setting_deg"}) {
    throw std::runtime_error("station_from_table: unexpected columns");
  }
  StationRecord record;
  for (const auto& row : table.rows) {
    if (row.size() != 3) {
      throw std::runtime_error("station_from_table: bad row");
    }
    record.push_back({std::stoi(row[0]), std::stod(row[1]),
                      std::stod(row[2]) * M_PI / 180.0});
  }
  return record;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace evsim
