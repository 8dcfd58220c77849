#include <doctest.h>

#include <cstdio>
#include <json.hpp>
#include <string>

#include "evsim/cli/config.hpp"
#include "evsim/cli/io.hpp"

using namespace evsim;

TEST_CASE("csv round trip") {
  Table t;
  t.header = {"phi_deg", "N0", "N1"};
  t.rows = {{"0", "12", "88"}, {"10", "15", "85"}, {"-20.5", "0", "100"}};
  CHECK(from_csv(to_csv(t)) == t);
}

TEST_CASE("csv layout is stable") {
  Table t;
  t.header = {"a", "b"};
  t.rows = {{"1", "2"}};
  CHECK(to_csv(t) == "a,b\n1,2\n");
}

TEST_CASE("json serialization is parseable and faithful") {
  Table t;
  t.header = {"x", "y"};
  t.rows = {{"1.5", "two"}};
  const auto parsed = nlohmann::json::parse(to_json(t));
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0]["x"] == "1.5");
  CHECK(parsed[0]["y"] == "two");
}

TEST_CASE("station record round trip") {
  StationRecord record = {{+1, 0.0, 0.0}, {-1, 123.456, M_PI / 8},
                          {+1, 9.0e6, 3 * M_PI / 8}};
  const StationRecord back = station_from_table(station_table(record));
  REQUIRE(back.size() == record.size());
  for (std::size_t n = 0; n < record.size(); ++n) {
    CHECK(back[n].x == record[n].x);
    CHECK(back[n].t == doctest::Approx(record[n].t).epsilon(1e-9));
    CHECK(back[n].setting ==
          doctest::Approx(record[n].setting).epsilon(1e-9));
  }
}

TEST_CASE("experiment tables carry the documented columns") {
  MziConfig mzi;
  mzi.events_per_point = 200;
  mzi.phi0_stop_deg = 20.0;
  const Table t = mzi_table(run_mzi(mzi));
  CHECK(t.header == std::vector<std::string>{"phi_deg", "N0", "N1", "N2",
                                             "N3"});
  CHECK(t.rows.size() == 3);
  CHECK(from_csv(to_csv(t)) == t);
}

TEST_CASE("file round trip") {
  const std::string path = "io_test_scratch.csv";
  write_file(path, "a,b\n1,2\n");
  CHECK(read_file(path) == "a,b\n1,2\n");
  std::remove(path.c_str());
  CHECK_THROWS(read_file("definitely/not/a/real/path.csv"));
}

TEST_CASE("config defaults and overrides") {
  const RunConfig defaults = parse_config("{}");
  CHECK(defaults.mzi.gamma == 0.98);
  CHECK(defaults.eprb.pairs == 300'000);
  const RunConfig tuned = parse_config(R"({
    "mzi": {"gamma": 0.5, "events_per_point": 77},
    "eprb": {"a1_deg": 45.0, "windows_ns": [1.0, 2.0]}
  })");
  CHECK(tuned.mzi.gamma == 0.5);
  CHECK(tuned.mzi.events_per_point == 77);
  CHECK(tuned.eprb.a1 == doctest::Approx(M_PI / 4).epsilon(1e-12));
  CHECK(tuned.eprb_windows == std::vector<double>{1.0, 2.0});
}

TEST_CASE("config rejects unknown keys") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"mzi": {"gamm": 0.5}})"),
                       doctest::Contains("mzi.gamm"), std::runtime_error);
  CHECK_THROWS_AS(parse_config(R"({"mzti": {}})"), std::runtime_error);
  CHECK_THROWS_AS(parse_config(R"({"two_beam": {"mode": "sideways"}})"),
                  std::runtime_error);
}

TEST_CASE("config digest tracks field changes") {
  RunConfig a = parse_config("{}");
  RunConfig b = parse_config("{}");
  CHECK(config_digest(a) == config_digest(b));
  b.mzi.gamma = 0.97;
  CHECK(config_digest(a) != config_digest(b));
  RunConfig c = parse_config("{}");
  c.eprb.seed = 99;
  CHECK(config_digest(a) != config_digest(c));
}

TEST_CASE("seed and event overrides reach every experiment") {
  RunConfig config = parse_config("{}");
  apply_seed(config, 42);
  CHECK(config.two_beam.seed == 42);
  CHECK(config.neutron_bell.seed == 42);
  apply_events(config, 500);
  CHECK(config.mzi.events_per_point == 500);
  CHECK(config.eprb.pairs == 500);
}
