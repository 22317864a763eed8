#include <doctest.h>

#include <cstring>
#include <string>

#include "tgtsp.h"

namespace {

const char* kSmoke = R"({
  "cities": [
    {"id": 1, "region": {"disk": {"center": [2.0, 0.0], "radius": 0.5}}, "dwell_min": 0.3},
    {"id": 2, "region": {"disk": {"center": [2.0, 3.0], "radius": 0.5}}, "dwell_min": 0.3}
  ],
  "dynamics": {"norm": "linf", "v_max": 1.0, "u_max": 1.0},
  "problem": "fast_tsp",
  "boundary": {"closed_at": [0.0, 0.0]},
  "horizon_guess": 16.0
})";

struct Owned {
  char* ptr = nullptr;
  ~Owned() { tg_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

}  // namespace

TEST_CASE("scenario parse/serialize round trip through the C API") {
  tg_scenario* s = nullptr;
  Owned err;
  REQUIRE(tg_scenario_parse(kSmoke, &s, &err.ptr) == TG_OK);
  REQUIRE(s != nullptr);
  CHECK(tg_scenario_city_count(s) == 2);

  Owned json1, json2;
  REQUIRE(tg_scenario_serialize(s, &json1.ptr) == TG_OK);
  tg_scenario* s2 = nullptr;
  REQUIRE(tg_scenario_parse(json1.ptr, &s2, nullptr) == TG_OK);
  REQUIRE(tg_scenario_serialize(s2, &json2.ptr) == TG_OK);
  CHECK(json1.str() == json2.str());
  tg_scenario_free(s2);
  tg_scenario_free(s);
}

TEST_CASE("parse errors carry a message and a parse status") {
  tg_scenario* s = nullptr;
  Owned err;
  CHECK(tg_scenario_parse("{ not json", &s, &err.ptr) == TG_ERR_PARSE);
  CHECK(s == nullptr);
  CHECK_FALSE(err.str().empty());

  // structurally valid JSON with a broken invariant
  Owned err2;
  const char* bad = R"({"cities":[{"id":1,
    "region":{"disk":{"center":[0.0,0.0],"radius":-2.0}}}]})";
  CHECK(tg_scenario_parse(bad, &s, &err2.ptr) == TG_ERR_INVALID);
  CHECK(err2.str().find("radius") != std::string::npos);
}

TEST_CASE("end-to-end solve, verify and export through the C API") {
  tg_scenario* s = nullptr;
  REQUIRE(tg_scenario_parse(kSmoke, &s, nullptr) == TG_OK);

  tg_solve_options opts;
  tg_solve_options_defaults(&opts);
  opts.nodes = 60;
  opts.multistart = 2;
  opts.rng_seed = 42;

  tg_run* run = nullptr;
  Owned err;
  REQUIRE(tg_solve(s, &opts, &run, &err.ptr) == TG_OK);
  REQUIRE(run != nullptr);
  CHECK(tg_run_feasible(run) == 1);

  Owned report, manifest;
  CHECK(tg_run_report_json(run, &report.ptr) == TG_OK);
  CHECK(report.str().find("\"hamiltonian\": true") != std::string::npos);
  CHECK(tg_run_manifest_json(run, &manifest.ptr) == TG_OK);
  CHECK(manifest.str().find("fnv1a64:") != std::string::npos);

  tg_trajectory* traj = nullptr;
  REQUIRE(tg_run_trajectory(run, &traj) == TG_OK);
  CHECK(tg_trajectory_node_count(traj) == 60);

  // verify the solver's own artifact
  Owned verify_report;
  int passes = 0;
  REQUIRE(tg_verify(s, traj, &verify_report.ptr, &passes, nullptr) == TG_OK);
  CHECK(passes == 1);

  // trajectory JSON round trip
  Owned tjson;
  REQUIRE(tg_trajectory_serialize(traj, &tjson.ptr) == TG_OK);
  tg_trajectory* traj2 = nullptr;
  REQUIRE(tg_trajectory_parse(tjson.ptr, &traj2, nullptr) == TG_OK);
  Owned tjson2;
  REQUIRE(tg_trajectory_serialize(traj2, &tjson2.ptr) == TG_OK);
  CHECK(tjson.str() == tjson2.str());

  // exports
  Owned csv, svg;
  REQUIRE(tg_export_csv(s, traj, &csv.ptr, nullptr) == TG_OK);
  int rows = 0;
  for (char c : csv.str())
    if (c == '\n') ++rows;
  CHECK(rows == 60);
  REQUIRE(tg_export_svg(s, traj, &svg.ptr, nullptr) == TG_OK);
  const std::string svg_text = svg.str();
  std::size_t polylines = 0;
  for (std::size_t pos = svg_text.find("<polyline"); pos != std::string::npos;
       pos = svg_text.find("<polyline", pos + 1))
    ++polylines;
  CHECK(polylines == 1);
  std::size_t labels = 0;
  for (std::size_t pos = svg_text.find("<text"); pos != std::string::npos;
       pos = svg_text.find("<text", pos + 1))
    ++labels;
  CHECK(labels == 2);

  tg_trajectory_free(traj2);
  tg_trajectory_free(traj);
  tg_run_free(run);
  tg_scenario_free(s);
}

TEST_CASE("null arguments are rejected") {
  CHECK(tg_scenario_parse(nullptr, nullptr, nullptr) == TG_ERR_INVALID);
  CHECK(tg_run_feasible(nullptr) == 0);
  CHECK(tg_scenario_city_count(nullptr) == 0);
  tg_string_free(nullptr);  // must be a no-op
}
