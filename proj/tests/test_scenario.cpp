#include <doctest.h>

#include <random>

#include "tgtsp/errors.hpp"
#include "tgtsp/scenario.hpp"

using namespace tgtsp;

namespace {

const char* kMinimal = R"({
  "cities": [{"id": 1, "region": {"disk": {"center": [2.0, 0.0], "radius": 0.5}}}]
})";

Scenario random_scenario(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Scenario s;
  const int n = 2 + static_cast<int>(u(rng) * 4);
  for (int i = 0; i < n; ++i) {
    City c;
    c.id = i + 1;
    // spaced centers keep the disjointness validation happy
    c.region.base = Disk{{3.0 * i + u(rng), 4.0 * (i % 2) + u(rng)},
                         0.3 + 0.4 * u(rng)};
    c.dwell_min = 0.5 * u(rng);
    c.score = 1.0 + u(rng);
    c.revenue_target = u(rng);
    c.return_rate = 0.5 + u(rng);
    if (u(rng) < 0.3)
      c.region.motion = MotionPath{{{0.0, {0.0, 0.0}}, {1.0 + u(rng), {0.2, 0.1}}}};
    if (u(rng) < 0.3) c.region.window = TimeWindow{u(rng), 2.0 + u(rng)};
    s.cities.push_back(c);
  }
  s.zones.push_back(Ellipse{{-10.0, -10.0}, 0.8, 0.5});
  s.dynamics.norm_kind = u(rng) < 0.5 ? NormKind::linf : NormKind::l2;
  s.dynamics.v_max = 0.5 + u(rng);
  s.dynamics.u_max = 0.5 + u(rng);
  s.problem_kind = static_cast<ProblemKind>(static_cast<int>(u(rng) * 6) % 6);
  if (u(rng) < 0.5) {
    s.boundary.kind = Boundary::Kind::closed;
    s.boundary.closed_at = {-2.0, -2.0};
  } else {
    s.boundary.kind = Boundary::Kind::sets;
    s.boundary.start_set = 1;
    s.boundary.end_set = n;
  }
  if (u(rng) < 0.5)
    s.resources.push_back({ResourceKind::time_max, {}, 20.0 + u(rng)});
  s.horizon_guess = 10.0 + 20.0 * u(rng);
  s.cost.alpha = u(rng);
  s.cost.power_model =
      u(rng) < 0.5 ? PowerModel::none : PowerModel::control_quadratic;
  return s;
}

}  // namespace

TEST_CASE("minimal document parses with defaults") {
  const Scenario s = parse_scenario(kMinimal);
  REQUIRE(s.cities.size() == 1);
  CHECK(s.cities[0].dwell_min == 0.0);
  CHECK(s.cities[0].score == 1.0);
  CHECK(s.cities[0].return_rate == 1.0);
  CHECK_FALSE(s.cities[0].region.window.has_value());
  CHECK(s.zones.empty());
  CHECK(s.problem_kind == ProblemKind::fast_cemtspfn);
  CHECK(s.boundary.kind == Boundary::Kind::closed);
}

TEST_CASE("bad window is rejected naming the field") {
  const char* doc = R"({
    "cities": [{"id": 1,
      "region": {"disk": {"center": [0.0, 0.0], "radius": 1.0}},
      "window": [2.0, 1.0]}]
  })";
  try {
    parse_scenario(doc);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("window") != std::string::npos);
  }
}

TEST_CASE("syntax errors report a position") {
  try {
    parse_scenario("{ \"cities\": [ }");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("scenario") != std::string::npos);
  }
}

TEST_CASE("unknown problem kind is rejected") {
  const char* doc = R"({
    "cities": [{"id": 1, "region": {"disk": {"center": [0.0, 0.0], "radius": 1.0}}}],
    "problem": "grand_tour"
  })";
  CHECK_THROWS_AS(parse_scenario(doc), ValidationError);
}

TEST_CASE("overlapping city regions are rejected") {
  const char* doc = R"({
    "cities": [
      {"id": 1, "region": {"disk": {"center": [0.0, 0.0], "radius": 1.0}}},
      {"id": 2, "region": {"disk": {"center": [1.5, 0.0], "radius": 1.0}}}
    ]
  })";
  CHECK_THROWS_AS(parse_scenario(doc), ValidationError);
}

TEST_CASE("duplicate ids are rejected") {
  const char* doc = R"({
    "cities": [
      {"id": 1, "region": {"disk": {"center": [0.0, 0.0], "radius": 0.5}}},
      {"id": 1, "region": {"disk": {"center": [5.0, 0.0], "radius": 0.5}}}
    ]
  })";
  CHECK_THROWS_AS(parse_scenario(doc), ValidationError);
}

TEST_CASE("zone overlapping a city is rejected") {
  const char* doc = R"({
    "cities": [{"id": 1, "region": {"disk": {"center": [0.0, 0.0], "radius": 1.0}}}],
    "zones": [{"ellipse": {"center": [1.2, 0.0], "a": 0.5, "b": 0.5}}]
  })";
  CHECK_THROWS_AS(parse_scenario(doc), ValidationError);
}

TEST_CASE("serialize then parse is the identity") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 50; ++i) {
    const Scenario s = random_scenario(rng);
    const std::string text = serialize_scenario(s);
    const Scenario back = parse_scenario(text);
    CHECK(back == s);
    // serialization is deterministic
    CHECK(serialize_scenario(back) == text);
  }
}

TEST_CASE("serialization is byte-deterministic and sensitive to alpha") {
  const Scenario s = parse_scenario(kMinimal);
  CHECK(serialize_scenario(s) == serialize_scenario(s));
  Scenario s2 = s;
  s2.cost.alpha = 0.75;
  CHECK(serialize_scenario(s2) != serialize_scenario(s));
}

TEST_CASE("helper accessors") {
  const Scenario s = parse_scenario(kMinimal);
  CHECK(s.city_by_id(1) != nullptr);
  CHECK(s.city_by_id(9) == nullptr);
  CHECK(s.characteristic_radius() == doctest::Approx(0.5));
  CHECK(s.start_point().x == doctest::Approx(0.0));
}
