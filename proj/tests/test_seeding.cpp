#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tgtsp/errors.hpp"
#include "tgtsp/seeding.hpp"
#include "tgtsp/walks.hpp"

using namespace tgtsp;
using namespace tgtsp::testing;

namespace {

Scenario corners_scenario() {
  Scenario s;
  s.cities.push_back(disk_city(1, {0.0, 0.0}, 0.1));
  s.cities.push_back(disk_city(2, {1.0, 0.0}, 0.1));
  s.cities.push_back(disk_city(3, {1.0, 1.0}, 0.1));
  s.cities.push_back(disk_city(4, {0.0, 1.0}, 0.1));
  s.boundary.closed_at = {0.0, 0.0};
  return s;
}

Scenario collinear_scenario() {
  Scenario s;
  s.cities.push_back(disk_city(1, {1.0, 0.0}, 0.1));
  s.cities.push_back(disk_city(2, {3.0, 0.0}, 0.1));
  s.boundary.closed_at = {0.0, 0.0};
  return s;
}

Scenario random_instance(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Scenario s;
  for (int i = 0; i < n; ++i) {
    const double ang = 2.0 * M_PI * i / n + 0.3 * u(rng);
    const double rad = 2.0 + 3.0 * u(rng);
    s.cities.push_back(
        disk_city(i + 1, {rad * std::cos(ang), rad * std::sin(ang)}, 0.05));
  }
  s.boundary.closed_at = {0.0, 0.0};
  return s;
}

}  // namespace

TEST_CASE("nearest neighbor + 2-opt on the unit square") {
  const Scenario s = corners_scenario();
  const TourPermutation perm = heuristic_tour(s, 0);
  CHECK(perm.length == doctest::Approx(4.0));
  // perimeter order starting at the corner on the start point
  CHECK(perm.order.front() == 1);
  CHECK((perm.order == std::vector<int>{1, 2, 3, 4} ||
         perm.order == std::vector<int>{1, 4, 3, 2}));
}

TEST_CASE("two collinear cities") {
  const Scenario s = collinear_scenario();
  const TourPermutation perm = heuristic_tour(s, 0);
  CHECK(perm.order == std::vector<int>{1, 2});
  CHECK(perm.length == doctest::Approx(6.0));
}

TEST_CASE("single city tour") {
  Scenario s;
  s.cities.push_back(disk_city(7, {3.0, 4.0}, 0.2));
  s.boundary.closed_at = {0.0, 0.0};
  const TourPermutation perm = heuristic_tour(s, 0);
  CHECK(perm.order == std::vector<int>{7});
  CHECK(perm.length == doctest::Approx(10.0));
}

TEST_CASE("brute force matches hand-computed optima") {
  CHECK(brute_force_tour(corners_scenario()).length == doctest::Approx(4.0));
  Scenario coll;
  coll.cities.push_back(disk_city(1, {1.0, 0.0}, 0.1));
  coll.cities.push_back(disk_city(2, {2.0, 0.0}, 0.1));
  coll.cities.push_back(disk_city(3, {3.0, 0.0}, 0.1));
  coll.boundary.closed_at = {0.0, 0.0};
  CHECK(brute_force_tour(coll).length == doctest::Approx(6.0));
  CHECK(brute_force_tour(coll).order == std::vector<int>{1, 2, 3});
}

TEST_CASE("brute force rejects large instances") {
  std::mt19937_64 rng(5);
  CHECK_THROWS_AS(brute_force_tour(random_instance(rng, 11)), ValidationError);
}

TEST_CASE("brute force is invariant to the city listing order") {
  std::mt19937_64 rng(31);
  Scenario s = random_instance(rng, 6);
  const TourPermutation a = brute_force_tour(s);
  std::reverse(s.cities.begin(), s.cities.end());
  const TourPermutation b = brute_force_tour(s);
  CHECK(a.order == b.order);
  CHECK(a.length == doctest::Approx(b.length));
}

TEST_CASE("heuristic never beats the brute-force optimum") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const Scenario s = random_instance(rng, 7);
    const TourPermutation h = heuristic_tour(s, trial);
    const TourPermutation b = brute_force_tour(s);
    CHECK(h.length >= b.length - 1e-9);
  }
}

TEST_CASE("2-opt improves on the raw nearest-neighbor length") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const Scenario s = random_instance(rng, 8);
    // raw nearest-neighbor length (no 2-opt): rebuild it here
    std::vector<int> left;
    for (const City& c : s.cities) left.push_back(c.id);
    Point2 cur = s.start_point();
    std::vector<int> nn_order;
    while (!left.empty()) {
      std::size_t pick = 0;
      double best = 1e300;
      for (std::size_t i = 0; i < left.size(); ++i) {
        const double d = norm2(s.city_by_id(left[i])->centroid_at(0.0) - cur);
        if (d < best - 1e-15) {
          best = d;
          pick = i;
        }
      }
      nn_order.push_back(left[pick]);
      cur = s.city_by_id(left[pick])->centroid_at(0.0);
      left.erase(left.begin() + pick);
    }
    const double nn_len = centroid_tour_length(s, nn_order);
    CHECK(heuristic_tour(s, 0).length <= nn_len + 1e-9);
  }
}

TEST_CASE("seed trajectory is hamiltonian and respects dwell and speed") {
  // L-shaped layout: the closing leg stays clear of the first city
  Scenario s;
  s.cities.push_back(disk_city(1, {2.0, 0.0}, 0.5));
  s.cities.push_back(disk_city(2, {2.0, 3.0}, 0.5));
  s.boundary.closed_at = {0.0, 0.0};
  s.cities[0].dwell_min = 0.3;
  s.cities[1].dwell_min = 0.3;
  s.dynamics.v_max = 1.0;
  s.dynamics.u_max = 1.0;
  const TourPermutation perm = heuristic_tour(s, 0);
  const Trajectory seed = seed_trajectory(s, perm, 8);

  CHECK(is_hamiltonian(seed, s));
  const TourReport rep = tour_report(seed, s);
  for (const CityReport& c : rep.cities) CHECK(c.time_on_task >= 0.3);
  // boundary closure by construction
  CHECK(norm2(seed.labels.front() - seed.labels.back()) < 1e-12);

  double vmax_seen = 0.0;
  for (const auto& x : seed.states)
    vmax_seen = std::max(vmax_seen, norm_inf({x[2], x[3]}));
  CHECK(vmax_seen <= 0.9 * s.dynamics.v_max + 1e-12);
}

TEST_CASE("seeds aim off-centroid when a zone covers the centroid") {
  Scenario s;
  s.cities.push_back(disk_city(1, {4.0, 0.0}, 1.0));
  s.boundary.closed_at = {0.0, 0.0};
  // zone sits on the centroid but leaves most of the city free
  s.zones.push_back(Ellipse{{4.45, 0.0}, 0.5, 0.3});
  const TourPermutation perm{{1}, 8.0};
  const Trajectory seed = seed_trajectory(s, perm, 8);
  CHECK(is_hamiltonian(seed, s));
  // the loiter point clears the zone
  double worst = 1e300;
  for (const Point2& p : seed.labels)
    worst = std::min(worst, zone_clearance(s.zones[0], p));
  const TourReport rep = tour_report(seed, s);
  CHECK(rep.cities[0].time_on_task > 0.0);
}

TEST_CASE("a city fully covered by a zone fails seeding with its name") {
  Scenario s;
  s.cities.push_back(disk_city(3, {4.0, 0.0}, 0.4));
  s.boundary.closed_at = {0.0, 0.0};
  s.zones.push_back(Ellipse{{4.0, 0.05}, 2.0, 2.0});
  try {
    seed_trajectory(s, TourPermutation{{3}, 8.0}, 8);
    FAIL("expected a seeding error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("city 3") != std::string::npos);
  }
}
