#include "tgtsp/seeding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tgtsp/errors.hpp"

namespace tgtsp {

namespace {

constexpr double kMinLoiter = 0.05;   // keeps visits visible to the verifier
constexpr double kMinLegTime = 1e-3;  // strict time monotonicity floor

double leg_distance(Point2 a, Point2 b, NormKind norm) {
  return norm == NormKind::l2 ? norm2(b - a) : norm_inf(b - a);
}

double leg_duration(Point2 a, Point2 b, const DynamicsConfig& dyn) {
  const double dist = leg_distance(a, b, dyn.norm_kind);
  const double cruise = dist / (0.9 * dyn.v_max);
  // rest-to-rest acceleration floor so the horizon guess is not absurdly low
  const double accel = 2.0 * std::sqrt(dist / (0.9 * dyn.u_max));
  return std::max({cruise, accel, kMinLegTime});
}

}  // namespace

double centroid_tour_length(const Scenario& scenario,
                            const std::vector<int>& order) {
  Point2 cur = scenario.start_point();
  double len = 0.0;
  for (int id : order) {
    const Point2 c = scenario.city_by_id(id)->centroid_at(0.0);
    len += norm2(c - cur);
    cur = c;
  }
  len += norm2(scenario.end_point() - cur);
  return len;
}

namespace {

// first-improvement 2-opt on the open order (endpoints fixed by the
// boundary); restarts the scan after every accepted reversal
void two_opt(const Scenario& scenario, std::vector<int>& order, double& length) {
  const std::size_t n = order.size();
  if (n < 3) {
    length = centroid_tour_length(scenario, order);
    return;
  }
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i < n - 1 && !improved; ++i) {
      for (std::size_t j = i + 1; j < n && !improved; ++j) {
        std::reverse(order.begin() + i, order.begin() + j + 1);
        const double candidate = centroid_tour_length(scenario, order);
        if (candidate < length - 1e-12) {
          length = candidate;
          improved = true;
        } else {
          std::reverse(order.begin() + i, order.begin() + j + 1);
        }
      }
    }
  }
}

}  // namespace

TourPermutation heuristic_tour(const Scenario& scenario, std::uint64_t rng_seed) {
  std::vector<int> ids;
  for (const City& c : scenario.cities) ids.push_back(c.id);
  std::sort(ids.begin(), ids.end());

  std::vector<int> order;
  std::vector<bool> used(ids.size(), false);
  Point2 cur = scenario.start_point();

  // restarts force a different entry city; seed 0 is the plain greedy run
  if (rng_seed != 0) {
    const std::size_t first = rng_seed % ids.size();
    order.push_back(ids[first]);
    used[first] = true;
    cur = scenario.city_by_id(ids[first])->centroid_at(0.0);
  }
  while (order.size() < ids.size()) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t pick = 0;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (used[i]) continue;
      const double d =
          norm2(scenario.city_by_id(ids[i])->centroid_at(0.0) - cur);
      if (d < best - 1e-15) {
        best = d;
        pick = i;
      }
    }
    used[pick] = true;
    order.push_back(ids[pick]);
    cur = scenario.city_by_id(ids[pick])->centroid_at(0.0);
  }

  TourPermutation perm;
  perm.order = std::move(order);
  perm.length = centroid_tour_length(scenario, perm.order);
  two_opt(scenario, perm.order, perm.length);
  return perm;
}

TourPermutation brute_force_tour(const Scenario& scenario) {
  if (scenario.cities.size() > 10)
    throw ValidationError(
        "brute_force_tour: exhaustive search limited to 10 cities");
  std::vector<int> ids;
  for (const City& c : scenario.cities) ids.push_back(c.id);
  std::sort(ids.begin(), ids.end());

  TourPermutation best;
  best.length = std::numeric_limits<double>::infinity();
  std::vector<int> order = ids;
  do {
    const double len = centroid_tour_length(scenario, order);
    // strict improvement keeps the lexicographically smallest tie
    if (len < best.length - 1e-12) {
      best.length = len;
      best.order = order;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

namespace {

// Aim point inside the city, pushed off any zone it would otherwise sit in.
Point2 city_aim_point(const Scenario& scenario, const City& city,
                      double arrival) {
  const Point2 centroid = city.centroid_at(arrival);
  auto min_clearance = [&](Point2 p) {
    double worst = std::numeric_limits<double>::infinity();
    for (const Region& z : scenario.zones)
      worst = std::min(worst, zone_clearance(z, p));
    return worst;
  };
  if (scenario.zones.empty() || min_clearance(centroid) >= 0.02)
    return centroid;

  // polar sampling of the city interior for the most zone-clear point
  const Point2 offset = city.region.offset_at(arrival);
  const double rb = bounding_radius(city.region.base);
  Point2 best = centroid;
  double best_clear = min_clearance(centroid);
  for (int ir = 0; ir <= 4; ++ir) {
    const double rr = rb * (0.95 * ir / 4.0);
    for (int ia = 0; ia < 16; ++ia) {
      const double ang = 2.0 * M_PI * ia / 16.0;
      const Point2 p{centroid.x + rr * std::cos(ang),
                     centroid.y + rr * std::sin(ang)};
      if (signed_distance(city.region.base, p - offset) > -1e-9) continue;
      const double c = min_clearance(p);
      if (c > best_clear + 1e-12) {
        best_clear = c;
        best = p;
      }
    }
  }
  if (best_clear < 0.0) {
    std::ostringstream msg;
    msg << "seed: city " << city.id
        << " is entirely covered by forbidden zones";
    throw ValidationError(msg.str());
  }
  return best;
}

struct Stop {
  Point2 point;
  double loiter = 0.0;
};

}  // namespace

Trajectory seed_trajectory(const Scenario& scenario, const TourPermutation& perm,
                           int nodes_per_leg) {
  if (nodes_per_leg < 1)
    throw ValidationError("seed_trajectory: nodes_per_leg must be >= 1");
  const bool nbd = scenario.problem_kind == ProblemKind::op_nbd;

  std::vector<Stop> stops;
  stops.push_back({scenario.start_point(), 0.0});
  double clock = 0.0;
  for (int id : perm.order) {
    const City* city = scenario.city_by_id(id);
    if (!city) throw ValidationError("seed_trajectory: unknown city id");
    const double eta =
        clock + leg_duration(stops.back().point,
                             city->centroid_at(clock), scenario.dynamics);
    const Point2 aim = city_aim_point(scenario, *city, eta);
    double loiter = std::max(city->dwell_min, kMinLoiter);
    if (nbd && city->return_rate > 0.0)
      loiter = std::max(loiter, 1.05 * city->revenue_target / city->return_rate);
    clock = eta + loiter;
    stops.push_back({aim, loiter});
  }
  stops.push_back({scenario.end_point(), 0.0});

  // expand stops into timed waypoints (arrive, depart)
  struct Span {
    double t0, t1;
    Point2 p0, p1;
  };
  std::vector<Span> spans;
  double t = 0.0;
  Point2 cur = stops.front().point;
  for (std::size_t i = 1; i < stops.size(); ++i) {
    const double dur = leg_duration(cur, stops[i].point, scenario.dynamics);
    spans.push_back({t, t + dur, cur, stops[i].point});
    t += dur;
    cur = stops[i].point;
    if (stops[i].loiter > 0.0) {
      spans.push_back({t, t + stops[i].loiter, cur, cur});
      t += stops[i].loiter;
    }
  }

  Trajectory traj;
  for (std::size_t si = 0; si < spans.size(); ++si) {
    const Span& sp = spans[si];
    const bool loitering = sp.p0 == sp.p1;
    const int m = loitering ? std::max(2, nodes_per_leg / 2) : nodes_per_leg;
    const Point2 vel = loitering
                           ? Point2{}
                           : (1.0 / (sp.t1 - sp.t0)) * (sp.p1 - sp.p0);
    const int last = si + 1 == spans.size() ? m : m - 1;
    for (int k = 0; k <= last; ++k) {
      const double s = static_cast<double>(k) / m;
      const double tk = sp.t0 + s * (sp.t1 - sp.t0);
      const Point2 p = sp.p0 + s * (sp.p1 - sp.p0);
      const bool final_node = si + 1 == spans.size() && k == last;
      const Point2 v = final_node ? Point2{} : vel;
      traj.times.push_back(tk);
      traj.labels.push_back(p);
      traj.states.push_back({p.x, p.y, v.x, v.y});
      traj.controls.push_back({0.0, 0.0});
    }
  }
  // controls from finite differences of the sampled velocities
  for (std::size_t k = 0; k + 1 < traj.times.size(); ++k) {
    const double h = traj.times[k + 1] - traj.times[k];
    traj.controls[k] = {(traj.states[k + 1][2] - traj.states[k][2]) / h,
                        (traj.states[k + 1][3] - traj.states[k][3]) / h};
  }
  traj.validate();
  return traj;
}

}  // namespace tgtsp
