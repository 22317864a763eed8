#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tgtsp/nlp_solver.hpp"
#include "tgtsp/seeding.hpp"
#include "tgtsp/transcription.hpp"

using namespace tgtsp;
using namespace tgtsp::testing;

namespace {

Scenario small_fast_scenario() {
  Scenario s;
  s.cities.push_back(disk_city(1, {3.0, 0.0}, 0.6, 0.3));
  s.cities.push_back(disk_city(2, {3.0, 4.0}, 0.6, 0.3));
  s.zones.push_back(Ellipse{{1.2, 2.0}, 0.5, 0.8});
  s.boundary.closed_at = {0.0, 0.0};
  s.problem_kind = ProblemKind::fast_cemtspfn;
  s.horizon_guess = 20.0;
  return s;
}

Trajectory uniform_seed(const Scenario& s, int nodes, std::uint64_t seed = 0) {
  return resample_uniform(seed_trajectory(s, heuristic_tour(s, seed), 8), nodes);
}

// analytic double-integrator arc under constant acceleration
Trajectory propagated(double ux, double uy, double T, int nodes) {
  Trajectory traj;
  for (int k = 0; k < nodes; ++k) {
    const double t = T * k / (nodes - 1);
    traj.times.push_back(t);
    const Point2 p{0.5 * ux * t * t, 0.5 * uy * t * t};
    traj.labels.push_back(p);
    traj.states.push_back({p.x, p.y, ux * t, uy * t});
    traj.controls.push_back({ux, uy});
  }
  return traj;
}

}  // namespace

TEST_CASE("variable count: nodes*(4+2) + 1") {
  const Scenario s = small_fast_scenario();
  const Trajectory seed = uniform_seed(s, 100);
  BuildOptions opts;
  opts.nodes = 100;
  const NlpProblem p = build_nlp(s, seed, opts);
  CHECK(p.n == 601);
  CHECK(p.layout.nodes == 100);
}

TEST_CASE("zone constraints appear at every node for every zone") {
  const Scenario s = small_fast_scenario();
  const Trajectory seed = uniform_seed(s, 60);
  BuildOptions opts;
  opts.nodes = 60;
  const NlpProblem p = build_nlp(s, seed, opts);
  CHECK(p.count_constraints("zone") == 60 * 1);
  CHECK(p.count_constraints("defect") == 4 * 59);
  CHECK(p.count_constraints("dwell") == 2);
}

TEST_CASE("defect residuals vanish on analytic propagation") {
  const Trajectory traj = propagated(0.3, -0.2, 2.0, 50);
  const std::vector<double> defects = defect_residuals(traj, DynamicsConfig{});
  for (double d : defects) CHECK(std::fabs(d) <= 1e-12);
}

TEST_CASE("defect residuals flag inconsistent states") {
  Trajectory traj = propagated(0.3, -0.2, 2.0, 20);
  for (auto& x : traj.states) {
    x[2] = 0.0;  // zero the velocities while positions still move
    x[3] = 0.0;
  }
  const std::vector<double> defects = defect_residuals(traj, DynamicsConfig{});
  double worst = 0.0;
  for (double d : defects) worst = std::max(worst, std::fabs(d));
  CHECK(worst > 1e-3);
}

TEST_CASE("perturbing one state grows the defect norm") {
  Trajectory traj = propagated(0.1, 0.2, 2.0, 20);
  auto max_abs = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
  };
  const double before = max_abs(defect_residuals(traj, DynamicsConfig{}));
  traj.states[10][0] += 0.05;
  const double after = max_abs(defect_residuals(traj, DynamicsConfig{}));
  CHECK(after > before + 1e-3);
}

TEST_CASE("encode and decode are mutually inverse") {
  const Scenario s = small_fast_scenario();
  const Trajectory seed = uniform_seed(s, 40);
  const std::vector<double> z = encode(seed);
  const Trajectory back = decode_solution(z, VarLayout{40}, seed.t0());
  REQUIRE(back.node_count() == seed.node_count());
  for (int k = 0; k < 40; ++k) {
    CHECK(back.times[k] == seed.times[k]);  // bitwise
    for (int j = 0; j < 4; ++j) CHECK(back.states[k][j] == seed.states[k][j]);
    for (int j = 0; j < 2; ++j)
      CHECK(back.controls[k][j] == seed.controls[k][j]);
    CHECK(back.labels[k].x == seed.labels[k].x);
    CHECK(back.labels[k].y == seed.labels[k].y);
  }
  // t_f slot round-trips and the grid is uniform
  CHECK(z[VarLayout{40}.tf()] == seed.duration());
  const std::vector<double> z2 = encode(back);
  REQUIRE(z2.size() == z.size());
  for (std::size_t i = 0; i < z.size(); ++i) CHECK(z2[i] == z[i]);
  const double h0 = back.times[1] - back.times[0];
  for (int k = 0; k + 1 < 40; ++k)
    CHECK(back.times[k + 1] - back.times[k] == doctest::Approx(h0));
}

TEST_CASE("distance objective equals the exact tour length on seeds") {
  Scenario s = small_fast_scenario();
  s.problem_kind = ProblemKind::i_tsp;
  s.zones.clear();
  const Trajectory native = seed_trajectory(s, heuristic_tour(s, 0), 8);
  BuildOptions opts;
  opts.nodes = native.node_count();
  const NlpProblem p = build_nlp(s, native, opts);
  const double obj = p.objective.value(encode(native));
  CHECK(std::fabs(obj - tour_length(native, NormKind::l2)) < 1e-6);
}

TEST_CASE("gradients match central differences at random points") {
  for (ProblemKind kind : {ProblemKind::fast_cemtspfn, ProblemKind::i_tsp,
                           ProblemKind::d_tsp, ProblemKind::op_nbd}) {
    Scenario s = small_fast_scenario();
    s.problem_kind = kind;
    if (kind == ProblemKind::op_nbd) {
      s.boundary.kind = Boundary::Kind::sets;
      s.boundary.start_set = 1;
      s.boundary.end_set = 2;
      s.resources.push_back({ResourceKind::time_max, {}, 15.0});
      s.resources.push_back({ResourceKind::control_integral_max, {1.0, 1.0}, 9.0});
      s.resources.push_back(
          {ResourceKind::state_integral_min, {0.1, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0},
           -50.0});
      s.cities[0].revenue_target = 0.3;
      s.cities[1].revenue_target = 0.3;
    }
    if (kind == ProblemKind::fast_cemtspfn) {
      s.dynamics.norm_kind = NormKind::l2;
      s.cost.alpha = 0.7;
      s.cost.power_model = PowerModel::control_quadratic;
    }
    const int nodes = 25;
    const Trajectory seed = uniform_seed(s, nodes);
    BuildOptions opts;
    opts.nodes = nodes;
    const NlpProblem p = build_nlp(s, seed, opts);

    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    std::vector<double> z = encode(seed);
    for (int trial = 0; trial < 3; ++trial) {
      for (double& v : z) v += u(rng);
      if (z[p.layout.tf()] < 1.0) z[p.layout.tf()] = 5.0;
      CHECK(gradient_check(p, z, 1e-6) < 1e-4);
    }
  }
}

TEST_CASE("city motion enters the dwell gradient through the horizon") {
  Scenario s;
  City c = disk_city(1, {3.0, 0.0}, 0.8, 0.4);
  c.region.motion = MotionPath{{{0.0, {0.0, 0.0}}, {6.0, {1.5, 1.0}}}};
  s.cities.push_back(c);
  s.boundary.closed_at = {0.0, 0.0};
  s.problem_kind = ProblemKind::fast_tsp;
  const int nodes = 20;
  const Trajectory seed = uniform_seed(s, nodes);
  BuildOptions opts;
  opts.nodes = nodes;
  const NlpProblem p = build_nlp(s, seed, opts);
  std::vector<double> z = encode(seed);
  CHECK(gradient_check(p, z, 1e-6) < 1e-4);
}
