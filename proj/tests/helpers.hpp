// Shared scenario builders and mini-pipeline used by the solver unit tests
// and the acceptance suite.
#ifndef TGTSP_TESTS_HELPERS_HPP
#define TGTSP_TESTS_HELPERS_HPP

#include <string>

#include "oracles.hpp"
#include "tgtsp/nlp_solver.hpp"
#include "tgtsp/seeding.hpp"
#include "tgtsp/transcription.hpp"
#include "tgtsp/walks.hpp"

namespace tgtsp::testing {

/// Rest-to-rest minimum-time run between two point-like cities a distance
/// `dist` apart: the classic bang-bang reference.
inline Scenario bang_bang_scenario(double dist, double v_max, double u_max) {
  Scenario s;
  s.cities.push_back(disk_city(1, {0.0, 0.0}, 1e-3));
  s.cities.push_back(disk_city(2, {dist, 0.0}, 1e-3));
  s.boundary.kind = Boundary::Kind::sets;
  s.boundary.start_set = 1;
  s.boundary.end_set = 2;
  s.problem_kind = ProblemKind::fast_tsp;
  s.dynamics.norm_kind = NormKind::linf;
  s.dynamics.v_max = v_max;
  s.dynamics.u_max = u_max;
  s.horizon_guess = 3.0 * std::sqrt(dist / u_max);
  return s;
}

struct MiniSolve {
  SolveResult result;
  Trajectory trajectory;
};

/// Single-start solve of a scenario: seed, transcribe at one smoothing
/// level, run the augmented-Lagrangian solver, decode.
inline MiniSolve solve_single(const Scenario& scenario, int nodes,
                              const SolveOptions& base = {},
                              std::uint64_t seed_index = 0) {
  const TourPermutation perm = heuristic_tour(scenario, seed_index);
  const Trajectory native = seed_trajectory(scenario, perm, 8);
  const Trajectory seed = resample_uniform(native, nodes);

  SolveOptions opts = base;
  opts.nodes = nodes;
  BuildOptions build;
  build.nodes = nodes;
  build.eps = 0.02 * scenario.characteristic_radius();
  build.kappa = opts.kappa;
  build.quad_refine = opts.quad_refine;
  build.eps_dwell = opts.eps_dwell;
  build.dwell_margin = opts.dwell_margin;
  build.zone_margin = opts.zone_margin;
  const NlpProblem p = build_nlp(scenario, seed, build);

  MiniSolve out;
  out.result = solve_nlp(p, encode(seed), opts);
  out.trajectory = decode_solution(out.result.z, p.layout, seed.t0());
  return out;
}

}  // namespace tgtsp::testing

#endif  // TGTSP_TESTS_HELPERS_HPP
