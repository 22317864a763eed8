#include "tgtsp/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

#include "tgtsp/errors.hpp"
#include "tgtsp/json_io.hpp"
#include "tgtsp/transcription.hpp"

namespace tgtsp {

std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

namespace {

bool uses_smoothing(const Scenario& s) {
  switch (s.problem_kind) {
    case ProblemKind::i_tsp:
    case ProblemKind::d_tsp:
    case ProblemKind::op:
    case ProblemKind::op_nbd:
      return true;
    case ProblemKind::fast_tsp:
    case ProblemKind::fast_cemtspfn:
      return std::any_of(s.cities.begin(), s.cities.end(),
                         [](const City& c) { return c.dwell_min > 0.0; });
  }
  return false;
}

std::vector<double> effective_schedule(const Scenario& scenario,
                                       const SolveOptions& opts) {
  std::vector<double> sched = opts.eps_schedule;
  if (sched.empty()) {
    const double r = scenario.characteristic_radius();
    sched = {0.2 * r, 0.05 * r, 0.02 * r};
  }
  if (!uses_smoothing(scenario)) sched = {sched.back()};
  return sched;
}

// Smallest time budget among the time_max resources, if any.
double time_budget(const Scenario& s) {
  double budget = std::numeric_limits<double>::infinity();
  for (const ResourceConstraint& rc : s.resources)
    if (rc.kind == ResourceKind::time_max) budget = std::min(budget, rc.bound);
  return budget;
}

// Orienteering seeds must respect the time budget; drop trailing cities from
// the visiting order until the constructed seed fits.
TourPermutation fit_to_budget(const Scenario& scenario, TourPermutation perm,
                              int nodes_per_leg) {
  const bool op_kind = scenario.problem_kind == ProblemKind::op ||
                       scenario.problem_kind == ProblemKind::op_nbd;
  const double budget = time_budget(scenario);
  if (!op_kind || !std::isfinite(budget)) return perm;
  while (!perm.order.empty()) {
    const Trajectory seed = seed_trajectory(scenario, perm, nodes_per_leg);
    if (seed.duration() <= 0.95 * budget) break;
    perm.order.pop_back();
  }
  perm.length = centroid_tour_length(scenario, perm.order);
  return perm;
}

struct StageTols {
  double tol_feas;
  double tol_grad;
  int max_outer;
};

StageTols stage_tolerances(const SolveOptions& opts, bool final_stage) {
  if (final_stage) {
    // equalities enter the closure check componentwise; leave headroom so the
    // euclidean closure error stays within the reporting tolerance
    return {std::min(opts.tol_feas, 5e-7), opts.tol_grad, opts.max_outer};
  }
  return {std::max(opts.tol_feas * 100.0, 1e-4),
          std::max(opts.tol_grad * 100.0, 1e-4),
          std::max(8, opts.max_outer / 3)};
}

int pipeline_nodes_per_leg(const Scenario& scenario, const SolveOptions& opts) {
  return std::max(4, opts.nodes / std::max<int>(4, 2 * scenario.cities.size()));
}

TourPermutation pipeline_tour(const Scenario& scenario,
                              const SolveOptions& opts,
                              std::uint64_t start_index) {
  TourPermutation perm = heuristic_tour(scenario, opts.rng_seed + start_index);
  return fit_to_budget(scenario, perm, pipeline_nodes_per_leg(scenario, opts));
}

struct StartOutcome {
  StartRecord record;
  Trajectory trajectory;
  TourReport report;
  bool valid = false;
};

StartOutcome run_one_start(const Scenario& scenario, const SolveOptions& opts,
                           const std::vector<double>& schedule,
                           std::uint64_t seed_index) {
  StartOutcome out;
  try {
    const TourPermutation perm = pipeline_tour(scenario, opts, seed_index);
    out.record.seed_order = perm.order;

    const Trajectory native =
        seed_trajectory(scenario, perm, pipeline_nodes_per_leg(scenario, opts));
    const Trajectory seed = resample_uniform(native, opts.nodes);
    std::vector<double> z = encode(seed);

    SolveResult last;
    for (std::size_t stage = 0; stage < schedule.size(); ++stage) {
      BuildOptions build;
      build.nodes = opts.nodes;
      build.eps = schedule[stage];
      build.kappa = opts.kappa;
      build.quad_refine = opts.quad_refine;
      build.eps_dwell = opts.eps_dwell;
      build.dwell_margin = opts.dwell_margin;
      build.zone_margin = opts.zone_margin;
      const NlpProblem nlp = build_nlp(scenario, seed, build);

      const StageTols tols =
          stage_tolerances(opts, stage + 1 == schedule.size());
      SolveOptions stage_opts = opts;
      stage_opts.tol_feas = tols.tol_feas;
      stage_opts.tol_grad = tols.tol_grad;
      stage_opts.max_outer = tols.max_outer;
      last = solve_nlp(nlp, z, stage_opts);
      z = last.z;
    }

    out.record.status = last.status;
    out.record.nlp_feasibility = last.feasibility_inf_norm;
    out.record.nlp_objective = last.objective;
    out.record.diagnostic = last.diagnostic;
    out.trajectory = decode_solution(z, VarLayout{opts.nodes}, seed.t0());
    out.report = tour_report(out.trajectory, scenario);
    out.record.exact_objective = out.report.objective;
    out.record.exact_passes = out.report.passes(scenario.problem_kind);
    out.valid = true;
  } catch (const Error& e) {
    out.record.status = SolveStatus::infeasible;
    out.record.diagnostic = e.what();
  }
  return out;
}

}  // namespace

Trajectory pipeline_seed(const Scenario& scenario, const SolveOptions& options,
                         std::uint64_t start_index) {
  const TourPermutation perm = pipeline_tour(scenario, options, start_index);
  const Trajectory native = seed_trajectory(
      scenario, perm, pipeline_nodes_per_leg(scenario, options));
  return resample_uniform(native, options.nodes);
}

PipelineResult run_pipeline(const Scenario& scenario,
                            const PipelineOptions& options) {
  const auto t_start = std::chrono::steady_clock::now();
  const SolveOptions& opts = options.solve;
  const std::vector<double> schedule = effective_schedule(scenario, opts);
  const int starts = std::max(1, opts.multistart);

  std::vector<StartOutcome> outcomes(starts);
  {
    std::vector<std::thread> workers;
    workers.reserve(starts);
    for (int i = 0; i < starts; ++i)
      workers.emplace_back([&, i]() {
        outcomes[i] = run_one_start(scenario, opts, schedule,
                                    static_cast<std::uint64_t>(i));
      });
    for (std::thread& w : workers) w.join();
  }

  PipelineResult result;
  for (const StartOutcome& o : outcomes) result.starts.push_back(o.record);

  // best feasible NLP objective wins; otherwise the least infeasible run
  int best = -1;
  for (int i = 0; i < starts; ++i) {
    if (!outcomes[i].valid) continue;
    if (best < 0) {
      best = i;
      continue;
    }
    const StartRecord& a = outcomes[i].record;
    const StartRecord& b = outcomes[best].record;
    const bool a_feas = a.nlp_feasibility <= opts.tol_feas;
    const bool b_feas = b.nlp_feasibility <= opts.tol_feas;
    if (a_feas != b_feas) {
      if (a_feas) best = i;
    } else if (a_feas) {
      if (a.nlp_objective < b.nlp_objective) best = i;
    } else if (a.nlp_feasibility < b.nlp_feasibility) {
      best = i;
    }
  }
  if (best < 0) {
    std::string why = "all starts failed";
    for (const StartOutcome& o : outcomes)
      if (!o.record.diagnostic.empty()) {
        why += ": " + o.record.diagnostic;
        break;
      }
    throw ValidationError("pipeline: " + why);
  }

  result.chosen = best;
  result.trajectory = outcomes[best].trajectory;
  result.report = outcomes[best].report;
  result.feasible = outcomes[best].record.exact_passes;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return result;
}

std::string manifest_json(const PipelineOptions& options,
                          const PipelineResult& result) {
  ordered_json j;
  j["scenario_path"] = options.scenario_path;
  j["scenario_hash"] = options.scenario_hash;
  ordered_json o;
  const SolveOptions& s = options.solve;
  o["nodes"] = s.nodes;
  o["multistart"] = s.multistart;
  o["rng_seed"] = s.rng_seed;
  o["max_outer"] = s.max_outer;
  o["max_inner"] = s.max_inner;
  o["tol_feas"] = s.tol_feas;
  o["tol_grad"] = s.tol_grad;
  o["penalty_init"] = s.penalty_init;
  o["penalty_growth"] = s.penalty_growth;
  o["eps_schedule"] = s.eps_schedule;
  o["eps_dwell"] = s.eps_dwell;
  o["kappa"] = s.kappa;
  o["quad_refine"] = s.quad_refine;
  o["zone_margin"] = s.zone_margin;
  o["dwell_margin"] = s.dwell_margin;
  j["options"] = o;
  ordered_json starts = ordered_json::array();
  for (const StartRecord& r : result.starts) {
    ordered_json rj;
    rj["seed_order"] = r.seed_order;
    rj["status"] = to_string(r.status);
    rj["nlp_feasibility"] = r.nlp_feasibility;
    rj["nlp_objective"] = r.nlp_objective;
    rj["exact_objective"] = r.exact_objective;
    rj["exact_passes"] = r.exact_passes;
    if (!r.diagnostic.empty()) rj["diagnostic"] = r.diagnostic;
    starts.push_back(rj);
  }
  j["starts"] = starts;
  j["chosen"] = result.chosen;
  j["feasible"] = result.feasible;
  j["wall_seconds"] = result.wall_seconds;
  return dump_json(j, 2);
}

}  // namespace tgtsp
