#ifndef TGTSP_PIPELINE_HPP
#define TGTSP_PIPELINE_HPP

#include <string>
#include <vector>

#include "tgtsp/nlp_solver.hpp"
#include "tgtsp/scenario.hpp"
#include "tgtsp/seeding.hpp"
#include "tgtsp/trajectory.hpp"
#include "tgtsp/walks.hpp"

namespace tgtsp {

struct PipelineOptions {
  SolveOptions solve;
  std::string scenario_path;  // label recorded in the manifest
  std::string scenario_hash;  // content hash recorded in the manifest
};

/// Outcome of one multistart run.
struct StartRecord {
  std::vector<int> seed_order;
  SolveStatus status = SolveStatus::max_iter;
  double nlp_feasibility = 0.0;
  double nlp_objective = 0.0;
  double exact_objective = 0.0;
  bool exact_passes = false;
  std::string diagnostic;
};

struct PipelineResult {
  Trajectory trajectory;
  TourReport report;
  std::vector<StartRecord> starts;
  int chosen = -1;
  bool feasible = false;  // exact verdict including the Hamiltonian gate
  double wall_seconds = 0.0;
};

/// Full solve: multistart seeds, smoothing continuation, exact verification
/// of every candidate, deterministic best-run selection.
PipelineResult run_pipeline(const Scenario& scenario,
                            const PipelineOptions& options);

/// The exact seed trajectory multistart run `start_index` solves from
/// (heuristic order, budget prefix for orienteering kinds, uniform resample).
Trajectory pipeline_seed(const Scenario& scenario, const SolveOptions& options,
                         std::uint64_t start_index);

std::string manifest_json(const PipelineOptions& options,
                          const PipelineResult& result);

/// FNV-1a 64-bit content hash, hex encoded.
std::string content_hash(const std::string& bytes);

}  // namespace tgtsp

#endif  // TGTSP_PIPELINE_HPP
