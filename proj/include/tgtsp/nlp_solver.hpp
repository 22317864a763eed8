#ifndef TGTSP_NLP_SOLVER_HPP
#define TGTSP_NLP_SOLVER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tgtsp/transcription.hpp"

namespace tgtsp {

/// Options for one pipeline run: solver tolerances, multistart breadth and
/// the smoothing continuation schedule (absolute lengths; empty means the
/// default [0.2, 0.05, 0.02] x characteristic city radius).
struct SolveOptions {
  int nodes = 100;
  int max_outer = 30;
  int max_inner = 500;
  double tol_feas = 1e-6;
  double tol_grad = 1e-6;
  double penalty_init = 10.0;
  double penalty_growth = 5.0;
  int multistart = 4;
  std::uint64_t rng_seed = 0;
  std::vector<double> eps_schedule;

  // transcription knobs carried through the continuation
  double eps_dwell = 0.05;
  double kappa = 0.1;
  int quad_refine = 4;
  double zone_margin = 1.02;
  double dwell_margin = 0.05;
};

enum class SolveStatus { converged, max_iter, infeasible };

struct SolveResult {
  std::vector<double> z;
  SolveStatus status = SolveStatus::max_iter;
  double feasibility_inf_norm = 0.0;
  double objective = 0.0;
  struct OuterLog {
    double penalty = 0.0;
    double feasibility = 0.0;
    double objective = 0.0;
  };
  std::vector<OuterLog> history;
  std::string diagnostic;
};

/// Augmented-Lagrangian solve of the dense program from z0 (projected into
/// the box first). Deterministic for identical inputs. NaNs in user functions
/// at the start point yield status infeasible with a diagnostic.
SolveResult solve_nlp(const NlpProblem& p, std::vector<double> z0,
                      const SolveOptions& options);

/// Maximum relative mismatch between the supplied gradients and central
/// finite differences (step h) over the objective and every constraint at z.
double gradient_check(const NlpProblem& p, const std::vector<double>& z,
                      double h);

std::string to_string(SolveStatus s);

}  // namespace tgtsp

#endif  // TGTSP_NLP_SOLVER_HPP
