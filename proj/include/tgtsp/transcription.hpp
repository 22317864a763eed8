#ifndef TGTSP_TRANSCRIPTION_HPP
#define TGTSP_TRANSCRIPTION_HPP

#include <functional>
#include <string>
#include <vector>

#include "tgtsp/scenario.hpp"
#include "tgtsp/trajectory.hpp"

namespace tgtsp {

/// Dense variable layout of the transcribed program: states and controls at
/// every node of a uniform scaled-time grid, plus the free horizon T in the
/// last slot. n = nodes*(4+2) + 1.
struct VarLayout {
  int nodes = 0;

  int n() const { return nodes * 6 + 1; }
  int x(int k, int j) const { return k * 4 + j; }
  int u(int k, int j) const { return nodes * 4 + k * 2 + j; }
  int tf() const { return nodes * 6; }
  double hs() const { return 1.0 / (nodes - 1); }
};

/// One differentiable scalar function of the decision vector. add_grad
/// accumulates w * d(value)/dz into grad without zero-filling, so aggregate
/// gradients cost only the function's support.
struct NlpFunction {
  std::string name;
  std::function<double(const std::vector<double>&)> value;
  std::function<void(const std::vector<double>&, double w,
                     std::vector<double>&)> add_grad;
};

/// Dense nonlinear program: minimize objective subject to eq(z) = 0,
/// ineq(z) >= 0 and box bounds.
struct NlpProblem {
  int n = 0;
  NlpFunction objective;
  std::vector<NlpFunction> eq;
  std::vector<NlpFunction> ineq;
  std::vector<double> lower;
  std::vector<double> upper;
  VarLayout layout;
  double t_origin = 0.0;

  /// Number of constraints whose name starts with the prefix.
  int count_constraints(const std::string& prefix) const;
};

/// Transcription knobs; the continuation loop rebuilds the program per
/// smoothing level.
struct BuildOptions {
  int nodes = 100;
  double eps = 0.05;          // membership smoothing length
  double kappa = 0.1;         // score saturation scale
  int quad_refine = 4;        // dwell quadrature sub-sampling
  double eps_dwell = 0.05;    // surrogate dwell enforcing a visit
  double dwell_margin = 0.05; // extra smoothed dwell demanded over dwell_min
  double zone_margin = 1.02;  // inflation factor on zone semi-axes
  double t_min = 1e-2;        // lower bound on the horizon variable
};

/// Direct trapezoidal collocation of the scenario's problem kind over the
/// double-integrator dynamics. The seed fixes the grid size (must equal
/// options.nodes) and the time origin.
NlpProblem build_nlp(const Scenario& scenario, const Trajectory& seed,
                     const BuildOptions& options);

/// Trapezoidal defect residuals of a trajectory under the double-integrator
/// dynamics: x_{k+1} - x_k - (h_k/2)(f_k + f_{k+1}) for each interval and
/// state, in node-major order.
std::vector<double> defect_residuals(const Trajectory& traj,
                                     const DynamicsConfig& dynamics);

/// Pack a uniform-grid trajectory into the decision vector.
std::vector<double> encode(const Trajectory& traj);

/// Inverse of encode: rebuild the trajectory from the decision vector.
/// Labels are the state positions (identity connexion).
Trajectory decode_solution(const std::vector<double>& z, const VarLayout& layout,
                           double t_origin);

}  // namespace tgtsp

#endif  // TGTSP_TRANSCRIPTION_HPP
