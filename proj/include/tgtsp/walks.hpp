#ifndef TGTSP_WALKS_HPP
#define TGTSP_WALKS_HPP

#include <string>
#include <vector>

#include "tgtsp/functionals.hpp"
#include "tgtsp/scenario.hpp"
#include "tgtsp/trajectory.hpp"

namespace tgtsp {

/// One maximal restriction of the trajectory: either inside a single city
/// (Vertex) or wholly in free space (Arc).
struct Segment {
  enum class Kind { vertex, arc };
  Kind kind = Kind::arc;
  int city_id = -1;  // valid for vertex segments
  double start = 0.0;
  double end = 0.0;
};

/// Contiguous cover of [t0, tf] by alternating segments; adjacent segments
/// never share the same kind-and-id.
struct Segmentation {
  std::vector<Segment> segments;
};

/// Compute the maximal vertex/arc decomposition. Throws ValidationError when
/// the trajectory occupies two cities at once (overlapping or touching
/// regions along the path).
Segmentation segment(const Trajectory& traj, const Scenario& scenario);

/// True iff every city id appears exactly once among vertex segments.
bool is_hamiltonian(const Trajectory& traj, const Scenario& scenario);

/// Tolerances used when grading a trajectory against scenario constraints.
struct VerifyTolerances {
  double dwell = 1e-3;     // T_i >= dwell_min - dwell
  double zone = 1e-3;      // clearance >= -zone at dense resampling
  double bounds = 1e-6;    // |v|,|u| <= limit + bounds
  double closure = 1e-6;   // ||l(tf) - l(t0)|| <= closure (closed tours)
  double anchor = 1e-3;    // ||l(t0) - closed_at|| <= anchor
  double resource = 1e-6;  // slack on resource bounds
  int resample = 10;       // dense factor for zone/bounds re-checks
};

struct CityReport {
  int id = 0;
  double time_on_task = 0.0;  // T
  int degree = 0;             // D
  int visited = 0;            // W
  double atomic_return = 0.0; // R
  double score = 0.0;         // exact neighborhood score earned
  bool dwell_ok = true;
};

struct TourReport {
  std::vector<CityReport> cities;
  std::vector<int> visit_order;  // city ids of vertex segments, in order
  double objective = 0.0;        // per problem kind (scores are maximization)
  bool feasible = false;
  bool hamiltonian = false;
  // individual feasibility checks
  bool dwell_ok = true;
  bool zones_ok = true;
  bool dynamics_ok = true;
  bool boundary_ok = true;
  bool resources_ok = true;
  double min_zone_clearance = 0.0;
  double max_velocity = 0.0;  // in the scenario's norm
  double max_control = 0.0;
  double closure_error = 0.0;
  double final_time = 0.0;
  double tour_length_l2 = 0.0;
  double total_score = 0.0;
  std::vector<std::string> violations;  // human-readable findings

  /// Verdict the CLI exit codes key off: feasibility plus, for the TSP-style
  /// kinds, the Hamiltonian certificate.
  bool passes(ProblemKind kind) const {
    const bool op = kind == ProblemKind::op || kind == ProblemKind::op_nbd;
    return feasible && (op || hamiltonian);
  }
};

/// Exact per-city functionals, visit order, objective and feasibility grading.
TourReport tour_report(const Trajectory& traj, const Scenario& scenario,
                       const VerifyTolerances& tol = {});

std::string serialize_report(const TourReport& report);

}  // namespace tgtsp

#endif  // TGTSP_WALKS_HPP
