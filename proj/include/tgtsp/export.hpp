#ifndef TGTSP_EXPORT_HPP
#define TGTSP_EXPORT_HPP

#include <string>

#include "tgtsp/scenario.hpp"
#include "tgtsp/trajectory.hpp"

namespace tgtsp {

/// One row per node: t,l1,l2,x3,x4,u1,u2 (no header, deterministic output).
std::string export_csv(const Trajectory& traj);

/// Scene drawing: outlined city regions with id labels, hatched forbidden
/// zones, the trajectory polyline and a start marker. Deterministic output.
std::string export_svg(const Scenario& scenario, const Trajectory& traj);

}  // namespace tgtsp

#endif  // TGTSP_EXPORT_HPP
