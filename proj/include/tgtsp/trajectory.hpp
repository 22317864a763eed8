#ifndef TGTSP_TRAJECTORY_HPP
#define TGTSP_TRAJECTORY_HPP

#include <array>
#include <string>
#include <vector>

#include "tgtsp/geometry.hpp"

namespace tgtsp {

/// Discrete trajectory: samples of the label path l(t), the vehicle state
/// x = (position, velocity) and the control u = acceleration. Labels are
/// interpreted piecewise-linear between samples.
struct Trajectory {
  std::vector<double> times;                   // strictly increasing
  std::vector<Point2> labels;                  // l_k
  std::vector<std::array<double, 4>> states;   // x1 x2 x3 x4
  std::vector<std::array<double, 2>> controls; // u1 u2

  int node_count() const { return static_cast<int>(times.size()); }
  double t0() const { return times.front(); }
  double tf() const { return times.back(); }
  double duration() const { return tf() - t0(); }

  /// Piecewise-linear label at an arbitrary time (clamped to [t0, tf]).
  Point2 label_at(double t) const;

  /// Throws ValidationError when lengths mismatch, times are not strictly
  /// increasing, or the duration is not positive.
  void validate() const;
};

Trajectory parse_trajectory(const std::string& text);
std::string serialize_trajectory(const Trajectory& t);

/// Time of node k on the uniform n-node grid over [t0, t0+T]. Shared by the
/// resampler and the transcription decoder so grids round-trip bit-exactly.
inline double grid_time(double t0, double T, int k, int n) {
  if (k <= 0) return t0;
  if (k >= n - 1) return t0 + T;
  return t0 + T * static_cast<double>(k) / static_cast<double>(n - 1);
}

/// Piecewise-linear resample onto a uniform grid of n nodes over [t0, tf].
/// Labels/states are interpolated; controls take the left node's value
/// (they are treated as node samples of a coarse profile, not exact data).
Trajectory resample_uniform(const Trajectory& t, int n);

}  // namespace tgtsp

#endif  // TGTSP_TRAJECTORY_HPP
