#ifndef TGTSP_FUNCTIONALS_HPP
#define TGTSP_FUNCTIONALS_HPP

#include <vector>

#include "tgtsp/scenario.hpp"
#include "tgtsp/trajectory.hpp"

namespace tgtsp {

/// Knobs for the smoothed surrogates of the nonsmooth functionals.
struct SmoothingParams {
  double eps = 0.05;    // membership smoothing length scale
  double kappa = 0.1;   // score saturation scale
  int quad_refine = 4;  // quadrature sub-samples per trajectory interval
};

enum class EvalMode { exact, smoothed };

struct Interval {
  double start = 0.0;
  double end = 0.0;
  double length() const { return end - start; }
};

/// Maximal closed time intervals during which the trajectory label lies in
/// the city region (boundary counts as inside) and the window, if any,
/// admits the time. Disk boundaries are located by exact quadratic roots;
/// ellipse and polygon boundaries by dense scan plus bisection. Intervals
/// shorter than 1e-11 (grazing contacts) are dropped and gaps shorter than
/// 1e-9 are merged, so downstream crossing counts are stable.
std::vector<Interval> visit_intervals(const Trajectory& traj,
                                      const MovingRegion& region);

/// Time-on-task T^i: measure of {t : l(t) in city}. Exact mode uses
/// visit_intervals; smoothed mode integrates the logistic membership
/// 1/(1+exp(sd/eps)) with composite trapezoid quadrature, hard-gated by the
/// city window.
double time_on_task(const Trajectory& traj, const City& city, EvalMode mode,
                    const SmoothingParams& sp = {});

/// Atomic return R^i = return_rate * time_on_task (constant in-region rate).
double atomic_return(const Trajectory& traj, const City& city, EvalMode mode,
                     const SmoothingParams& sp = {});

/// Degree D^i: number of jumps of the membership indicator along the
/// trajectory. Tangential grazing counts zero.
int degree(const Trajectory& traj, const City& city);

/// Visit indicator W^i: 1 iff the exact time-on-task is positive.
int visit_indicator(const Trajectory& traj, const City& city);

/// Sum of per-interval label displacements in the requested norm; exact for
/// piecewise-linear labels.
double tour_length(const Trajectory& traj, NormKind norm);

/// alpha*(tf-t0) + (1-alpha)*integral of the consumption rate f0.
double hybrid_cost(const Trajectory& traj, double alpha, PowerModel pm);

/// Neighborhood score: sigma when the atomic return reaches the revenue
/// target (exact), or the logistic ramp sigma*logistic((R-r)/kappa) when
/// smoothed.
double nbd_score(const Trajectory& traj, const City& city, EvalMode mode,
                 const SmoothingParams& sp = {});

/// Numerically safe 1/(1+exp(x)).
double logistic_neg(double x);

}  // namespace tgtsp

#endif  // TGTSP_FUNCTIONALS_HPP
