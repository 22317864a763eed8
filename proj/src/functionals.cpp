#include "tgtsp/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "tgtsp/errors.hpp"

namespace tgtsp {

namespace {

// Exact tangencies produce discriminants at roundoff scale; the square root
// amplifies that to ~1e-8 interval lengths, so anything below this floor is
// treated as a grazing contact (zero dwell, zero crossings).
constexpr double kGrazeTol = 5e-8;
constexpr double kGapTol = 1e-9;  // gaps below this merge into one visit

// Relative position of the label w.r.t. the (possibly moving) region frame
// over one elementary interval in which both are linear in t.
struct LinearLeg {
  double ta = 0.0, tb = 0.0;
  Point2 q0;  // label - offset at ta
  Point2 dq;  // d/dt of the above
};

// f(t) = |q(t)|^2 - r^2 <= 0 pieces for a disk, solved exactly.
void disk_inside_pieces(const LinearLeg& leg, Point2 center, double radius,
                        std::vector<Interval>& out) {
  const Point2 p0 = leg.q0 - center;
  const double A = dot(leg.dq, leg.dq);
  const double B = 2.0 * dot(p0, leg.dq);
  const double C = dot(p0, p0) - radius * radius;
  const double span = leg.tb - leg.ta;
  if (A < 1e-30) {
    if (C <= 0.0) out.push_back({leg.ta, leg.tb});
    return;
  }
  const double disc = B * B - 4.0 * A * C;
  if (disc <= 0.0) return;  // never inside, or a grazing touch (counts zero)
  const double sq = std::sqrt(disc);
  // stable quadratic roots
  const double qq = -0.5 * (B + std::copysign(sq, B));
  double r1 = qq / A;
  double r2 = (qq != 0.0) ? C / qq : r1;
  if (r1 > r2) std::swap(r1, r2);
  if (r2 <= 0.0 || r1 >= span) return;
  const double lo = r1 <= 0.0 ? leg.ta : leg.ta + r1;
  const double hi = r2 >= span ? leg.tb : leg.ta + r2;
  if (hi > lo) out.push_back({lo, hi});
}

// Dense scan + bisection for shapes without a closed-form crossing equation.
void scanned_inside_pieces(const LinearLeg& leg, const Region& region,
                           std::vector<Interval>& out) {
  constexpr int kScan = 64;
  const double span = leg.tb - leg.ta;
  auto value = [&](double t) {
    const double s = t - leg.ta;
    return signed_distance(region, leg.q0 + s * leg.dq);
  };
  auto refine = [&](double t_in, double t_out) {
    // invariant: value(t_in) <= 0 < value(t_out)
    for (int i = 0; i < 60 && std::fabs(t_out - t_in) > 1e-13; ++i) {
      const double mid = 0.5 * (t_in + t_out);
      if (value(mid) <= 0.0) t_in = mid;
      else t_out = mid;
    }
    return 0.5 * (t_in + t_out);
  };
  double prev_t = leg.ta;
  bool prev_in = value(prev_t) <= 0.0;
  double open = prev_in ? leg.ta : 0.0;
  bool is_open = prev_in;
  for (int i = 1; i <= kScan; ++i) {
    const double t = i == kScan ? leg.tb : leg.ta + span * i / kScan;
    const bool in = value(t) <= 0.0;
    if (in != prev_in) {
      if (in) {
        open = refine(t, prev_t);
        is_open = true;
      } else {
        out.push_back({open, refine(prev_t, t)});
        is_open = false;
      }
    }
    prev_t = t;
    prev_in = in;
  }
  if (is_open) out.push_back({open, leg.tb});
}

std::vector<double> elementary_breakpoints(const Trajectory& traj,
                                           const MovingRegion& region) {
  std::vector<double> bp(traj.times.begin(), traj.times.end());
  if (region.motion)
    for (const auto& k : region.motion->knots)
      if (k.t > traj.t0() && k.t < traj.tf()) bp.push_back(k.t);
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  return bp;
}

std::vector<Interval> merge_and_prune(std::vector<Interval> raw) {
  std::vector<Interval> merged;
  for (const Interval& iv : raw) {
    if (!merged.empty() && iv.start - merged.back().end <= kGapTol)
      merged.back().end = std::max(merged.back().end, iv.end);
    else
      merged.push_back(iv);
  }
  std::vector<Interval> out;
  for (const Interval& iv : merged)
    if (iv.length() > kGrazeTol) out.push_back(iv);
  return out;
}

}  // namespace

std::vector<Interval> visit_intervals(const Trajectory& traj,
                                      const MovingRegion& region) {
  const std::vector<double> bp = elementary_breakpoints(traj, region);

  std::vector<Interval> raw;
  std::size_t seg = 0;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double ta = bp[i];
    const double tb = bp[i + 1];
    while (seg + 2 < traj.times.size() && traj.times[seg + 1] <= ta) ++seg;
    const double hseg = traj.times[seg + 1] - traj.times[seg];
    const Point2 lseg =
        (1.0 / hseg) * (traj.labels[seg + 1] - traj.labels[seg]);
    auto label_at = [&](double t) {
      return traj.labels[seg] + (t - traj.times[seg]) * lseg;
    };
    Point2 doff{};
    Point2 off_a = region.offset_at(ta);
    if (region.motion) {
      const Point2 off_b = region.offset_at(tb);
      doff = (1.0 / (tb - ta)) * (off_b - off_a);
    }
    LinearLeg leg;
    leg.ta = ta;
    leg.tb = tb;
    leg.q0 = label_at(ta) - off_a;
    leg.dq = lseg - doff;
    if (const Disk* d = std::get_if<Disk>(&region.base))
      disk_inside_pieces(leg, d->center, d->radius, raw);
    else
      scanned_inside_pieces(leg, region.base, raw);
  }

  std::vector<Interval> merged = merge_and_prune(std::move(raw));

  if (region.window) {
    std::vector<Interval> gated;
    for (Interval iv : merged) {
      iv.start = std::max(iv.start, region.window->t_a);
      iv.end = std::min(iv.end, region.window->t_b);
      if (iv.length() > kGrazeTol) gated.push_back(iv);
    }
    return gated;
  }
  return merged;
}

double logistic_neg(double x) {
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

namespace {

double smoothed_time_on_task(const Trajectory& traj, const MovingRegion& region,
                             const SmoothingParams& sp) {
  const int refine = std::max(1, sp.quad_refine);
  auto mu = [&](double t, Point2 p) {
    if (region.window && !region.window->contains(t)) return 0.0;
    const double sd = signed_distance(region.base, p - region.offset_at(t));
    return logistic_neg(sd / sp.eps);
  };
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < traj.times.size(); ++k) {
    const double h = (traj.times[k + 1] - traj.times[k]) / refine;
    double prev = mu(traj.times[k], traj.labels[k]);
    for (int m = 1; m <= refine; ++m) {
      const double s = static_cast<double>(m) / refine;
      const double t = traj.times[k] + s * (traj.times[k + 1] - traj.times[k]);
      const Point2 p = traj.labels[k] + s * (traj.labels[k + 1] - traj.labels[k]);
      const double cur = mu(t, p);
      total += 0.5 * h * (prev + cur);
      prev = cur;
    }
  }
  return total;
}

}  // namespace

double time_on_task(const Trajectory& traj, const City& city, EvalMode mode,
                    const SmoothingParams& sp) {
  if (mode == EvalMode::smoothed)
    return smoothed_time_on_task(traj, city.region, sp);
  double total = 0.0;
  for (const Interval& iv : visit_intervals(traj, city.region))
    total += iv.length();
  return total;
}

double atomic_return(const Trajectory& traj, const City& city, EvalMode mode,
                     const SmoothingParams& sp) {
  return city.return_rate * time_on_task(traj, city, mode, sp);
}

int degree(const Trajectory& traj, const City& city) {
  const std::vector<Interval> ivs = visit_intervals(traj, city.region);
  int crossings = 0;
  for (const Interval& iv : ivs) {
    if (iv.start > traj.t0()) ++crossings;
    if (iv.end < traj.tf()) ++crossings;
  }
  return crossings;
}

int visit_indicator(const Trajectory& traj, const City& city) {
  return time_on_task(traj, city, EvalMode::exact) > 0.0 ? 1 : 0;
}

double tour_length(const Trajectory& traj, NormKind norm) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < traj.labels.size(); ++k) {
    const Point2 d = traj.labels[k + 1] - traj.labels[k];
    total += norm == NormKind::l2 ? norm2(d) : norm_inf(d);
  }
  return total;
}

double hybrid_cost(const Trajectory& traj, double alpha, PowerModel pm) {
  if (alpha < 0.0 || alpha > 1.0)
    throw ValidationError("hybrid_cost: alpha must lie in [0, 1]");
  double consumption = 0.0;
  if (pm == PowerModel::control_quadratic) {
    auto f0 = [&](std::size_t k) {
      return traj.controls[k][0] * traj.controls[k][0] +
             traj.controls[k][1] * traj.controls[k][1];
    };
    for (std::size_t k = 0; k + 1 < traj.times.size(); ++k)
      consumption +=
          0.5 * (traj.times[k + 1] - traj.times[k]) * (f0(k) + f0(k + 1));
  }
  return alpha * traj.duration() + (1.0 - alpha) * consumption;
}

double nbd_score(const Trajectory& traj, const City& city, EvalMode mode,
                 const SmoothingParams& sp) {
  const double revenue = atomic_return(traj, city, mode, sp);
  if (mode == EvalMode::exact)
    return revenue >= city.revenue_target ? city.score : 0.0;
  return city.score * logistic_neg(-(revenue - city.revenue_target) / sp.kappa);
}

}  // namespace tgtsp
