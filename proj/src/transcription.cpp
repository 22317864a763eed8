#include "tgtsp/transcription.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tgtsp/errors.hpp"
#include "tgtsp/functionals.hpp"

namespace tgtsp {

int NlpProblem::count_constraints(const std::string& prefix) const {
  int count = 0;
  for (const NlpFunction& f : eq)
    if (f.name.rfind(prefix, 0) == 0) ++count;
  for (const NlpFunction& f : ineq)
    if (f.name.rfind(prefix, 0) == 0) ++count;
  return count;
}

std::vector<double> encode(const Trajectory& traj) {
  traj.validate();
  VarLayout L{traj.node_count()};
  std::vector<double> z(L.n());
  for (int k = 0; k < L.nodes; ++k) {
    for (int j = 0; j < 4; ++j) z[L.x(k, j)] = traj.states[k][j];
    for (int j = 0; j < 2; ++j) z[L.u(k, j)] = traj.controls[k][j];
  }
  z[L.tf()] = traj.duration();
  return z;
}

Trajectory decode_solution(const std::vector<double>& z, const VarLayout& layout,
                           double t_origin) {
  if (static_cast<int>(z.size()) != layout.n())
    throw ValidationError("decode_solution: vector length mismatch");
  Trajectory traj;
  const double T = z[layout.tf()];
  traj.times.resize(layout.nodes);
  traj.labels.resize(layout.nodes);
  traj.states.resize(layout.nodes);
  traj.controls.resize(layout.nodes);
  for (int k = 0; k < layout.nodes; ++k) {
    traj.times[k] = grid_time(t_origin, T, k, layout.nodes);
    for (int j = 0; j < 4; ++j) traj.states[k][j] = z[layout.x(k, j)];
    for (int j = 0; j < 2; ++j) traj.controls[k][j] = z[layout.u(k, j)];
    traj.labels[k] = {traj.states[k][0], traj.states[k][1]};
  }
  return traj;
}

std::vector<double> defect_residuals(const Trajectory& traj,
                                     const DynamicsConfig&) {
  traj.validate();
  std::vector<double> out;
  out.reserve(4 * (traj.times.size() - 1));
  auto f = [&](std::size_t k, int j) {
    switch (j) {
      case 0: return traj.states[k][2];
      case 1: return traj.states[k][3];
      case 2: return traj.controls[k][0];
      default: return traj.controls[k][1];
    }
  };
  for (std::size_t k = 0; k + 1 < traj.times.size(); ++k) {
    const double h = traj.times[k + 1] - traj.times[k];
    for (int j = 0; j < 4; ++j)
      out.push_back(traj.states[k + 1][j] - traj.states[k][j] -
                    0.5 * h * (f(k, j) + f(k + 1, j)));
  }
  return out;
}

namespace {

// Smoothed time-on-task of one city over the decoded label path, with an
// accumulate-style gradient. Both constraint and score objective reuse it.
struct DwellTerm {
  MovingRegion region;
  double t_origin = 0.0;
  double eps = 0.05;
  int refine = 4;
  VarLayout L;

  double eval(const std::vector<double>& z, double w,
              std::vector<double>* grad) const {
    const double T = z[L.tf()];
    const double hs = L.hs();
    const double hsub = hs / refine;
    // beyond this band the logistic is 0 or 1 to double precision and its
    // slope vanishes, so only the quadrature weight survives
    const double band = 40.0 * eps;
    const Disk* disk = std::get_if<Disk>(&region.base);
    const bool static_region = !region.motion && !region.window;
    double total = 0.0;
    double dT_extra = 0.0;
    for (int k = 0; k + 1 < L.nodes; ++k) {
      const double pkx = z[L.x(k, 0)], pky = z[L.x(k, 1)];
      const double qkx = z[L.x(k + 1, 0)], qky = z[L.x(k + 1, 1)];
      for (int m = 0; m <= refine; ++m) {
        const double tw = (m == 0 || m == refine) ? 0.5 : 1.0;
        const double theta = static_cast<double>(m) / refine;
        const double s = (k + theta) * hs;
        double t = 0.0;
        Point2 off{};
        if (!static_region) {
          t = t_origin + s * T;
          if (region.window && !region.window->contains(t)) continue;
          off = region.offset_at(t);
        }
        const Point2 p{pkx + theta * (qkx - pkx) - off.x,
                       pky + theta * (qky - pky) - off.y};
        const double wq = tw * hsub * T;
        double sd;
        if (disk) {
          const double dx = p.x - disk->center.x;
          const double dy = p.y - disk->center.y;
          sd = std::sqrt(dx * dx + dy * dy) - disk->radius;
        } else {
          sd = signed_distance(region.base, p);
        }
        if (sd > band) continue;
        if (sd < -band) {
          total += wq;
          continue;
        }
        const SdGrad sg = signed_distance_grad(region.base, p);
        const double mu = logistic_neg(sg.sd / eps);
        total += wq * mu;
        if (grad) {
          const double dmu = -mu * (1.0 - mu) / eps;
          const double gx = wq * dmu * sg.grad.x;
          const double gy = wq * dmu * sg.grad.y;
          (*grad)[L.x(k, 0)] += w * gx * (1.0 - theta);
          (*grad)[L.x(k, 1)] += w * gy * (1.0 - theta);
          (*grad)[L.x(k + 1, 0)] += w * gx * theta;
          (*grad)[L.x(k + 1, 1)] += w * gy * theta;
          if (region.motion) {
            const Point2 ov = region.motion->velocity_at(t);
            dT_extra += wq * dmu * (-(sg.grad.x * ov.x + sg.grad.y * ov.y)) * s;
          }
        }
      }
    }
    if (grad) (*grad)[L.tf()] += w * (total / T + dT_extra);
    return total;
  }
};

// Smoothed total variation of the membership along the sub-sampled grid;
// approximates the degree functional for the experimental d_tsp equalities.
struct DegreeTvTerm {
  MovingRegion region;
  double t_origin = 0.0;
  double eps = 0.05;
  int refine = 4;
  double delta = 1e-4;
  VarLayout L;

  struct SubNode {
    int k = 0;
    double theta = 0.0;
    double mu = 0.0;
    double dmu = 0.0;  // dmu/dsd
    Point2 sd_grad;
  };

  double eval(const std::vector<double>& z, double w,
              std::vector<double>* grad) const {
    const double T = z[L.tf()];
    const double hs = L.hs();
    const int m_total = (L.nodes - 1) * refine;
    std::vector<SubNode> sub(m_total + 1);
    for (int j = 0; j <= m_total; ++j) {
      int k = std::min(j / refine, L.nodes - 2);
      const int m = j - k * refine;
      SubNode& sn = sub[j];
      sn.k = k;
      sn.theta = static_cast<double>(m) / refine;
      const double s = (k + sn.theta) * hs;
      const double t = t_origin + s * T;
      if (region.window && !region.window->contains(t)) {
        sn.mu = 0.0;
        sn.dmu = 0.0;
        continue;
      }
      const Point2 p{z[L.x(k, 0)] + sn.theta * (z[L.x(k + 1, 0)] - z[L.x(k, 0)]),
                     z[L.x(k, 1)] + sn.theta * (z[L.x(k + 1, 1)] - z[L.x(k, 1)])};
      const SdGrad sg = signed_distance_grad(region.base, p - region.offset_at(t));
      sn.mu = logistic_neg(sg.sd / eps);
      sn.dmu = -sn.mu * (1.0 - sn.mu) / eps;
      sn.sd_grad = sg.grad;
    }
    double tv = 0.0;
    for (int j = 0; j + 1 <= m_total; ++j) {
      const double d = sub[j + 1].mu - sub[j].mu;
      const double r = std::sqrt(d * d + delta * delta);
      tv += r - delta;
      if (grad) {
        const double dr = d / r;
        for (int side = 0; side < 2; ++side) {
          const SubNode& sn = sub[j + side];
          const double sgn = side == 1 ? 1.0 : -1.0;
          const double gx = sgn * dr * sn.dmu * sn.sd_grad.x;
          const double gy = sgn * dr * sn.dmu * sn.sd_grad.y;
          (*grad)[L.x(sn.k, 0)] += w * gx * (1.0 - sn.theta);
          (*grad)[L.x(sn.k, 1)] += w * gy * (1.0 - sn.theta);
          (*grad)[L.x(sn.k + 1, 0)] += w * gx * sn.theta;
          (*grad)[L.x(sn.k + 1, 1)] += w * gy * sn.theta;
        }
      }
    }
    return tv;
  }
};

// Trapezoid weight of node k on the uniform grid, divided by T.
double node_weight_rel(const VarLayout& L, int k) {
  return L.hs() * ((k == 0 || k == L.nodes - 1) ? 0.5 : 1.0);
}

// Minimum rest-to-rest travel time over a straight gap under speed and
// acceleration caps: triangular or trapezoidal velocity profile.
double rest_to_rest_time(double gap, double v_max, double u_max) {
  if (gap <= 0.0) return 0.0;
  if (gap <= v_max * v_max / u_max) return 2.0 * std::sqrt(gap / u_max);
  return gap / v_max + v_max / u_max;
}

// Valid lower bound on any feasible horizon. Without it the early
// augmented-Lagrangian iterations can trade the horizon away for per-interval
// defect crumbs that look small individually.
double horizon_floor(const Scenario& s, const BuildOptions& options) {
  const bool l2 = s.dynamics.norm_kind == NormKind::l2;
  auto dist = [&](Point2 a, Point2 b) {
    return l2 ? norm2(a - b) : norm_inf(a - b);
  };
  auto closest_reach = [&](const City& c, Point2 from) {
    // closest the region ever gets to `from` across its motion knots
    double best = dist(from, c.centroid_at(0.0));
    if (c.region.motion)
      for (const auto& knot : c.region.motion->knots)
        best = std::min(best, dist(from, c.centroid_at(knot.t)));
    return std::max(0.0, best - bounding_radius(c.region.base));
  };

  const bool fast_kind = s.problem_kind == ProblemKind::fast_tsp ||
                         s.problem_kind == ProblemKind::fast_cemtspfn;
  double dwell_total = 0.0;
  if (fast_kind)
    for (const City& c : s.cities) dwell_total += c.dwell_min;

  double travel = 0.0;
  if (s.boundary.kind == Boundary::Kind::closed) {
    double farthest = 0.0;
    for (const City& c : s.cities)
      farthest = std::max(farthest, closest_reach(c, s.boundary.closed_at));
    travel = 2.0 * farthest / s.dynamics.v_max;
  } else {
    const City* a = s.city_by_id(s.boundary.start_set);
    const City* b = s.city_by_id(s.boundary.end_set);
    const double gap = std::max(
        0.0, dist(a->centroid_at(0.0), b->centroid_at(0.0)) -
                 bounding_radius(a->region.base) - bounding_radius(b->region.base));
    travel = rest_to_rest_time(gap, s.dynamics.v_max, s.dynamics.u_max);
  }
  return std::max({options.t_min, dwell_total, 0.995 * travel});
}

}  // namespace

NlpProblem build_nlp(const Scenario& scenario, const Trajectory& seed,
                     const BuildOptions& options) {
  if (seed.node_count() != options.nodes)
    throw ValidationError("build_nlp: seed grid size must match options.nodes");
  if (options.nodes < 2)
    throw ValidationError("build_nlp: need at least 2 nodes");

  NlpProblem p;
  VarLayout L{options.nodes};
  p.layout = L;
  p.n = L.n();
  p.t_origin = seed.t0();
  const double t_origin = p.t_origin;
  const ProblemKind kind = scenario.problem_kind;
  const bool fast_kind =
      kind == ProblemKind::fast_tsp || kind == ProblemKind::fast_cemtspfn;
  const bool dist_kind = kind == ProblemKind::d_tsp || kind == ProblemKind::i_tsp;

  // ---- bounds ------------------------------------------------------------
  const double inf = std::numeric_limits<double>::infinity();
  p.lower.assign(p.n, -inf);
  p.upper.assign(p.n, inf);
  const double vmax = scenario.dynamics.v_max;
  const double umax = scenario.dynamics.u_max;
  for (int k = 0; k < L.nodes; ++k) {
    for (int j = 2; j < 4; ++j) {
      p.lower[L.x(k, j)] = -vmax;
      p.upper[L.x(k, j)] = vmax;
    }
    for (int j = 0; j < 2; ++j) {
      p.lower[L.u(k, j)] = -umax;
      p.upper[L.u(k, j)] = umax;
    }
  }
  p.lower[L.tf()] = horizon_floor(scenario, options);

  // ---- defect equalities ---------------------------------------------------
  // scaled by 1/sqrt(h_s): strong enough that shrinking the horizon cannot
  // hide an untraversable path inside per-interval crumbs, yet keeps the
  // constraint gradients moderate for the quasi-Newton inner solver
  for (int k = 0; k + 1 < L.nodes; ++k) {
    for (int j = 0; j < 4; ++j) {
      std::ostringstream name;
      name << "defect[" << k << "][" << j << "]";
      const int ia = j < 2 ? L.x(k, j + 2) : L.u(k, j - 2);
      const int ib = j < 2 ? L.x(k + 1, j + 2) : L.u(k + 1, j - 2);
      const int xa = L.x(k, j);
      const int xb = L.x(k + 1, j);
      const int it = L.tf();
      const double hs = L.hs();
      const double scale = 1.0 / std::sqrt(hs);
      p.eq.push_back(NlpFunction{
          name.str(),
          [=](const std::vector<double>& z) {
            return scale *
                   (z[xb] - z[xa] - 0.5 * hs * z[it] * (z[ia] + z[ib]));
          },
          [=](const std::vector<double>& z, double w, std::vector<double>& g) {
            const double ws = w * scale;
            g[xb] += ws;
            g[xa] -= ws;
            g[ia] -= ws * 0.5 * hs * z[it];
            g[ib] -= ws * 0.5 * hs * z[it];
            g[it] -= ws * 0.5 * hs * (z[ia] + z[ib]);
          }});
    }
  }

  // ---- boundary conditions -------------------------------------------------
  auto fix_var = [&](const std::string& name, int idx, double target) {
    p.eq.push_back(NlpFunction{
        name,
        [=](const std::vector<double>& z) { return z[idx] - target; },
        [=](const std::vector<double>&, double w, std::vector<double>& g) {
          g[idx] += w;
        }});
  };
  // all shipped kinds start and end at rest
  fix_var("vel0_x", L.x(0, 2), 0.0);
  fix_var("vel0_y", L.x(0, 3), 0.0);
  fix_var("velf_x", L.x(L.nodes - 1, 2), 0.0);
  fix_var("velf_y", L.x(L.nodes - 1, 3), 0.0);

  if (scenario.boundary.kind == Boundary::Kind::closed) {
    const Point2 c = scenario.boundary.closed_at;
    fix_var("anchor_x", L.x(0, 0), c.x);
    fix_var("anchor_y", L.x(0, 1), c.y);
    for (int j = 0; j < 2; ++j) {
      const int i0 = L.x(0, j);
      const int i1 = L.x(L.nodes - 1, j);
      p.eq.push_back(NlpFunction{
          j == 0 ? "closure_x" : "closure_y",
          [=](const std::vector<double>& z) { return z[i1] - z[i0]; },
          [=](const std::vector<double>&, double w, std::vector<double>& g) {
            g[i1] += w;
            g[i0] -= w;
          }});
    }
  } else {
    auto set_membership = [&](const std::string& name, int node,
                              const City& city, bool at_end) {
      const MovingRegion region = city.region;
      const int px = L.x(node, 0);
      const int py = L.x(node, 1);
      const int it = L.tf();
      p.ineq.push_back(NlpFunction{
          name,
          [=](const std::vector<double>& z) {
            const double t = at_end ? t_origin + z[it] : t_origin;
            const Point2 p2{z[px], z[py]};
            return -signed_distance(region.base, p2 - region.offset_at(t));
          },
          [=](const std::vector<double>& z, double w, std::vector<double>& g) {
            const double t = at_end ? t_origin + z[it] : t_origin;
            const Point2 p2{z[px], z[py]};
            const SdGrad sg =
                signed_distance_grad(region.base, p2 - region.offset_at(t));
            g[px] -= w * sg.grad.x;
            g[py] -= w * sg.grad.y;
            if (at_end && region.motion) {
              const Point2 ov = region.motion->velocity_at(t);
              g[it] += w * (sg.grad.x * ov.x + sg.grad.y * ov.y);
            }
          }});
    };
    set_membership("bstart", 0, *scenario.city_by_id(scenario.boundary.start_set),
                   false);
    set_membership("bend", L.nodes - 1,
                   *scenario.city_by_id(scenario.boundary.end_set), true);
  }

  // ---- forbidden zones at every node ----------------------------------------
  for (std::size_t zi = 0; zi < scenario.zones.size(); ++zi) {
    const Ellipse e = std::get<Ellipse>(scenario.zones[zi]);
    const double ia2 = 1.0 / (e.a * options.zone_margin * e.a * options.zone_margin);
    const double ib2 = 1.0 / (e.b * options.zone_margin * e.b * options.zone_margin);
    for (int k = 0; k < L.nodes; ++k) {
      std::ostringstream name;
      name << "zone[" << zi << "][" << k << "]";
      const int px = L.x(k, 0);
      const int py = L.x(k, 1);
      p.ineq.push_back(NlpFunction{
          name.str(),
          [=](const std::vector<double>& z) {
            const double dx = z[px] - e.center.x;
            const double dy = z[py] - e.center.y;
            return dx * dx * ia2 + dy * dy * ib2 - 1.0;
          },
          [=](const std::vector<double>& z, double w, std::vector<double>& g) {
            g[px] += w * 2.0 * (z[px] - e.center.x) * ia2;
            g[py] += w * 2.0 * (z[py] - e.center.y) * ib2;
          }});
    }
  }

  // ---- l2 norm bounds (linf handled by the variable boxes) -------------------
  if (scenario.dynamics.norm_kind == NormKind::l2) {
    for (int k = 0; k < L.nodes; ++k) {
      std::ostringstream vn, un;
      vn << "vnorm[" << k << "]";
      un << "unorm[" << k << "]";
      const int vx = L.x(k, 2), vy = L.x(k, 3);
      const int ux = L.u(k, 0), uy = L.u(k, 1);
      p.ineq.push_back(NlpFunction{
          vn.str(),
          [=](const std::vector<double>& z) {
            return vmax * vmax - z[vx] * z[vx] - z[vy] * z[vy];
          },
          [=](const std::vector<double>& z, double w, std::vector<double>& g) {
            g[vx] -= w * 2.0 * z[vx];
            g[vy] -= w * 2.0 * z[vy];
          }});
      p.ineq.push_back(NlpFunction{
          un.str(),
          [=](const std::vector<double>& z) {
            return umax * umax - z[ux] * z[ux] - z[uy] * z[uy];
          },
          [=](const std::vector<double>& z, double w, std::vector<double>& g) {
            g[ux] -= w * 2.0 * z[ux];
            g[uy] -= w * 2.0 * z[uy];
          }});
    }
  }

  // ---- dwell / visit / degree functionals ------------------------------------
  for (const City& city : scenario.cities) {
    DwellTerm dwell{city.region, t_origin, options.eps, options.quad_refine, L};
    if (fast_kind && city.dwell_min > 0.0) {
      const double target = city.dwell_min + options.dwell_margin;
      std::ostringstream name;
      name << "dwell[" << city.id << "]";
      p.ineq.push_back(NlpFunction{
          name.str(),
          [=](const std::vector<double>& z) {
            return dwell.eval(z, 1.0, nullptr) - target;
          },
          [=](const std::vector<double>& z, double w, std::vector<double>& g) {
            dwell.eval(z, w, &g);
          }});
    } else if (kind == ProblemKind::i_tsp) {
      const double target = options.eps_dwell;
      std::ostringstream name;
      name << "visit[" << city.id << "]";
      p.ineq.push_back(NlpFunction{
          name.str(),
          [=](const std::vector<double>& z) {
            return dwell.eval(z, 1.0, nullptr) - target;
          },
          [=](const std::vector<double>& z, double w, std::vector<double>& g) {
            dwell.eval(z, w, &g);
          }});
    } else if (kind == ProblemKind::d_tsp) {
      DegreeTvTerm tv{city.region, t_origin, options.eps,
                      options.quad_refine, 1e-4, L};
      std::ostringstream name;
      name << "degree[" << city.id << "]";
      p.eq.push_back(NlpFunction{
          name.str(),
          [=](const std::vector<double>& z) {
            return tv.eval(z, 1.0, nullptr) - 2.0;
          },
          [=](const std::vector<double>& z, double w, std::vector<double>& g) {
            tv.eval(z, w, &g);
          }});
    }
  }

  // ---- resource constraints ---------------------------------------------------
  for (std::size_t ri = 0; ri < scenario.resources.size(); ++ri) {
    const ResourceConstraint rc = scenario.resources[ri];
    std::ostringstream name;
    name << "resource[" << ri << "]";
    if (rc.kind == ResourceKind::time_max) {
      const int it = L.tf();
      const double bound = rc.bound;
      p.ineq.push_back(NlpFunction{
          name.str(),
          [=](const std::vector<double>& z) { return bound - z[it]; },
          [=](const std::vector<double>&, double w, std::vector<double>& g) {
            g[it] -= w;
          }});
      continue;
    }
    const bool is_min = rc.kind == ResourceKind::state_integral_min;
    const double sign = is_min ? 1.0 : -1.0;
    const double bound = rc.bound;
    const std::vector<double> coef = rc.coefficients;
    auto integral = [=](const std::vector<double>& z, double w,
                        std::vector<double>* g) {
      double total = 0.0;
      const int it = L.tf();
      for (int k = 0; k < L.nodes; ++k) {
        const double wk = node_weight_rel(L, k) * z[it];
        if (is_min) {
          const int idx[6] = {L.x(k, 0), L.x(k, 1), L.x(k, 2),
                              L.x(k, 3), L.u(k, 0), L.u(k, 1)};
          double v = coef.size() > 6 ? coef[6] : 0.0;
          for (std::size_t i = 0; i < coef.size() && i < 6; ++i)
            v += coef[i] * z[idx[i]];
          total += wk * v;
          if (g)
            for (std::size_t i = 0; i < coef.size() && i < 6; ++i)
              (*g)[idx[i]] += w * wk * coef[i];
        } else {
          const double c1 = coef.size() > 0 ? coef[0] : 1.0;
          const double c2 = coef.size() > 1 ? coef[1] : 1.0;
          const int ux = L.u(k, 0), uy = L.u(k, 1);
          total += wk * (c1 * z[ux] * z[ux] + c2 * z[uy] * z[uy]);
          if (g) {
            (*g)[ux] += w * wk * 2.0 * c1 * z[ux];
            (*g)[uy] += w * wk * 2.0 * c2 * z[uy];
          }
        }
      }
      if (g) (*g)[it] += w * total / z[it];
      return total;
    };
    p.ineq.push_back(NlpFunction{
        name.str(),
        [=](const std::vector<double>& z) {
          return sign * (integral(z, 1.0, nullptr) - bound);
        },
        [=](const std::vector<double>& z, double w, std::vector<double>& g) {
          integral(z, sign * w, &g);
        }});
  }

  // ---- objective ---------------------------------------------------------------
  if (fast_kind) {
    const double alpha = scenario.cost.alpha;
    const bool quad = scenario.cost.power_model == PowerModel::control_quadratic;
    const int it = L.tf();
    p.objective = NlpFunction{
        "objective_time",
        [=](const std::vector<double>& z) {
          double consumption = 0.0;
          if (quad && alpha < 1.0)
            for (int k = 0; k < L.nodes; ++k) {
              const double wk = node_weight_rel(L, k) * z[it];
              consumption += wk * (z[L.u(k, 0)] * z[L.u(k, 0)] +
                                   z[L.u(k, 1)] * z[L.u(k, 1)]);
            }
          return alpha * z[it] + (1.0 - alpha) * consumption;
        },
        [=](const std::vector<double>& z, double w, std::vector<double>& g) {
          g[it] += w * alpha;
          if (quad && alpha < 1.0) {
            double consumption = 0.0;
            for (int k = 0; k < L.nodes; ++k) {
              const double wk = node_weight_rel(L, k) * z[it];
              const int ux = L.u(k, 0), uy = L.u(k, 1);
              consumption += wk * (z[ux] * z[ux] + z[uy] * z[uy]);
              g[ux] += w * (1.0 - alpha) * wk * 2.0 * z[ux];
              g[uy] += w * (1.0 - alpha) * wk * 2.0 * z[uy];
            }
            g[it] += w * (1.0 - alpha) * consumption / z[it];
          }
        }};
  } else if (dist_kind) {
    // sum of smoothed node displacements: exact arc length of the
    // piecewise-linear label path up to the tiny regularization
    const double delta = 1e-9;
    p.objective = NlpFunction{
        "objective_distance",
        [=](const std::vector<double>& z) {
          double total = 0.0;
          for (int k = 0; k + 1 < L.nodes; ++k) {
            const double dx = z[L.x(k + 1, 0)] - z[L.x(k, 0)];
            const double dy = z[L.x(k + 1, 1)] - z[L.x(k, 1)];
            total += std::sqrt(dx * dx + dy * dy + delta * delta) - delta;
          }
          return total;
        },
        [=](const std::vector<double>& z, double w, std::vector<double>& g) {
          for (int k = 0; k + 1 < L.nodes; ++k) {
            const int ax = L.x(k, 0), ay = L.x(k, 1);
            const int bx = L.x(k + 1, 0), by = L.x(k + 1, 1);
            const double dx = z[bx] - z[ax];
            const double dy = z[by] - z[ay];
            const double r = std::sqrt(dx * dx + dy * dy + delta * delta);
            g[bx] += w * dx / r;
            g[by] += w * dy / r;
            g[ax] -= w * dx / r;
            g[ay] -= w * dy / r;
          }
        }};
  } else {
    // orienteering kinds: maximize the smoothed scores
    struct ScoreTerm {
      DwellTerm dwell;
      double sigma, target, rate, kappa;
      bool nbd;
    };
    std::vector<ScoreTerm> terms;
    for (const City& city : scenario.cities)
      terms.push_back(
          {DwellTerm{city.region, t_origin, options.eps, options.quad_refine, L},
           city.score, city.revenue_target, city.return_rate, options.kappa,
           kind == ProblemKind::op_nbd});
    const double eps_dwell = options.eps_dwell;
    p.objective = NlpFunction{
        "objective_score",
        [=](const std::vector<double>& z) {
          double total = 0.0;
          for (const ScoreTerm& st : terms) {
            const double dwell = st.dwell.eval(z, 1.0, nullptr);
            const double arg = st.nbd
                                   ? (st.rate * dwell - st.target) / st.kappa
                                   : (dwell - eps_dwell) / st.kappa;
            total -= st.sigma * logistic_neg(-arg);
          }
          return total;
        },
        [=](const std::vector<double>& z, double w, std::vector<double>& g) {
          for (const ScoreTerm& st : terms) {
            const double dwell = st.dwell.eval(z, 1.0, nullptr);
            const double coef = st.nbd ? st.rate / st.kappa : 1.0 / st.kappa;
            const double arg = st.nbd
                                   ? (st.rate * dwell - st.target) / st.kappa
                                   : (dwell - eps_dwell) / st.kappa;
            const double lg = logistic_neg(-arg);
            st.dwell.eval(z, -w * st.sigma * lg * (1.0 - lg) * coef, &g);
          }
        }};
  }

  return p;
}

}  // namespace tgtsp
