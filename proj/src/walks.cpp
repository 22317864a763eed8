#include "tgtsp/walks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tgtsp/errors.hpp"
#include "tgtsp/json_io.hpp"

namespace tgtsp {

namespace {

constexpr double kMicroSegment = 1e-9;  // shorter segments merge into neighbors

struct CityInterval {
  Interval iv;
  int city_id;
};

}  // namespace

Segmentation segment(const Trajectory& traj, const Scenario& scenario) {
  traj.validate();
  std::vector<CityInterval> visits;
  for (const City& c : scenario.cities)
    for (const Interval& iv : visit_intervals(traj, c.region))
      if (iv.length() > kMicroSegment) visits.push_back({iv, c.id});
  std::sort(visits.begin(), visits.end(),
            [](const CityInterval& a, const CityInterval& b) {
              return a.iv.start < b.iv.start;
            });

  for (std::size_t i = 0; i + 1 < visits.size(); ++i) {
    const double gap = visits[i + 1].iv.start - visits[i].iv.end;
    if (gap < kMicroSegment) {
      std::ostringstream msg;
      msg << "segment: trajectory occupies cities " << visits[i].city_id
          << " and " << visits[i + 1].city_id
          << " simultaneously near t=" << visits[i + 1].iv.start
          << " (regions overlap or touch along the path)";
      throw ValidationError(msg.str());
    }
  }

  Segmentation out;
  double cursor = traj.t0();
  for (const CityInterval& v : visits) {
    double vstart = v.iv.start;
    double vend = v.iv.end;
    if (vstart - cursor > kMicroSegment)
      out.segments.push_back({Segment::Kind::arc, -1, cursor, vstart});
    else
      vstart = cursor;  // absorb a micro leading gap into the vertex
    if (traj.tf() - vend <= kMicroSegment) vend = traj.tf();
    out.segments.push_back({Segment::Kind::vertex, v.city_id, vstart, vend});
    cursor = vend;
  }
  if (traj.tf() - cursor > kMicroSegment)
    out.segments.push_back({Segment::Kind::arc, -1, cursor, traj.tf()});
  else if (!out.segments.empty())
    out.segments.back().end = traj.tf();
  if (out.segments.empty())
    out.segments.push_back({Segment::Kind::arc, -1, traj.t0(), traj.tf()});
  return out;
}

bool is_hamiltonian(const Trajectory& traj, const Scenario& scenario) {
  const Segmentation seg = segment(traj, scenario);
  std::vector<int> counts(scenario.cities.size(), 0);
  for (const Segment& s : seg.segments) {
    if (s.kind != Segment::Kind::vertex) continue;
    for (std::size_t i = 0; i < scenario.cities.size(); ++i)
      if (scenario.cities[i].id == s.city_id) ++counts[i];
  }
  return std::all_of(counts.begin(), counts.end(),
                     [](int c) { return c == 1; });
}

namespace {

double resource_value(const Trajectory& traj, const ResourceConstraint& rc) {
  if (rc.kind == ResourceKind::time_max) return traj.duration();
  auto integrand = [&](std::size_t k) {
    if (rc.kind == ResourceKind::control_integral_max) {
      const double c1 = rc.coefficients.size() > 0 ? rc.coefficients[0] : 1.0;
      const double c2 = rc.coefficients.size() > 1 ? rc.coefficients[1] : 1.0;
      return c1 * traj.controls[k][0] * traj.controls[k][0] +
             c2 * traj.controls[k][1] * traj.controls[k][1];
    }
    // state_integral_min: coefficients dot [x1 x2 x3 x4 u1 u2 1]
    const double phi[7] = {traj.states[k][0], traj.states[k][1],
                           traj.states[k][2], traj.states[k][3],
                           traj.controls[k][0], traj.controls[k][1], 1.0};
    double v = 0.0;
    for (std::size_t i = 0; i < rc.coefficients.size() && i < 7; ++i)
      v += rc.coefficients[i] * phi[i];
    return v;
  };
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < traj.times.size(); ++k)
    total += 0.5 * (traj.times[k + 1] - traj.times[k]) *
             (integrand(k) + integrand(k + 1));
  return total;
}

}  // namespace

TourReport tour_report(const Trajectory& traj, const Scenario& scenario,
                       const VerifyTolerances& tol) {
  const Segmentation seg = segment(traj, scenario);
  const ProblemKind kind = scenario.problem_kind;
  const bool fast_kind =
      kind == ProblemKind::fast_tsp || kind == ProblemKind::fast_cemtspfn;

  TourReport rep;
  rep.final_time = traj.tf();
  rep.tour_length_l2 = tour_length(traj, NormKind::l2);

  for (const Segment& s : seg.segments)
    if (s.kind == Segment::Kind::vertex) rep.visit_order.push_back(s.city_id);

  for (const City& c : scenario.cities) {
    CityReport cr;
    cr.id = c.id;
    cr.time_on_task = time_on_task(traj, c, EvalMode::exact);
    cr.degree = degree(traj, c);
    cr.visited = visit_indicator(traj, c);
    cr.atomic_return = atomic_return(traj, c, EvalMode::exact);
    cr.score = kind == ProblemKind::op_nbd
                   ? nbd_score(traj, c, EvalMode::exact)
                   : c.score * cr.visited;
    cr.dwell_ok = cr.time_on_task >= c.dwell_min - tol.dwell;
    if (fast_kind && !cr.dwell_ok) {
      std::ostringstream msg;
      msg << "dwell: city " << c.id << " time-on-task " << cr.time_on_task
          << " below required " << c.dwell_min;
      rep.violations.push_back(msg.str());
    }
    rep.total_score += cr.score;
    rep.cities.push_back(cr);
  }

  rep.hamiltonian = true;
  {
    std::vector<int> counts(scenario.cities.size(), 0);
    for (int id : rep.visit_order)
      for (std::size_t i = 0; i < scenario.cities.size(); ++i)
        if (scenario.cities[i].id == id) ++counts[i];
    for (int c : counts)
      if (c != 1) rep.hamiltonian = false;
  }

  rep.dwell_ok = !fast_kind || std::all_of(rep.cities.begin(), rep.cities.end(),
                                           [](const CityReport& c) {
                                             return c.dwell_ok;
                                           });

  // zones: dense resampling of the piecewise-linear label path
  rep.min_zone_clearance = std::numeric_limits<double>::infinity();
  if (scenario.zones.empty()) rep.min_zone_clearance = 0.0;
  const int dense = std::max(1, tol.resample);
  for (std::size_t k = 0; k + 1 < traj.times.size(); ++k) {
    for (int m = 0; m < dense; ++m) {
      const double s = static_cast<double>(m) / dense;
      const Point2 p = traj.labels[k] + s * (traj.labels[k + 1] - traj.labels[k]);
      for (const Region& z : scenario.zones)
        rep.min_zone_clearance = std::min(rep.min_zone_clearance,
                                          zone_clearance(z, p));
    }
  }
  if (!scenario.zones.empty())
    for (const Region& z : scenario.zones)
      rep.min_zone_clearance = std::min(
          rep.min_zone_clearance, zone_clearance(z, traj.labels.back()));
  rep.zones_ok = rep.min_zone_clearance >= -tol.zone;
  if (!rep.zones_ok) {
    std::ostringstream msg;
    msg << "zone: clearance " << rep.min_zone_clearance
        << " below 0 along the path";
    rep.violations.push_back(msg.str());
  }

  // dynamics bounds at nodes (piecewise-linear states attain maxima there)
  const NormKind nk = scenario.dynamics.norm_kind;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const Point2 v{traj.states[k][2], traj.states[k][3]};
    const Point2 u{traj.controls[k][0], traj.controls[k][1]};
    rep.max_velocity = std::max(rep.max_velocity,
                                nk == NormKind::l2 ? norm2(v) : norm_inf(v));
    rep.max_control = std::max(rep.max_control,
                               nk == NormKind::l2 ? norm2(u) : norm_inf(u));
  }
  rep.dynamics_ok = rep.max_velocity <= scenario.dynamics.v_max + tol.bounds &&
                    rep.max_control <= scenario.dynamics.u_max + tol.bounds;
  if (!rep.dynamics_ok) {
    std::ostringstream msg;
    msg << "dynamics: max velocity " << rep.max_velocity << " / bound "
        << scenario.dynamics.v_max << ", max control " << rep.max_control
        << " / bound " << scenario.dynamics.u_max;
    rep.violations.push_back(msg.str());
  }

  // boundary conditions
  if (scenario.boundary.kind == Boundary::Kind::closed) {
    rep.closure_error = norm2(traj.labels.back() - traj.labels.front());
    const double anchor = norm2(traj.labels.front() - scenario.boundary.closed_at);
    rep.boundary_ok = rep.closure_error <= tol.closure && anchor <= tol.anchor;
    if (!rep.boundary_ok) {
      std::ostringstream msg;
      msg << "boundary: closure error " << rep.closure_error << ", anchor error "
          << anchor;
      rep.violations.push_back(msg.str());
    }
  } else {
    const City* start = scenario.city_by_id(scenario.boundary.start_set);
    const City* end = scenario.city_by_id(scenario.boundary.end_set);
    const double sd_start = signed_distance(
        start->region.base, traj.labels.front() - start->region.offset_at(traj.t0()));
    const double sd_end = signed_distance(
        end->region.base, traj.labels.back() - end->region.offset_at(traj.tf()));
    rep.closure_error = std::max(sd_start, sd_end);
    rep.boundary_ok = sd_start <= tol.zone && sd_end <= tol.zone;
    if (!rep.boundary_ok)
      rep.violations.push_back("boundary: endpoint outside its start/end set");
  }

  // resources
  rep.resources_ok = true;
  for (const ResourceConstraint& rc : scenario.resources) {
    const double v = resource_value(traj, rc);
    const double slack = tol.resource * std::max(1.0, std::fabs(rc.bound));
    const bool ok = rc.kind == ResourceKind::state_integral_min
                        ? v >= rc.bound - slack
                        : v <= rc.bound + slack;
    if (!ok) {
      rep.resources_ok = false;
      std::ostringstream msg;
      msg << "resource: value " << v << " violates bound " << rc.bound;
      rep.violations.push_back(msg.str());
    }
  }

  switch (kind) {
    case ProblemKind::d_tsp:
    case ProblemKind::i_tsp:
      rep.objective = rep.tour_length_l2;
      break;
    case ProblemKind::fast_tsp:
    case ProblemKind::fast_cemtspfn:
      rep.objective =
          hybrid_cost(traj, scenario.cost.alpha, scenario.cost.power_model);
      break;
    case ProblemKind::op:
    case ProblemKind::op_nbd:
      rep.objective = rep.total_score;
      break;
  }

  // Visits are optional for orienteering kinds: the Hamiltonian flag is
  // reported either way and passes() decides whether it gates the verdict.
  rep.feasible = rep.dwell_ok && rep.zones_ok && rep.dynamics_ok &&
                 rep.boundary_ok && rep.resources_ok;
  return rep;
}

std::string serialize_report(const TourReport& rep) {
  ordered_json j;
  ordered_json cities = ordered_json::array();
  for (const CityReport& c : rep.cities) {
    ordered_json cj;
    cj["id"] = c.id;
    cj["T"] = c.time_on_task;
    cj["D"] = c.degree;
    cj["W"] = c.visited;
    cj["R"] = c.atomic_return;
    cj["score"] = c.score;
    cj["dwell_ok"] = c.dwell_ok;
    cities.push_back(cj);
  }
  j["cities"] = cities;
  j["visit_order"] = rep.visit_order;
  j["objective"] = rep.objective;
  j["feasible"] = rep.feasible;
  j["hamiltonian"] = rep.hamiltonian;
  ordered_json checks;
  checks["dwell_ok"] = rep.dwell_ok;
  checks["zones_ok"] = rep.zones_ok;
  checks["dynamics_ok"] = rep.dynamics_ok;
  checks["boundary_ok"] = rep.boundary_ok;
  checks["resources_ok"] = rep.resources_ok;
  checks["min_zone_clearance"] = rep.min_zone_clearance;
  checks["max_velocity"] = rep.max_velocity;
  checks["max_control"] = rep.max_control;
  checks["closure_error"] = rep.closure_error;
  j["checks"] = checks;
  j["final_time"] = rep.final_time;
  j["tour_length_l2"] = rep.tour_length_l2;
  j["total_score"] = rep.total_score;
  j["violations"] = rep.violations;
  return dump_json(j, 2);
}

}  // namespace tgtsp
