#include "tgtsp/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "tgtsp/errors.hpp"
#include "tgtsp/json_io.hpp"

namespace tgtsp {

const City* Scenario::city_by_id(int id) const {
  for (const City& c : cities)
    if (c.id == id) return &c;
  return nullptr;
}

double Scenario::characteristic_radius() const {
  double sum = 0.0;
  for (const City& c : cities) sum += bounding_radius(c.region.base);
  return cities.empty() ? 1.0 : sum / static_cast<double>(cities.size());
}

Point2 Scenario::start_point() const {
  if (boundary.kind == Boundary::Kind::closed) return boundary.closed_at;
  return city_by_id(boundary.start_set)->centroid_at(0.0);
}

Point2 Scenario::end_point() const {
  if (boundary.kind == Boundary::Kind::closed) return boundary.closed_at;
  return city_by_id(boundary.end_set)->centroid_at(0.0);
}

std::string to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::d_tsp: return "d_tsp";
    case ProblemKind::i_tsp: return "i_tsp";
    case ProblemKind::fast_tsp: return "fast_tsp";
    case ProblemKind::op: return "op";
    case ProblemKind::op_nbd: return "op_nbd";
    case ProblemKind::fast_cemtspfn: return "fast_cemtspfn";
  }
  return "?";
}

ProblemKind problem_kind_from_string(const std::string& s) {
  if (s == "d_tsp") return ProblemKind::d_tsp;
  if (s == "i_tsp") return ProblemKind::i_tsp;
  if (s == "fast_tsp") return ProblemKind::fast_tsp;
  if (s == "op") return ProblemKind::op;
  if (s == "op_nbd") return ProblemKind::op_nbd;
  if (s == "fast_cemtspfn") return ProblemKind::fast_cemtspfn;
  throw ValidationError("problem: unknown problem kind '" + s + "'");
}

namespace {

double require_finite(double v, const std::string& field) {
  if (!std::isfinite(v)) throw ValidationError(field + ": must be finite");
  return v;
}

double get_num(const ordered_json& j, const std::string& key, double dflt,
               const std::string& ctx) {
  if (!j.contains(key)) return dflt;
  if (!j.at(key).is_number())
    throw ValidationError(ctx + "." + key + ": expected a number");
  return require_finite(j.at(key).get<double>(), ctx + "." + key);
}

Point2 parse_point(const ordered_json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError(field + ": expected [x, y]");
  Point2 p{j[0].get<double>(), j[1].get<double>()};
  require_finite(p.x, field);
  require_finite(p.y, field);
  return p;
}

Region parse_region(const ordered_json& j, const std::string& ctx) {
  if (!j.is_object() || j.size() != 1)
    throw ValidationError(ctx + ": expected one of disk/ellipse/polygon");
  Region region;
  if (j.contains("disk")) {
    const auto& d = j.at("disk");
    region = Disk{parse_point(d.at("center"), ctx + ".disk.center"),
                  get_num(d, "radius", 0.0, ctx + ".disk")};
  } else if (j.contains("ellipse")) {
    const auto& e = j.at("ellipse");
    region = Ellipse{parse_point(e.at("center"), ctx + ".ellipse.center"),
                     get_num(e, "a", 0.0, ctx + ".ellipse"),
                     get_num(e, "b", 0.0, ctx + ".ellipse")};
  } else if (j.contains("polygon")) {
    Polygon poly;
    const auto& verts = j.at("polygon").at("vertices");
    if (!verts.is_array())
      throw ValidationError(ctx + ".polygon.vertices: expected an array");
    for (const auto& v : verts)
      poly.vertices.push_back(parse_point(v, ctx + ".polygon.vertices[]"));
    region = std::move(poly);
  } else {
    throw ValidationError(ctx + ": unknown region type");
  }
  validate_region(region, ctx);
  return region;
}

ordered_json point_json(Point2 p) { return ordered_json::array({p.x, p.y}); }

ordered_json region_json(const Region& r) {
  ordered_json j;
  if (const Disk* d = std::get_if<Disk>(&r)) {
    j["disk"] = {{"center", point_json(d->center)}, {"radius", d->radius}};
  } else if (const Ellipse* e = std::get_if<Ellipse>(&r)) {
    j["ellipse"] = {{"center", point_json(e->center)}, {"a", e->a}, {"b", e->b}};
  } else {
    const Polygon& poly = std::get<Polygon>(r);
    ordered_json verts = ordered_json::array();
    for (const Point2& v : poly.vertices) verts.push_back(point_json(v));
    j["polygon"] = {{"vertices", verts}};
  }
  return j;
}

City parse_city(const ordered_json& j, std::size_t idx) {
  std::ostringstream ctxs;
  ctxs << "cities[" << idx << "]";
  const std::string ctx = ctxs.str();
  City c;
  if (!j.contains("id") || !j.at("id").is_number_integer())
    throw ValidationError(ctx + ".id: expected an integer");
  c.id = j.at("id").get<int>();
  c.region.base = parse_region(j.at("region"), ctx + ".region");
  c.dwell_min = get_num(j, "dwell_min", 0.0, ctx);
  c.score = get_num(j, "score", 1.0, ctx);
  c.revenue_target = get_num(j, "revenue_target", 0.0, ctx);
  c.return_rate = get_num(j, "return_rate", 1.0, ctx);
  if (c.dwell_min < 0.0) throw ValidationError(ctx + ".dwell_min: must be >= 0");
  if (c.score < 0.0) throw ValidationError(ctx + ".score: must be >= 0");
  if (c.revenue_target < 0.0)
    throw ValidationError(ctx + ".revenue_target: must be >= 0");
  if (j.contains("motion")) {
    MotionPath m;
    for (const auto& k : j.at("motion")) {
      if (!k.is_array() || k.size() != 3)
        throw ValidationError(ctx + ".motion: expected rows [t, dx, dy]");
      m.knots.push_back({require_finite(k[0].get<double>(), ctx + ".motion"),
                         {require_finite(k[1].get<double>(), ctx + ".motion"),
                          require_finite(k[2].get<double>(), ctx + ".motion")}});
    }
    for (std::size_t i = 1; i < m.knots.size(); ++i)
      if (!(m.knots[i - 1].t < m.knots[i].t))
        throw ValidationError(ctx + ".motion: knot times must strictly increase");
    if (!m.knots.empty()) c.region.motion = std::move(m);
  }
  if (j.contains("window")) {
    const auto& w = j.at("window");
    if (!w.is_array() || w.size() != 2)
      throw ValidationError(ctx + ".window: expected [t_a, t_b]");
    TimeWindow win{require_finite(w[0].get<double>(), ctx + ".window"),
                   require_finite(w[1].get<double>(), ctx + ".window")};
    if (!(win.t_a < win.t_b))
      throw ValidationError(ctx + ".window: t_a must be < t_b");
    c.region.window = win;
  }
  return c;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  const ordered_json j = parse_json(text, "scenario");
  Scenario s;
  if (!j.is_object()) throw ValidationError("scenario: expected a JSON object");
  if (!j.contains("cities") || !j.at("cities").is_array())
    throw ValidationError("cities: expected an array");
  std::size_t idx = 0;
  for (const auto& cj : j.at("cities")) s.cities.push_back(parse_city(cj, idx++));

  if (j.contains("zones")) {
    idx = 0;
    for (const auto& zj : j.at("zones")) {
      std::ostringstream ctx;
      ctx << "zones[" << idx++ << "]";
      s.zones.push_back(parse_region(zj, ctx.str()));
      if (!std::holds_alternative<Ellipse>(s.zones.back()))
        throw ValidationError(ctx.str() + ": zones must be ellipses");
    }
  }

  if (j.contains("dynamics")) {
    const auto& d = j.at("dynamics");
    if (d.contains("norm")) {
      const std::string n = d.at("norm").get<std::string>();
      if (n == "linf") s.dynamics.norm_kind = NormKind::linf;
      else if (n == "l2") s.dynamics.norm_kind = NormKind::l2;
      else throw ValidationError("dynamics.norm: expected 'linf' or 'l2'");
    }
    s.dynamics.v_max = get_num(d, "v_max", 1.0, "dynamics");
    s.dynamics.u_max = get_num(d, "u_max", 1.0, "dynamics");
  }

  if (j.contains("problem"))
    s.problem_kind = problem_kind_from_string(j.at("problem").get<std::string>());

  if (j.contains("boundary")) {
    const auto& b = j.at("boundary");
    if (b.contains("closed_at")) {
      s.boundary.kind = Boundary::Kind::closed;
      s.boundary.closed_at = parse_point(b.at("closed_at"), "boundary.closed_at");
    } else if (b.contains("start_set") && b.contains("end_set")) {
      s.boundary.kind = Boundary::Kind::sets;
      s.boundary.start_set = b.at("start_set").get<int>();
      s.boundary.end_set = b.at("end_set").get<int>();
    } else {
      throw ValidationError(
          "boundary: expected closed_at or start_set/end_set");
    }
  }

  if (j.contains("resources")) {
    idx = 0;
    for (const auto& rj : j.at("resources")) {
      std::ostringstream ctxs;
      ctxs << "resources[" << idx++ << "]";
      const std::string ctx = ctxs.str();
      ResourceConstraint rc;
      const std::string kind = rj.at("kind").get<std::string>();
      if (kind == "state_integral_min") rc.kind = ResourceKind::state_integral_min;
      else if (kind == "control_integral_max")
        rc.kind = ResourceKind::control_integral_max;
      else if (kind == "time_max") rc.kind = ResourceKind::time_max;
      else throw ValidationError(ctx + ".kind: unknown resource kind");
      if (rj.contains("coefficients"))
        for (const auto& c : rj.at("coefficients"))
          rc.coefficients.push_back(require_finite(c.get<double>(), ctx));
      rc.bound = get_num(rj, "bound", 0.0, ctx);
      s.resources.push_back(std::move(rc));
    }
  }

  if (j.contains("cost")) {
    const auto& c = j.at("cost");
    s.cost.alpha = get_num(c, "alpha", 1.0, "cost");
    if (c.contains("power_model")) {
      const std::string pm = c.at("power_model").get<std::string>();
      if (pm == "none") s.cost.power_model = PowerModel::none;
      else if (pm == "control_quadratic")
        s.cost.power_model = PowerModel::control_quadratic;
      else throw ValidationError("cost.power_model: unknown model");
    }
  }

  s.horizon_guess = get_num(j, "horizon_guess", 30.0, "scenario");

  validate_scenario(s);
  return s;
}

namespace {

// Conservative pairwise separation test on bounding circles. Exact for
// disk/disk pairs; for other shapes a pass still certifies disjointness.
void check_disjoint(const City& a, const City& b, double t) {
  const Point2 ca = region_centroid(a.region.base) + a.region.offset_at(t);
  const Point2 cb = region_centroid(b.region.base) + b.region.offset_at(t);
  const double gap = norm2(ca - cb) - bounding_radius(a.region.base) -
                     bounding_radius(b.region.base);
  if (gap <= 1e-9) {
    std::ostringstream msg;
    msg << "cities: regions of city " << a.id << " and city " << b.id
        << " overlap or touch at t=" << t;
    throw ValidationError(msg.str());
  }
}

}  // namespace

void validate_scenario(const Scenario& s) {
  if (s.cities.empty()) throw ValidationError("cities: at least one required");
  std::set<int> ids;
  for (const City& c : s.cities)
    if (!ids.insert(c.id).second)
      throw ValidationError("cities: duplicate id " +
                            std::to_string(c.id));
  if (!(s.dynamics.v_max > 0.0))
    throw ValidationError("dynamics.v_max: must be positive");
  if (!(s.dynamics.u_max > 0.0))
    throw ValidationError("dynamics.u_max: must be positive");
  if (s.cost.alpha < 0.0 || s.cost.alpha > 1.0)
    throw ValidationError("cost.alpha: must lie in [0, 1]");
  if (!(s.horizon_guess > 0.0))
    throw ValidationError("horizon_guess: must be positive");
  if (s.boundary.kind == Boundary::Kind::sets) {
    if (!s.city_by_id(s.boundary.start_set))
      throw ValidationError("boundary.start_set: unknown city id");
    if (!s.city_by_id(s.boundary.end_set))
      throw ValidationError("boundary.end_set: unknown city id");
  }
  for (const ResourceConstraint& rc : s.resources)
    require_finite(rc.bound, "resources.bound");

  // Disjointness is checked at t = 0 and at every motion knot time; full
  // continuous-time verification is out of scope for this motion class.
  std::set<double> sample_times{0.0};
  for (const City& c : s.cities)
    if (c.region.motion)
      for (const auto& k : c.region.motion->knots) sample_times.insert(k.t);
  for (std::size_t i = 0; i < s.cities.size(); ++i)
    for (std::size_t k = i + 1; k < s.cities.size(); ++k)
      for (double t : sample_times) check_disjoint(s.cities[i], s.cities[k], t);

  for (const City& c : s.cities) {
    const Point2 cc = c.centroid_at(0.0);
    const double rc = bounding_radius(c.region.base);
    for (std::size_t z = 0; z < s.zones.size(); ++z) {
      const Ellipse& e = std::get<Ellipse>(s.zones[z]);
      const double gap =
          norm2(cc - e.center) - rc - std::max(e.a, e.b);
      if (gap <= 1e-9) {
        std::ostringstream msg;
        msg << "zones[" << z << "]: overlaps city " << c.id << " at t=0";
        throw ValidationError(msg.str());
      }
    }
  }
}

std::string serialize_scenario(const Scenario& s) {
  ordered_json j;
  ordered_json cities = ordered_json::array();
  for (const City& c : s.cities) {
    ordered_json cj;
    cj["id"] = c.id;
    cj["region"] = region_json(c.region.base);
    cj["dwell_min"] = c.dwell_min;
    cj["score"] = c.score;
    cj["revenue_target"] = c.revenue_target;
    cj["return_rate"] = c.return_rate;
    if (c.region.motion) {
      ordered_json m = ordered_json::array();
      for (const auto& k : c.region.motion->knots)
        m.push_back(ordered_json::array({k.t, k.offset.x, k.offset.y}));
      cj["motion"] = m;
    }
    if (c.region.window)
      cj["window"] =
          ordered_json::array({c.region.window->t_a, c.region.window->t_b});
    cities.push_back(cj);
  }
  j["cities"] = cities;
  ordered_json zones = ordered_json::array();
  for (const Region& z : s.zones) zones.push_back(region_json(z));
  j["zones"] = zones;
  j["dynamics"] = {
      {"norm", s.dynamics.norm_kind == NormKind::linf ? "linf" : "l2"},
      {"v_max", s.dynamics.v_max},
      {"u_max", s.dynamics.u_max}};
  j["problem"] = to_string(s.problem_kind);
  if (s.boundary.kind == Boundary::Kind::closed) {
    j["boundary"] = {{"closed_at", point_json(s.boundary.closed_at)}};
  } else {
    j["boundary"] = {{"start_set", s.boundary.start_set},
                     {"end_set", s.boundary.end_set}};
  }
  ordered_json resources = ordered_json::array();
  for (const ResourceConstraint& rc : s.resources) {
    ordered_json rj;
    switch (rc.kind) {
      case ResourceKind::state_integral_min: rj["kind"] = "state_integral_min"; break;
      case ResourceKind::control_integral_max: rj["kind"] = "control_integral_max"; break;
      case ResourceKind::time_max: rj["kind"] = "time_max"; break;
    }
    rj["coefficients"] = rc.coefficients;
    rj["bound"] = rc.bound;
    resources.push_back(rj);
  }
  j["resources"] = resources;
  j["cost"] = {{"alpha", s.cost.alpha},
               {"power_model", s.cost.power_model == PowerModel::none
                                   ? "none"
                                   : "control_quadratic"}};
  j["horizon_guess"] = s.horizon_guess;
  return dump_json(j, 2);
}

bool operator==(const Point2& a, const Point2& b) {
  return a.x == b.x && a.y == b.y;
}

namespace {

bool region_eq(const Region& a, const Region& b) {
  if (a.index() != b.index()) return false;
  if (const Disk* da = std::get_if<Disk>(&a)) {
    const Disk& db = std::get<Disk>(b);
    return da->center == db.center && da->radius == db.radius;
  }
  if (const Ellipse* ea = std::get_if<Ellipse>(&a)) {
    const Ellipse& eb = std::get<Ellipse>(b);
    return ea->center == eb.center && ea->a == eb.a && ea->b == eb.b;
  }
  return std::get<Polygon>(a).vertices == std::get<Polygon>(b).vertices;
}

bool moving_region_eq(const MovingRegion& a, const MovingRegion& b) {
  if (!region_eq(a.base, b.base)) return false;
  if (a.motion.has_value() != b.motion.has_value()) return false;
  if (a.motion) {
    if (a.motion->knots.size() != b.motion->knots.size()) return false;
    for (std::size_t i = 0; i < a.motion->knots.size(); ++i)
      if (a.motion->knots[i].t != b.motion->knots[i].t ||
          !(a.motion->knots[i].offset == b.motion->knots[i].offset))
        return false;
  }
  if (a.window.has_value() != b.window.has_value()) return false;
  if (a.window &&
      (a.window->t_a != b.window->t_a || a.window->t_b != b.window->t_b))
    return false;
  return true;
}

}  // namespace

bool operator==(const Scenario& a, const Scenario& b) {
  if (a.cities.size() != b.cities.size() || a.zones.size() != b.zones.size() ||
      a.resources.size() != b.resources.size())
    return false;
  for (std::size_t i = 0; i < a.cities.size(); ++i) {
    const City& ca = a.cities[i];
    const City& cb = b.cities[i];
    if (ca.id != cb.id || ca.dwell_min != cb.dwell_min || ca.score != cb.score ||
        ca.revenue_target != cb.revenue_target ||
        ca.return_rate != cb.return_rate ||
        !moving_region_eq(ca.region, cb.region))
      return false;
  }
  for (std::size_t i = 0; i < a.zones.size(); ++i)
    if (!region_eq(a.zones[i], b.zones[i])) return false;
  if (a.dynamics.norm_kind != b.dynamics.norm_kind ||
      a.dynamics.v_max != b.dynamics.v_max || a.dynamics.u_max != b.dynamics.u_max)
    return false;
  if (a.problem_kind != b.problem_kind) return false;
  if (a.boundary.kind != b.boundary.kind) return false;
  if (a.boundary.kind == Boundary::Kind::closed) {
    if (!(a.boundary.closed_at == b.boundary.closed_at)) return false;
  } else {
    if (a.boundary.start_set != b.boundary.start_set ||
        a.boundary.end_set != b.boundary.end_set)
      return false;
  }
  for (std::size_t i = 0; i < a.resources.size(); ++i) {
    const ResourceConstraint& ra = a.resources[i];
    const ResourceConstraint& rb = b.resources[i];
    if (ra.kind != rb.kind || ra.bound != rb.bound ||
        ra.coefficients != rb.coefficients)
      return false;
  }
  return a.horizon_guess == b.horizon_guess && a.cost.alpha == b.cost.alpha &&
         a.cost.power_model == b.cost.power_model;
}

}  // namespace tgtsp
