#ifndef TGTSP_SCENARIO_HPP
#define TGTSP_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include "tgtsp/geometry.hpp"

namespace tgtsp {

/// One "city": a moving region plus its dwell/score/revenue data.
struct City {
  int id = 0;
  MovingRegion region;
  double dwell_min = 0.0;       // minimum required time inside
  double score = 1.0;           // orienteering score
  double revenue_target = 0.0;  // revenue needed before the score is credited
  double return_rate = 1.0;     // revenue earned per unit time inside

  Point2 centroid_at(double t) const {
    return region_centroid(region.base) + region.offset_at(t);
  }
};

enum class NormKind { linf, l2 };

struct DynamicsConfig {
  NormKind norm_kind = NormKind::linf;
  double v_max = 1.0;
  double u_max = 1.0;
};

enum class ResourceKind { state_integral_min, control_integral_max, time_max };

/// Generic resource functional bound. For the integral kinds the integrand is
/// coefficients dot [x1 x2 x3 x4 u1 u2 1] (state_integral_min, must stay at or
/// above bound) or coefficients dot [u1^2 u2^2] (control_integral_max, must
/// stay at or below bound). time_max bounds the horizon directly.
struct ResourceConstraint {
  ResourceKind kind = ResourceKind::time_max;
  std::vector<double> coefficients;
  double bound = 0.0;
};

enum class ProblemKind { d_tsp, i_tsp, fast_tsp, op, op_nbd, fast_cemtspfn };

/// Either a closed tour anchored at a point, or open endpoints constrained to
/// the regions of two cities.
struct Boundary {
  enum class Kind { closed, sets } kind = Kind::closed;
  Point2 closed_at;
  int start_set = 0;  // city ids, used when kind == sets
  int end_set = 0;
};

enum class PowerModel { none, control_quadratic };

struct CostConfig {
  double alpha = 1.0;  // 1 = pure time, 0 = pure consumption
  PowerModel power_model = PowerModel::none;
};

struct Scenario {
  std::vector<City> cities;
  std::vector<Region> zones;  // forbidden ellipses
  DynamicsConfig dynamics;
  ProblemKind problem_kind = ProblemKind::fast_cemtspfn;
  Boundary boundary;
  std::vector<ResourceConstraint> resources;
  double horizon_guess = 30.0;
  CostConfig cost;

  const City* city_by_id(int id) const;
  /// Mean city bounding radius; the length scale smoothing defaults hang off.
  double characteristic_radius() const;
  /// Point the tours are anchored at (closed point or start-city centroid).
  Point2 start_point() const;
  Point2 end_point() const;
};

/// Parse + validate a scenario document. Throws ParseError on malformed JSON
/// (with byte position) and ValidationError naming the offending field.
Scenario parse_scenario(const std::string& text);

/// Deterministic inverse of parse_scenario: fixed key order, doubles with 17
/// significant digits.
std::string serialize_scenario(const Scenario& s);

/// Re-run the construction-time validation (parse_scenario calls this).
void validate_scenario(const Scenario& s);

bool operator==(const Point2&, const Point2&);
bool operator==(const Scenario&, const Scenario&);

std::string to_string(ProblemKind k);
ProblemKind problem_kind_from_string(const std::string& s);

}  // namespace tgtsp

#endif  // TGTSP_SCENARIO_HPP
