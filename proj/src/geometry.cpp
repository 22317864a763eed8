#include "tgtsp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tgtsp/errors.hpp"

namespace tgtsp {

double norm2(Point2 p) { return std::sqrt(p.x * p.x + p.y * p.y); }
double norm_inf(Point2 p) { return std::max(std::fabs(p.x), std::fabs(p.y)); }

Point2 MotionPath::offset_at(double t) const {
  if (knots.empty()) return {};
  if (t <= knots.front().t) return knots.front().offset;
  if (t >= knots.back().t) return knots.back().offset;
  auto it = std::upper_bound(knots.begin(), knots.end(), t,
                             [](double v, const Knot& k) { return v < k.t; });
  const Knot& hi = *it;
  const Knot& lo = *(it - 1);
  const double s = (t - lo.t) / (hi.t - lo.t);
  return {lo.offset.x + s * (hi.offset.x - lo.offset.x),
          lo.offset.y + s * (hi.offset.y - lo.offset.y)};
}

Point2 MotionPath::velocity_at(double t) const {
  if (knots.size() < 2) return {};
  if (t <= knots.front().t || t >= knots.back().t) return {};
  auto it = std::upper_bound(knots.begin(), knots.end(), t,
                             [](double v, const Knot& k) { return v < k.t; });
  const Knot& hi = *it;
  const Knot& lo = *(it - 1);
  const double inv = 1.0 / (hi.t - lo.t);
  return {(hi.offset.x - lo.offset.x) * inv, (hi.offset.y - lo.offset.y) * inv};
}

namespace {

double polygon_signed_area(const std::vector<Point2>& v) {
  double a = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& p = v[i];
    const Point2& q = v[(i + 1) % v.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return 0.5 * a;
}

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  auto cross = [](Point2 u, Point2 v) { return u.x * v.y - u.y * v.x; };
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

// Distance from p to segment [a,b] and the closest point.
double point_segment_distance(Point2 p, Point2 a, Point2 b, Point2* closest) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Point2 c = a + t * ab;
  if (closest) *closest = c;
  return norm2(p - c);
}

// Winding-based inside test (boundary counts as inside via the distance
// magnitude being zero there; the crossing parity itself treats boundary
// points arbitrarily, which the caller masks with the distance term).
bool polygon_contains(const std::vector<Point2>& v, Point2 p) {
  bool inside = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    const Point2& a = v[i];
    const Point2& b = v[j];
    const bool straddles = (a.y > p.y) != (b.y > p.y);
    if (straddles) {
      const double x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

}  // namespace

void validate_region(const Region& region, const std::string& label) {
  if (const Disk* d = std::get_if<Disk>(&region)) {
    if (!(d->radius > 0.0) || !std::isfinite(d->radius))
      throw ValidationError(label + ": disk radius must be positive");
    if (!std::isfinite(d->center.x) || !std::isfinite(d->center.y))
      throw ValidationError(label + ": disk center must be finite");
    return;
  }
  if (const Ellipse* e = std::get_if<Ellipse>(&region)) {
    if (!(e->a > 0.0) || !(e->b > 0.0) || !std::isfinite(e->a) ||
        !std::isfinite(e->b))
      throw ValidationError(label + ": ellipse semi-axes must be positive");
    if (!std::isfinite(e->center.x) || !std::isfinite(e->center.y))
      throw ValidationError(label + ": ellipse center must be finite");
    return;
  }
  const Polygon& poly = std::get<Polygon>(region);
  const auto& v = poly.vertices;
  if (v.size() < 3)
    throw ValidationError(label + ": polygon needs at least 3 vertices");
  for (const Point2& p : v)
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw ValidationError(label + ": polygon vertex must be finite");
  if (polygon_signed_area(v) <= 0.0)
    throw ValidationError(label + ": polygon must be counter-clockwise");
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // skip adjacent edges (shared vertex)
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
        throw ValidationError(label + ": polygon is self-intersecting");
    }
  }
}

double signed_distance(const Region& region, Point2 p) {
  return signed_distance_grad(region, p).sd;
}

SdGrad signed_distance_grad(const Region& region, Point2 p) {
  if (const Disk* d = std::get_if<Disk>(&region)) {
    const Point2 q = p - d->center;
    const double r = norm2(q);
    if (r < 1e-300) return {-d->radius, {1.0, 0.0}};
    return {r - d->radius, {q.x / r, q.y / r}};
  }
  if (const Ellipse* e = std::get_if<Ellipse>(&region)) {
    const Point2 q = p - e->center;
    const double qa = q.x / e->a;
    const double qb = q.y / e->b;
    const double level = qa * qa + qb * qb - 1.0;
    const Point2 gl{2.0 * q.x / (e->a * e->a), 2.0 * q.y / (e->b * e->b)};
    const double gn = norm2(gl);
    if (gn < 1e-12) {
      // only at the exact center
      return {-std::min(e->a, e->b), {1.0, 0.0}};
    }
    // sd = level / |grad level|; grad sd = gl/gn - level * H*gl / gn^3 with
    // H = diag(2/a^2, 2/b^2) the constant Hessian of the level function.
    const Point2 hgl{2.0 * gl.x / (e->a * e->a), 2.0 * gl.y / (e->b * e->b)};
    const double inv3 = 1.0 / (gn * gn * gn);
    return {level / gn,
            {gl.x / gn - level * hgl.x * inv3, gl.y / gn - level * hgl.y * inv3}};
  }
  const Polygon& poly = std::get<Polygon>(region);
  double best = std::numeric_limits<double>::infinity();
  Point2 best_closest;
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Point2 closest;
    const double dist =
        point_segment_distance(p, v[i], v[(i + 1) % v.size()], &closest);
    if (dist < best) {
      best = dist;
      best_closest = closest;
    }
  }
  const double sign = polygon_contains(v, p) ? -1.0 : 1.0;
  Point2 dir = p - best_closest;
  const double dn = norm2(dir);
  if (dn < 1e-300) {
    // on the boundary; outward normal is ill-defined at vertices, fall back
    dir = {1.0, 0.0};
  } else {
    dir = (sign / dn) * dir;
  }
  return {sign * best, dir};
}

bool contains_at(const MovingRegion& mr, Point2 p, double t) {
  if (mr.window && !mr.window->contains(t)) return false;
  const Point2 rel = p - mr.offset_at(t);
  return signed_distance(mr.base, rel) <= 0.0;
}

double zone_clearance(const Region& zone, Point2 p) {
  const Ellipse* e = std::get_if<Ellipse>(&zone);
  if (!e) throw UnsupportedError("zone_clearance: zone must be an ellipse");
  const double qa = (p.x - e->center.x) / e->a;
  const double qb = (p.y - e->center.y) / e->b;
  return qa * qa + qb * qb - 1.0;
}

Point2 region_centroid(const Region& region) {
  if (const Disk* d = std::get_if<Disk>(&region)) return d->center;
  if (const Ellipse* e = std::get_if<Ellipse>(&region)) return e->center;
  const Polygon& poly = std::get<Polygon>(region);
  const auto& v = poly.vertices;
  const double area = polygon_signed_area(v);
  double cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& p = v[i];
    const Point2& q = v[(i + 1) % v.size()];
    const double w = p.x * q.y - q.x * p.y;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  return {cx / (6.0 * area), cy / (6.0 * area)};
}

double bounding_radius(const Region& region) {
  if (const Disk* d = std::get_if<Disk>(&region)) return d->radius;
  if (const Ellipse* e = std::get_if<Ellipse>(&region)) return std::max(e->a, e->b);
  const Polygon& poly = std::get<Polygon>(region);
  const Point2 c = region_centroid(region);
  double r = 0.0;
  for (const Point2& p : poly.vertices) r = std::max(r, norm2(p - c));
  return r;
}

}  // namespace tgtsp
