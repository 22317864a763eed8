#ifndef TGTSP_GEOMETRY_HPP
#define TGTSP_GEOMETRY_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tgtsp {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
double norm2(Point2 p);
double norm_inf(Point2 p);

struct Disk {
  Point2 center;
  double radius = 1.0;
};

/// Axis-aligned ellipse with semi-axes a (x) and b (y).
struct Ellipse {
  Point2 center;
  double a = 1.0;
  double b = 1.0;
};

/// Simple counter-clockwise polygon, at least 3 vertices.
struct Polygon {
  std::vector<Point2> vertices;
};

using Region = std::variant<Disk, Ellipse, Polygon>;

/// Piecewise-linear translation offset over time. Evaluation clamps to the
/// nearest knot outside the knot range.
struct MotionPath {
  struct Knot {
    double t = 0.0;
    Point2 offset;
  };
  std::vector<Knot> knots;

  Point2 offset_at(double t) const;
  /// Piecewise-constant time derivative of the offset (zero outside the knot
  /// range and, by convention, at the knots themselves).
  Point2 velocity_at(double t) const;
};

struct TimeWindow {
  double t_a = 0.0;
  double t_b = 1.0;

  bool contains(double t) const { return t >= t_a && t <= t_b; }
};

/// A region that may translate over time and may only be "open" during a
/// time window.
struct MovingRegion {
  Region base;
  std::optional<MotionPath> motion;
  std::optional<TimeWindow> window;

  Point2 offset_at(double t) const {
    return motion ? motion->offset_at(t) : Point2{};
  }
};

/// Throws ValidationError if a region invariant is broken (non-positive
/// radius/axes, degenerate or self-intersecting or clockwise polygon).
void validate_region(const Region& region, const std::string& label);

/// Signed distance to the region boundary: negative strictly inside, zero on
/// the boundary, positive outside. Exact for Disk and Polygon; for Ellipse
/// the algebraic level value scaled by its gradient norm (sign-exact,
/// magnitude first-order).
double signed_distance(const Region& region, Point2 p);

/// Signed distance together with its spatial gradient (unit-ish direction of
/// steepest increase). The gradient is defined almost everywhere; on the
/// measure-zero ridge set an arbitrary subgradient is returned.
struct SdGrad {
  double sd = 0.0;
  Point2 grad;
};
SdGrad signed_distance_grad(const Region& region, Point2 p);

/// Membership test for a moving, windowed region: inside (boundary counts as
/// inside) and the window, when present, admits t.
bool contains_at(const MovingRegion& mr, Point2 p, double t);

/// Ellipsoidal exclusion-zone value ((x-cx)/a)^2 + ((y-cy)/b)^2 - 1.
/// Non-negative iff p is outside or on the zone boundary. Throws
/// UnsupportedError for non-ellipse zones.
double zone_clearance(const Region& zone, Point2 p);

Point2 region_centroid(const Region& region);

/// Radius of a circle centered at the centroid that covers the region.
double bounding_radius(const Region& region);

}  // namespace tgtsp

#endif  // TGTSP_GEOMETRY_HPP
