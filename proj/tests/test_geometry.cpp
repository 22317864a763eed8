#include <doctest.h>

#include <cmath>
#include <random>

#include "tgtsp/errors.hpp"
#include "tgtsp/geometry.hpp"

using namespace tgtsp;

TEST_CASE("disk signed distance") {
  const Region disk = Disk{{0.0, 0.0}, 1.0};
  CHECK(signed_distance(disk, {2.0, 0.0}) == doctest::Approx(1.0));
  CHECK(signed_distance(disk, {0.0, 0.0}) == doctest::Approx(-1.0));
  CHECK(signed_distance(disk, {0.0, 1.0}) == doctest::Approx(0.0));
}

TEST_CASE("ellipse signed distance is boundary-exact and sign-correct") {
  const Region ell = Ellipse{{0.0, 0.0}, 2.0, 1.0};
  CHECK(signed_distance(ell, {2.0, 0.0}) == doctest::Approx(0.0));
  CHECK(signed_distance(ell, {0.0, 1.0}) == doctest::Approx(0.0));
  CHECK(signed_distance(ell, {0.0, 0.0}) < 0.0);
  CHECK(signed_distance(ell, {3.0, 0.0}) > 0.0);

  // sign agreement with the exact algebraic membership on random points
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 10000; ++i) {
    const Point2 p{u(rng), u(rng)};
    const double level = (p.x / 2.0) * (p.x / 2.0) + p.y * p.y - 1.0;
    if (std::fabs(level) < 1e-12) continue;
    CHECK((signed_distance(ell, p) < 0.0) == (level < 0.0));
  }
}

TEST_CASE("polygon signed distance") {
  // unit square, counter-clockwise
  const Region square =
      Polygon{{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}};
  CHECK(signed_distance(square, {0.5, 0.5}) == doctest::Approx(-0.5));
  CHECK(signed_distance(square, {2.0, 0.5}) == doctest::Approx(1.0));
  CHECK(signed_distance(square, {0.5, 0.0}) == doctest::Approx(0.0));
}

TEST_CASE("signed distance is 1-Lipschitz for disks and polygons") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  const Region disk = Disk{{0.5, -0.25}, 1.5};
  const Region poly =
      Polygon{{{-1.0, -1.0}, {1.5, -0.8}, {1.0, 1.2}, {-0.5, 1.0}}};
  for (int i = 0; i < 2000; ++i) {
    const Point2 p{u(rng), u(rng)};
    const Point2 q{u(rng), u(rng)};
    const double d = norm2(p - q);
    for (const Region* r : {&disk, &poly}) {
      CHECK(std::fabs(signed_distance(*r, p) - signed_distance(*r, q)) <=
            d + 1e-9);
    }
  }
}

TEST_CASE("signed distance gradients match finite differences") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const Region shapes[] = {
      Disk{{0.2, -0.1}, 1.2}, Ellipse{{0.0, 0.5}, 2.0, 0.7},
      Polygon{{{-1.0, -1.0}, {1.5, -0.8}, {1.0, 1.2}, {-0.5, 1.0}}}};
  const double h = 1e-6;
  for (const Region& r : shapes) {
    for (int i = 0; i < 200; ++i) {
      const Point2 p{u(rng), u(rng)};
      if (std::fabs(signed_distance(r, p)) < 1e-3) continue;  // ridge guard
      const SdGrad sg = signed_distance_grad(r, p);
      const double fx = (signed_distance(r, {p.x + h, p.y}) -
                         signed_distance(r, {p.x - h, p.y})) /
                        (2.0 * h);
      const double fy = (signed_distance(r, {p.x, p.y + h}) -
                         signed_distance(r, {p.x, p.y - h})) /
                        (2.0 * h);
      CHECK(sg.grad.x == doctest::Approx(fx).epsilon(1e-3));
      CHECK(sg.grad.y == doctest::Approx(fy).epsilon(1e-3));
    }
  }
}

TEST_CASE("contains_at honors windows and motion") {
  MovingRegion mr;
  mr.base = Disk{{0.0, 0.0}, 1.0};
  mr.window = TimeWindow{1.0, 2.0};
  CHECK_FALSE(contains_at(mr, {0.0, 0.0}, 0.5));
  CHECK(contains_at(mr, {0.0, 0.0}, 1.5));

  MovingRegion moving;
  moving.base = Disk{{0.0, 0.0}, 1.0};
  moving.motion = MotionPath{{{0.0, {0.0, 0.0}}, {1.0, {5.0, 0.0}}}};
  CHECK(contains_at(moving, {5.0, 0.0}, 1.0));
  CHECK_FALSE(contains_at(moving, {0.0, 0.0}, 1.0));
  CHECK(contains_at(moving, {2.5, 0.0}, 0.5));
}

TEST_CASE("contains_at equals signed distance when the window passes") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  MovingRegion mr;
  mr.base = Ellipse{{0.3, -0.2}, 1.4, 0.8};
  for (int i = 0; i < 10000; ++i) {
    const Point2 p{u(rng), u(rng)};
    const bool inside = signed_distance(mr.base, p) <= 0.0;
    CHECK(contains_at(mr, p, 0.0) == inside);
  }
}

TEST_CASE("zone clearance") {
  const Region zone = Ellipse{{0.0, 0.0}, 2.0, 1.0};
  CHECK(zone_clearance(zone, {0.0, 0.0}) == doctest::Approx(-1.0));
  CHECK(zone_clearance(zone, {2.0, 0.0}) == doctest::Approx(0.0));
  CHECK(zone_clearance(zone, {4.0, 0.0}) == doctest::Approx(3.0));
  CHECK_THROWS_AS(zone_clearance(Disk{{0.0, 0.0}, 1.0}, {0.0, 0.0}),
                  UnsupportedError);

  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 10000; ++i) {
    const Point2 p{u(rng), u(rng)};
    const double exact = (p.x / 2.0) * (p.x / 2.0) + p.y * p.y - 1.0;
    if (std::fabs(exact) < 1e-12) continue;
    CHECK((zone_clearance(zone, p) >= 0.0) == (exact >= 0.0));
  }
}

TEST_CASE("motion path clamps outside the knot range") {
  MotionPath m{{{1.0, {0.0, 0.0}}, {2.0, {4.0, 2.0}}}};
  CHECK(m.offset_at(0.0).x == doctest::Approx(0.0));
  CHECK(m.offset_at(1.5).x == doctest::Approx(2.0));
  CHECK(m.offset_at(1.5).y == doctest::Approx(1.0));
  CHECK(m.offset_at(5.0).x == doctest::Approx(4.0));
  CHECK(m.velocity_at(1.5).x == doctest::Approx(4.0));
  CHECK(m.velocity_at(0.5).x == doctest::Approx(0.0));
}

TEST_CASE("region validation catches broken invariants") {
  CHECK_THROWS_AS(validate_region(Disk{{0.0, 0.0}, -1.0}, "r"), ValidationError);
  CHECK_THROWS_AS(validate_region(Ellipse{{0.0, 0.0}, 0.0, 1.0}, "r"),
                  ValidationError);
  // clockwise square
  CHECK_THROWS_AS(
      validate_region(Polygon{{{0.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {1.0, 0.0}}},
                      "r"),
      ValidationError);
  // bow-tie
  CHECK_THROWS_AS(
      validate_region(Polygon{{{0.0, 0.0}, {1.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}}},
                      "r"),
      ValidationError);
  CHECK_NOTHROW(validate_region(
      Polygon{{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}}, "r"));
}

TEST_CASE("centroid and bounding radius") {
  CHECK(region_centroid(Disk{{2.0, 3.0}, 1.0}).x == doctest::Approx(2.0));
  const Region square =
      Polygon{{{0.0, 0.0}, {2.0, 0.0}, {2.0, 2.0}, {0.0, 2.0}}};
  CHECK(region_centroid(square).x == doctest::Approx(1.0));
  CHECK(region_centroid(square).y == doctest::Approx(1.0));
  CHECK(bounding_radius(square) == doctest::Approx(std::sqrt(2.0)));
  CHECK(bounding_radius(Ellipse{{0.0, 0.0}, 2.0, 1.0}) == doctest::Approx(2.0));
}
