#include <random>

#include "doctest.h"
#include "orientsel/geometry.hpp"

using namespace orientsel;

namespace {
constexpr double kMeterPerDegree = kPi * kEarthRadiusM / 180.0;
}

TEST_CASE("projection distances from the center are exact arc lengths") {
  const Projection proj(GeoPoint{0.0, 0.0});
  const Vec2 east = proj.to_local({1.0, 0.0});
  CHECK(norm(east) == doctest::Approx(kMeterPerDegree).epsilon(1e-12));
  CHECK(east.x == doctest::Approx(kMeterPerDegree).epsilon(1e-12));
  CHECK(east.y == doctest::Approx(0.0).scale(1.0));

  const Vec2 north = proj.to_local({0.0, 1.0});
  CHECK(north.y == doctest::Approx(kMeterPerDegree).epsilon(1e-12));
  CHECK(north.x == doctest::Approx(0.0).scale(1.0));

  CHECK(norm(proj.to_local(proj.center())) == 0.0);
}

TEST_CASE("projection round-trips points in the working envelope") {
  const Projection proj(GeoPoint{7.6, 51.96});
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dlon(-0.3, 0.3);
  std::uniform_real_distribution<double> dlat(-0.2, 0.2);
  for (int i = 0; i < 200; ++i) {
    const GeoPoint p{7.6 + dlon(rng), 51.96 + dlat(rng)};
    const GeoPoint back = proj.to_geo(proj.to_local(p));
    CHECK(back.lon == doctest::Approx(p.lon).epsilon(1e-10));
    CHECK(back.lat == doctest::Approx(p.lat).epsilon(1e-10));
  }
}

TEST_CASE("bearings run clockwise from north") {
  CHECK(bearing_deg({0, 0}, {0, 1}) == doctest::Approx(0.0));
  CHECK(bearing_deg({0, 0}, {1, 0}) == doctest::Approx(90.0));
  CHECK(bearing_deg({0, 0}, {0, -1}) == doctest::Approx(180.0));
  CHECK(bearing_deg({0, 0}, {-1, 0}) == doctest::Approx(270.0));
  CHECK(bearing_deg({0, 0}, {-1, -1}) == doctest::Approx(225.0));
}

TEST_CASE("angle differences wrap and stay within [0,180]") {
  CHECK(angle_diff_deg(350.0, 10.0) == doctest::Approx(20.0));
  CHECK(angle_diff_deg(10.0, 350.0) == doctest::Approx(20.0));
  CHECK(angle_diff_deg(0.0, 180.0) == doctest::Approx(180.0));
  CHECK(angle_diff_deg(90.0, 90.0) == doctest::Approx(0.0));
  CHECK(angle_diff_deg(0.0, 270.0) == doctest::Approx(90.0));
}

TEST_CASE("polyline arc utilities") {
  const std::vector<Vec2> pts{{0, 0}, {10, 0}, {10, 5}};
  const auto cum = cumulative_lengths(pts);
  REQUIRE(cum.size() == 3);
  CHECK(cum[0] == 0.0);
  CHECK(cum[1] == doctest::Approx(10.0));
  CHECK(cum[2] == doctest::Approx(15.0));
  CHECK(polyline_length(pts) == doctest::Approx(15.0));

  SUBCASE("point_at_arc interpolates and clamps") {
    const Vec2 mid = point_at_arc(pts, cum, 5.0);
    CHECK(mid.x == doctest::Approx(5.0));
    CHECK(mid.y == doctest::Approx(0.0));
    const Vec2 past = point_at_arc(pts, cum, 99.0);
    CHECK(past.x == doctest::Approx(10.0));
    CHECK(past.y == doctest::Approx(5.0));
    const Vec2 before = point_at_arc(pts, cum, -1.0);
    CHECK(before.x == doctest::Approx(0.0));
  }

  SUBCASE("bearing_at_arc uses the segment under the position") {
    CHECK(bearing_at_arc(pts, cum, 3.0) == doctest::Approx(90.0));
    CHECK(bearing_at_arc(pts, cum, 12.0) == doctest::Approx(0.0));
    // at the joint the following segment wins
    CHECK(bearing_at_arc(pts, cum, 10.0) == doctest::Approx(0.0));
    // at the very end the last segment applies
    CHECK(bearing_at_arc(pts, cum, 15.0) == doctest::Approx(0.0));
  }

  SUBCASE("slice_by_arc cuts between positions") {
    const auto sliced = slice_by_arc(pts, cum, 5.0, 12.0);
    REQUIRE(sliced.size() == 3);
    CHECK(sliced.front().x == doctest::Approx(5.0));
    CHECK(sliced.back().y == doctest::Approx(2.0));
    const auto whole = slice_by_arc(pts, cum, -5.0, 99.0);
    CHECK(whole.size() == 3);
    const auto degenerate = slice_by_arc(pts, cum, 4.0, 4.0);
    REQUIRE(degenerate.size() == 2);
    CHECK(distance(degenerate[0], degenerate[1]) == 0.0);
  }
}

TEST_CASE("closest point on segment") {
  const Vec2 a{0, 0}, b{10, 0};
  SUBCASE("projection inside") {
    const auto r = closest_point_on_segment({3, 4}, a, b);
    CHECK(r.t == doctest::Approx(0.3));
    CHECK(r.point.x == doctest::Approx(3.0));
    CHECK(dist_point_segment({3, 4}, a, b) == doctest::Approx(4.0));
  }
  SUBCASE("clamped to endpoints") {
    CHECK(closest_point_on_segment({-5, 0}, a, b).t == 0.0);
    CHECK(closest_point_on_segment({15, 1}, a, b).t == 1.0);
    CHECK(dist_point_segment({13, 4}, a, b) == doctest::Approx(5.0));
  }
  SUBCASE("degenerate segment") {
    CHECK(dist_point_segment({3, 4}, a, a) == doctest::Approx(5.0));
  }
}

TEST_CASE("closest approach between segments") {
  SUBCASE("crossing segments touch") {
    const auto r = closest_between_segments({0, -5}, {0, 5}, {-5, 0}, {5, 0});
    CHECK(r.dist == doctest::Approx(0.0));
    CHECK(r.t_first == doctest::Approx(0.5));
  }
  SUBCASE("parallel segments") {
    const auto r = closest_between_segments({0, 0}, {10, 0}, {0, 3}, {10, 3});
    CHECK(r.dist == doctest::Approx(3.0));
  }
  SUBCASE("disjoint diagonal") {
    const auto r = closest_between_segments({0, 0}, {1, 0}, {3, 4}, {3, 10});
    CHECK(r.dist == doctest::Approx(std::hypot(2.0, 4.0)));
  }
}

TEST_CASE("nearest point respects the polygon boundary rule") {
  const PlanarGeometry ring = PlanarGeometry::polygon({{0, 0}, {10, 0}, {10, 10}, {0, 10}, {0, 0}});
  // a point inside the ring is measured to the boundary, not to zero
  CHECK(dist_point_geometry({5, 5}, ring) == doctest::Approx(5.0));
  CHECK(dist_point_geometry({5, 9}, ring) == doctest::Approx(1.0));
  CHECK(dist_point_geometry({5, -3}, ring) == doctest::Approx(3.0));

  const PlanarGeometry pt = PlanarGeometry::point({2, 2});
  CHECK(dist_point_geometry({2, 6}, pt) == doctest::Approx(4.0));
}

TEST_CASE("nearest_on_polyline resolves ties to the smaller arc") {
  // symmetric V around x=10; the query sits equally far from both arms
  const std::vector<Vec2> pts{{0, 10}, {10, 0}, {20, 10}};
  const auto cum = cumulative_lengths(pts);
  const auto r = nearest_on_polyline(pts, cum, PlanarGeometry::point({10, 10}));
  const auto direct = nearest_on_polyline(pts, cum, PlanarGeometry::point({0, 12}));
  CHECK(direct.arc == doctest::Approx(0.0));
  CHECK(direct.dist == doctest::Approx(2.0));
  // both arms are at the same distance; the first arm must win
  CHECK(r.arc < cum[1]);
}

TEST_CASE("ring areas and orientation") {
  const std::vector<Vec2> ccw{{0, 0}, {4, 0}, {4, 3}, {0, 3}, {0, 0}};
  CHECK(signed_ring_area(ccw) == doctest::Approx(12.0));
  const std::vector<Vec2> cw{{0, 0}, {0, 3}, {4, 3}, {4, 0}, {0, 0}};
  CHECK(signed_ring_area(cw) == doctest::Approx(-12.0));
  CHECK(ring_area(cw) == doctest::Approx(12.0));
}

TEST_CASE("ring clipping against a rectangle") {
  const std::vector<Vec2> ring{{0, 0}, {10, 0}, {10, 10}, {0, 10}, {0, 0}};
  SUBCASE("fully inside stays put") {
    const Rect r{-5, -5, 15, 15};
    const auto clipped = clip_ring_to_rect(ring, r);
    CHECK(ring_area(clipped) == doctest::Approx(100.0));
  }
  SUBCASE("half overlap halves the area") {
    const Rect r{5, -5, 25, 15};
    const auto clipped = clip_ring_to_rect(ring, r);
    CHECK(ring_area(clipped) == doctest::Approx(50.0));
    REQUIRE(!clipped.empty());
    CHECK(clipped.front().x == clipped.back().x);
    CHECK(clipped.front().y == clipped.back().y);
  }
  SUBCASE("no overlap clips to nothing") {
    const Rect r{20, 20, 30, 30};
    CHECK(clip_ring_to_rect(ring, r).empty());
  }
  SUBCASE("rect inside the ring clips to the rect") {
    const Rect r{2, 2, 6, 5};
    CHECK(ring_area(clip_ring_to_rect(ring, r)) == doctest::Approx(12.0));
  }
}

TEST_CASE("rect helpers") {
  const Rect r = Rect::centered({10, 20}, 4, 6);
  CHECK(r.min_x == doctest::Approx(8.0));
  CHECK(r.max_y == doctest::Approx(23.0));
  CHECK(r.area() == doctest::Approx(24.0));
  CHECK(r.contains({10, 20}));
  CHECK(r.contains({8, 17}));  // boundary inclusive
  CHECK(!r.contains({12.1, 20}));
}
