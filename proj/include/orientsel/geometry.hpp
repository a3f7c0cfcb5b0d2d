#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace orientsel {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEarthRadiusM = 6371008.8;  // IUGG mean radius

inline double deg2rad(double d) { return d * (kPi / 180.0); }
inline double rad2deg(double r) { return r * (180.0 / kPi); }

// Geographic coordinate, WGS84 degrees.
struct GeoPoint {
  double lon = 0.0;
  double lat = 0.0;
};

// Planar coordinate in meters, in the frame of a local projection.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

// Azimuthal equidistant projection on a sphere, centered at `center`.
// Distances from the center are exact; the distortion between off-center
// points stays below ~1e-5 relative for extents of a few tens of km, which
// is the working envelope of this library.
class Projection {
 public:
  Projection() = default;
  explicit Projection(GeoPoint center);

  Vec2 to_local(GeoPoint p) const;
  GeoPoint to_geo(Vec2 v) const;

  std::vector<Vec2> to_local(std::span<const GeoPoint> pts) const;
  std::vector<GeoPoint> to_geo(std::span<const Vec2> pts) const;

  GeoPoint center() const { return center_; }

 private:
  GeoPoint center_{};
  double sin_lat0_ = 0.0;
  double cos_lat0_ = 1.0;
};

// Axis-aligned rectangle in planar meters.
struct Rect {
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  double area() const { return width() * height(); }
  bool contains(Vec2 p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }
  static Rect centered(Vec2 c, double width, double height) {
    return {c.x - width / 2, c.y - height / 2, c.x + width / 2, c.y + height / 2};
  }
};

enum class GeomKind { Point, LineString, Polygon };

// Geometry as a flat point list. Polygons are a single closed outer ring
// (first point equals last); holes are not represented.
template <typename P>
struct BasicGeometry {
  GeomKind kind = GeomKind::Point;
  std::vector<P> pts;

  static BasicGeometry point(P p) { return {GeomKind::Point, {p}}; }
  static BasicGeometry line(std::vector<P> pts) { return {GeomKind::LineString, std::move(pts)}; }
  static BasicGeometry polygon(std::vector<P> ring) { return {GeomKind::Polygon, std::move(ring)}; }
};

using GeoGeometry = BasicGeometry<GeoPoint>;
using PlanarGeometry = BasicGeometry<Vec2>;

PlanarGeometry project(const Projection& proj, const GeoGeometry& g);
GeoGeometry unproject(const Projection& proj, const PlanarGeometry& g);

// ---- bearings ----------------------------------------------------------

// Bearing of the direction a->b, degrees clockwise from north (+y), [0,360).
double bearing_deg(Vec2 a, Vec2 b);

// Absolute angular difference between two bearings, in [0,180].
double angle_diff_deg(double a, double b);

// ---- polyline utilities ------------------------------------------------

double polyline_length(std::span<const Vec2> pts);

// Cumulative arc length per point; cum[0] = 0, cum.back() = total length.
std::vector<double> cumulative_lengths(std::span<const Vec2> pts);

// Point at arc position s (clamped to [0, total]).
Vec2 point_at_arc(std::span<const Vec2> pts, std::span<const double> cum, double s);

// Bearing of the segment containing arc position s. At interior joints the
// following segment wins; at the end the last segment.
double bearing_at_arc(std::span<const Vec2> pts, std::span<const double> cum, double s);

// Sub-polyline between arc positions s0 <= s1 (both clamped). Always
// returns at least two points unless the slice is a single position.
std::vector<Vec2> slice_by_arc(std::span<const Vec2> pts, std::span<const double> cum,
                               double s0, double s1);

// ---- distances ---------------------------------------------------------

struct PointOnSegment {
  double t = 0.0;  // parameter in [0,1] along the segment
  Vec2 point{};
};

PointOnSegment closest_point_on_segment(Vec2 p, Vec2 a, Vec2 b);
double dist_point_segment(Vec2 p, Vec2 a, Vec2 b);

struct SegmentPair {
  double dist = 0.0;
  double t_first = 0.0;  // parameter on the first segment at the closest pair
  Vec2 on_first{};
};

// Closest approach between segments ab and cd.
SegmentPair closest_between_segments(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

// The boundary polyline distance computations operate on: a point's single
// point, a linestring's points, or a polygon's closed ring (perimeter).
std::span<const Vec2> boundary_points(const PlanarGeometry& g);

struct NearestPoint {
  double dist = 0.0;
  Vec2 point{};  // point on the geometry boundary closest to the query
};

NearestPoint nearest_point_on_geometry(Vec2 p, const PlanarGeometry& g);
double dist_point_geometry(Vec2 p, const PlanarGeometry& g);

struct NearestOnPolyline {
  double dist = 0.0;
  double arc = 0.0;   // arc position on the polyline at the closest approach
  Vec2 point{};       // point on the polyline
};

// Closest approach between a polyline and a geometry (boundary rule for
// polygons). Ties resolve to the smallest arc position.
NearestOnPolyline nearest_on_polyline(std::span<const Vec2> pts, std::span<const double> cum,
                                      const PlanarGeometry& g);

// Minimum distance between a polyline and a geometry's boundary.
double dist_polyline_geometry(std::span<const Vec2> pts, const PlanarGeometry& g);

// ---- polygons ----------------------------------------------------------

// Signed area of a closed ring (positive = counterclockwise).
double signed_ring_area(std::span<const Vec2> ring);
double ring_area(std::span<const Vec2> ring);

// Clip a closed ring against an axis-aligned rectangle (Sutherland-Hodgman).
// Returns a closed ring, or an empty vector when there is no overlap.
std::vector<Vec2> clip_ring_to_rect(std::span<const Vec2> ring, const Rect& rect);

}  // namespace orientsel
