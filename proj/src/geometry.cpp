#include "orientsel/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace orientsel {

Projection::Projection(GeoPoint center)
    : center_(center), sin_lat0_(std::sin(deg2rad(center.lat))), cos_lat0_(std::cos(deg2rad(center.lat))) {}

Vec2 Projection::to_local(GeoPoint p) const {
  const double lat = deg2rad(p.lat);
  const double dlon = deg2rad(p.lon - center_.lon);
  const double sin_lat = std::sin(lat);
  const double cos_lat = std::cos(lat);

  // Haversine form of the angular distance, stable for small separations.
  const double sd_lat = std::sin((lat - deg2rad(center_.lat)) / 2);
  const double sd_lon = std::sin(dlon / 2);
  const double h = sd_lat * sd_lat + cos_lat0_ * cos_lat * sd_lon * sd_lon;
  const double c = 2 * std::asin(std::min(1.0, std::sqrt(h)));
  if (c < 1e-15) return {0.0, 0.0};

  const double k = kEarthRadiusM * c / std::sin(c);
  return {k * cos_lat * std::sin(dlon), k * (cos_lat0_ * sin_lat - sin_lat0_ * cos_lat * std::cos(dlon))};
}

GeoPoint Projection::to_geo(Vec2 v) const {
  const double rho = std::hypot(v.x, v.y);
  if (rho < 1e-12) return center_;
  const double c = rho / kEarthRadiusM;
  const double sin_c = std::sin(c);
  const double cos_c = std::cos(c);
  const double lat = std::asin(cos_c * sin_lat0_ + v.y * sin_c * cos_lat0_ / rho);
  const double lon = deg2rad(center_.lon) +
                     std::atan2(v.x * sin_c, rho * cos_c * cos_lat0_ - v.y * sin_c * sin_lat0_);
  return {rad2deg(lon), rad2deg(lat)};
}

std::vector<Vec2> Projection::to_local(std::span<const GeoPoint> pts) const {
  std::vector<Vec2> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(to_local(p));
  return out;
}

std::vector<GeoPoint> Projection::to_geo(std::span<const Vec2> pts) const {
  std::vector<GeoPoint> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(to_geo(p));
  return out;
}

PlanarGeometry project(const Projection& proj, const GeoGeometry& g) {
  return {g.kind, proj.to_local(std::span<const GeoPoint>(g.pts))};
}

GeoGeometry unproject(const Projection& proj, const PlanarGeometry& g) {
  return {g.kind, proj.to_geo(std::span<const Vec2>(g.pts))};
}

double bearing_deg(Vec2 a, Vec2 b) {
  const double deg = rad2deg(std::atan2(b.x - a.x, b.y - a.y));
  return deg < 0 ? deg + 360.0 : deg;
}

double angle_diff_deg(double a, double b) {
  double d = std::fmod(std::fabs(a - b), 360.0);
  return d > 180.0 ? 360.0 - d : d;
}

double polyline_length(std::span<const Vec2> pts) {
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) total += distance(pts[i - 1], pts[i]);
  return total;
}

std::vector<double> cumulative_lengths(std::span<const Vec2> pts) {
  std::vector<double> cum(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i) cum[i] = cum[i - 1] + distance(pts[i - 1], pts[i]);
  return cum;
}

namespace {

// Index of the segment containing arc position s, preferring the segment
// that starts at s. Returns npos-like value only for degenerate input.
std::size_t segment_at_arc(std::span<const double> cum, double s) {
  if (cum.size() < 2) return 0;
  // First i with cum[i+1] > s; falls back to the last segment.
  for (std::size_t i = 0; i + 1 < cum.size(); ++i) {
    if (cum[i + 1] > s) return i;
  }
  return cum.size() - 2;
}

}  // namespace

Vec2 point_at_arc(std::span<const Vec2> pts, std::span<const double> cum, double s) {
  if (pts.empty()) return {};
  if (pts.size() == 1) return pts[0];
  s = std::clamp(s, 0.0, cum.back());
  const std::size_t i = segment_at_arc(cum, s);
  const double seg_len = cum[i + 1] - cum[i];
  if (seg_len <= 0) return pts[i];
  const double t = (s - cum[i]) / seg_len;
  return pts[i] + t * (pts[i + 1] - pts[i]);
}

double bearing_at_arc(std::span<const Vec2> pts, std::span<const double> cum, double s) {
  if (pts.size() < 2) return 0.0;
  s = std::clamp(s, 0.0, cum.back());
  std::size_t i = segment_at_arc(cum, s);
  // Skip zero-length segments.
  while (i + 2 < pts.size() && cum[i + 1] - cum[i] <= 0) ++i;
  return bearing_deg(pts[i], pts[i + 1]);
}

std::vector<Vec2> slice_by_arc(std::span<const Vec2> pts, std::span<const double> cum,
                               double s0, double s1) {
  std::vector<Vec2> out;
  if (pts.empty()) return out;
  if (pts.size() == 1) return {pts[0]};
  s0 = std::clamp(s0, 0.0, cum.back());
  s1 = std::clamp(s1, 0.0, cum.back());
  if (s1 < s0) std::swap(s0, s1);

  const auto push = [&out](Vec2 p) {
    if (out.empty() || distance(out.back(), p) > 1e-9) out.push_back(p);
  };
  push(point_at_arc(pts, cum, s0));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (cum[i] > s0 && cum[i] < s1) push(pts[i]);
  }
  push(point_at_arc(pts, cum, s1));
  if (out.size() == 1) out.push_back(out[0]);  // degenerate slice, keep 2 points
  return out;
}

PointOnSegment closest_point_on_segment(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 <= 0) return {0.0, a};
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return {t, a + t * ab};
}

double dist_point_segment(Vec2 p, Vec2 a, Vec2 b) {
  return distance(p, closest_point_on_segment(p, a, b).point);
}

namespace {

int orientation_sign(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  if (v > 0) return 1;
  if (v < 0) return -1;
  return 0;
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const int o1 = orientation_sign(a, b, c);
  const int o2 = orientation_sign(a, b, d);
  const int o3 = orientation_sign(c, d, a);
  const int o4 = orientation_sign(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  return false;  // collinear touching handled by the endpoint candidates
}

}  // namespace

SegmentPair closest_between_segments(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  if (segments_intersect(a, b, c, d)) {
    // Proper crossing: intersection parameter on ab.
    const double denom = cross(b - a, d - c);
    double t = 0.0;
    if (denom != 0.0) t = std::clamp(cross(c - a, d - c) / denom, 0.0, 1.0);
    return {0.0, t, a + t * (b - a)};
  }

  SegmentPair best;
  bool first = true;
  const auto consider = [&](double dist_v, double t, Vec2 on_ab) {
    if (first || dist_v < best.dist) {
      best = {dist_v, t, on_ab};
      first = false;
    }
  };
  const auto pc = closest_point_on_segment(c, a, b);
  consider(distance(c, pc.point), pc.t, pc.point);
  const auto pd = closest_point_on_segment(d, a, b);
  consider(distance(d, pd.point), pd.t, pd.point);
  const auto qa = closest_point_on_segment(a, c, d);
  consider(distance(a, qa.point), 0.0, a);
  const auto qb = closest_point_on_segment(b, c, d);
  consider(distance(b, qb.point), 1.0, b);
  return best;
}

std::span<const Vec2> boundary_points(const PlanarGeometry& g) {
  return {g.pts.data(), g.pts.size()};
}

NearestPoint nearest_point_on_geometry(Vec2 p, const PlanarGeometry& g) {
  const auto pts = boundary_points(g);
  if (pts.empty()) return {0.0, p};
  if (pts.size() == 1 || g.kind == GeomKind::Point) return {distance(p, pts[0]), pts[0]};

  NearestPoint best{distance(p, pts[0]), pts[0]};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const auto cp = closest_point_on_segment(p, pts[i - 1], pts[i]);
    const double d = distance(p, cp.point);
    if (d < best.dist) best = {d, cp.point};
  }
  return best;
}

double dist_point_geometry(Vec2 p, const PlanarGeometry& g) {
  return nearest_point_on_geometry(p, g).dist;
}

NearestOnPolyline nearest_on_polyline(std::span<const Vec2> pts, std::span<const double> cum,
                                      const PlanarGeometry& g) {
  NearestOnPolyline best;
  if (pts.empty() || g.pts.empty()) return best;
  if (pts.size() == 1) {
    best.dist = dist_point_geometry(pts[0], g);
    best.arc = 0.0;
    best.point = pts[0];
    return best;
  }

  const auto geom = boundary_points(g);
  bool first = true;
  const auto consider = [&](double d, double arc, Vec2 on_line) {
    if (first || d < best.dist - 1e-12 || (std::fabs(d - best.dist) <= 1e-12 && arc < best.arc)) {
      best = {d, arc, on_line};
      first = false;
    }
  };

  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Vec2 a = pts[i - 1];
    const Vec2 b = pts[i];
    const double seg_len = cum[i] - cum[i - 1];
    if (geom.size() == 1 || g.kind == GeomKind::Point) {
      const auto cp = closest_point_on_segment(geom[0], a, b);
      consider(distance(geom[0], cp.point), cum[i - 1] + cp.t * seg_len, cp.point);
    } else {
      for (std::size_t j = 1; j < geom.size(); ++j) {
        const auto sp = closest_between_segments(a, b, geom[j - 1], geom[j]);
        consider(sp.dist, cum[i - 1] + sp.t_first * seg_len, sp.on_first);
      }
    }
  }
  return best;
}

double dist_polyline_geometry(std::span<const Vec2> pts, const PlanarGeometry& g) {
  if (pts.empty() || g.pts.empty()) return 0.0;
  if (pts.size() == 1) return dist_point_geometry(pts[0], g);
  const auto geom = boundary_points(g);
  double best = std::numeric_limits<double>::max();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (geom.size() == 1 || g.kind == GeomKind::Point) {
      best = std::min(best, dist_point_segment(geom[0], pts[i - 1], pts[i]));
    } else {
      for (std::size_t j = 1; j < geom.size(); ++j) {
        best = std::min(best,
                        closest_between_segments(pts[i - 1], pts[i], geom[j - 1], geom[j]).dist);
      }
    }
  }
  return best;
}

double signed_ring_area(std::span<const Vec2> ring) {
  double acc = 0.0;
  for (std::size_t i = 1; i < ring.size(); ++i) {
    acc += cross(ring[i - 1], ring[i]);
  }
  return acc / 2.0;
}

double ring_area(std::span<const Vec2> ring) { return std::fabs(signed_ring_area(ring)); }

std::vector<Vec2> clip_ring_to_rect(std::span<const Vec2> ring, const Rect& rect) {
  if (ring.size() < 4) return {};
  std::vector<Vec2> poly(ring.begin(), ring.end() - 1);  // open form

  // inside(p) per rectangle side, clip sequentially.
  struct Side {
    int axis;      // 0 = x, 1 = y
    double bound;
    bool keep_ge;  // keep points with coord >= bound (else <=)
  };
  const Side sides[4] = {{0, rect.min_x, true}, {0, rect.max_x, false},
                         {1, rect.min_y, true}, {1, rect.max_y, false}};

  for (const auto& side : sides) {
    if (poly.empty()) break;
    const auto coord = [&](Vec2 p) { return side.axis == 0 ? p.x : p.y; };
    const auto inside = [&](Vec2 p) {
      return side.keep_ge ? coord(p) >= side.bound : coord(p) <= side.bound;
    };
    const auto intersect = [&](Vec2 p, Vec2 q) {
      const double t = (side.bound - coord(p)) / (coord(q) - coord(p));
      return p + t * (q - p);
    };
    std::vector<Vec2> out;
    out.reserve(poly.size() + 4);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Vec2 cur = poly[i];
      const Vec2 prev = poly[(i + poly.size() - 1) % poly.size()];
      const bool cur_in = inside(cur);
      const bool prev_in = inside(prev);
      if (cur_in) {
        if (!prev_in) out.push_back(intersect(prev, cur));
        out.push_back(cur);
      } else if (prev_in) {
        out.push_back(intersect(prev, cur));
      }
    }
    poly = std::move(out);
  }

  if (poly.size() < 3) return {};
  poly.push_back(poly.front());
  return poly;
}

}  // namespace orientsel
