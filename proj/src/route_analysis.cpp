#include "orientsel/route_analysis.hpp"

#include <algorithm>

namespace orientsel {

namespace {

// Bearing of the geometry segment arriving at joint index j, stepping back
// over zero-length segments.
double bearing_into(const std::vector<Vec2>& pts, std::size_t j) {
  std::size_t k = j;
  while (k > 0 && distance(pts[k - 1], pts[j]) <= 0.0) --k;
  if (k == 0) return 0.0;
  return bearing_deg(pts[k - 1], pts[j]);
}

double bearing_out_of(const std::vector<Vec2>& pts, std::size_t j) {
  std::size_t k = j;
  while (k + 1 < pts.size() && distance(pts[j], pts[k + 1]) <= 0.0) ++k;
  if (k + 1 >= pts.size()) return 0.0;
  return bearing_deg(pts[j], pts[k + 1]);
}

}  // namespace

std::vector<Vec2> reference_segment(const Route& route, double arc, double ref_len_m) {
  return slice_by_arc(route.geometry, route.geom_cum, arc - ref_len_m, arc + ref_len_m);
}

std::vector<DecisionPoint> classify_decision_points(const StreetGraph& g, const Route& route,
                                                    const RouteAnalysisParams& params) {
  std::vector<DecisionPoint> out;
  const std::size_t n = route.vertex_ids.size();
  if (n == 0) return out;

  for (std::size_t i = 0; i < n; ++i) {
    const int v = route.vertex_ids[i];
    const std::size_t j = route.vertex_geom_index[i];
    const bool is_start = i == 0;
    const bool is_end = i + 1 == n;

    DecisionPoint dp;
    dp.vertex = v;
    dp.route_index = static_cast<int>(i);
    dp.route_arc = route.vertex_arc(i);
    dp.route_dist = route.vertex_dist[i];

    if (route.geometry.size() >= 2) {
      dp.approach_bearing = is_start ? bearing_out_of(route.geometry, j)
                                     : bearing_into(route.geometry, j);
      dp.exit_bearing = is_end ? bearing_into(route.geometry, j)
                               : bearing_out_of(route.geometry, j);
    }
    dp.deflection = (is_start || is_end) ? 0.0
                                         : angle_diff_deg(dp.approach_bearing, dp.exit_bearing);

    int dp_class = -1;
    if (is_start || is_end) {
      dp_class = 0;
    } else {
      const auto& incident = g.vertices[v].incident;
      const int degree = g.degree(v);

      bool has_highway_edge = false;
      bool differing_types = false;
      bool touches_roundabout = false;
      for (const int eid : incident) {
        if (g.edges[eid].type == kTypeHighway) has_highway_edge = true;
        if (g.edges[eid].type != g.edges[incident.front()].type) differing_types = true;
        if (g.edges[eid].roundabout) touches_roundabout = true;
      }

      const int in_edge = route.edge_ids[i - 1];
      const int out_edge = route.edge_ids[i];
      const int route_weight =
          std::max(g.hierarchy_weight(in_edge), g.hierarchy_weight(out_edge));
      bool crossing_ge = false;
      for (const int eid : incident) {
        if (route.is_route_edge(eid)) continue;
        if (g.hierarchy_weight(eid) >= route_weight) crossing_ge = true;
      }

      const bool turns = dp.deflection > params.turn_threshold_deg;
      if (has_highway_edge && (differing_types || degree > 2)) dp_class = 6;
      else if (touches_roundabout) dp_class = 5;
      else if (degree == 2 && turns) dp_class = 2;
      else if (degree == 3 && turns) dp_class = 3;
      else if (degree >= 4 && turns) dp_class = 4;
      else if (!turns && crossing_ge) dp_class = 1;
    }
    if (dp_class < 0) continue;

    dp.dp_class = dp_class;
    dp.ref_arc_start = std::max(0.0, dp.route_arc - params.ref_len_m);
    dp.ref_arc_end = std::min(route.geom_length(), dp.route_arc + params.ref_len_m);
    dp.reference_segment = reference_segment(route, dp.route_arc, params.ref_len_m);
    out.push_back(std::move(dp));
  }
  return out;
}

std::vector<HierarchyProfileEntry> hierarchy_profile(const StreetGraph& g, const Route& route) {
  std::vector<HierarchyProfileEntry> out;
  out.reserve(route.edge_ids.size());
  for (std::size_t i = 0; i < route.edge_ids.size(); ++i) {
    const int eid = route.edge_ids[i];
    out.push_back({eid, g.edges[eid].type, route.vertex_dist[i + 1]});
  }
  return out;
}

}  // namespace orientsel
