#pragma once

#include "orientsel/route.hpp"

namespace orientsel {

// Route vertex classes:
//   0 start or destination
//   1 straight on across a same-or-higher-class street
//   2 turn not at a junction
//   3 turn at a t-junction
//   4 turn at a junction
//   5 roundabout
//   6 highway ramp or exit
struct DecisionPoint {
  int vertex = -1;       // vertex index in the graph
  int route_index = 0;   // position in route.vertex_ids
  int dp_class = 0;
  double approach_bearing = 0.0;
  double exit_bearing = 0.0;
  double deflection = 0.0;  // [0,180]
  double route_arc = 0.0;   // arc position on the route geometry
  double route_dist = 0.0;  // cumulative edge-length distance
  double ref_arc_start = 0.0;
  double ref_arc_end = 0.0;
  std::vector<Vec2> reference_segment;
};

struct RouteAnalysisParams {
  double turn_threshold_deg = 30.0;
  double ref_len_m = 50.0;
};

// Classifies every route vertex by the first matching rule in the order
// 0, 6, 5, 2/3/4, 1; vertices matching none are not decision points.
std::vector<DecisionPoint> classify_decision_points(const StreetGraph& g, const Route& route,
                                                    const RouteAnalysisParams& params = {});

// Route slice within ref_len_m of the arc position, clipped at the ends.
std::vector<Vec2> reference_segment(const Route& route, double arc, double ref_len_m);

struct HierarchyProfileEntry {
  int edge_id = 0;
  int type_value = 0;
  double cum_dist = 0.0;  // distance covered at the end of this edge
};

std::vector<HierarchyProfileEntry> hierarchy_profile(const StreetGraph& g, const Route& route);

}  // namespace orientsel
