#pragma once

#include <vector>

#include "orientsel/graph.hpp"

namespace orientsel {

// Directed path through the street graph. Geometry is the concatenation of
// the traversed edge linestrings; vertex_dist accumulates edge lengths so
// the route length is exactly the sum of its edges.
struct Route {
  std::vector<int> edge_ids;
  std::vector<int> vertex_ids;  // size = edge count + 1
  std::vector<Vec2> geometry;
  std::vector<GeoPoint> geometry_wgs;
  std::vector<double> geom_cum;              // arc length at each geometry point
  std::vector<std::size_t> vertex_geom_index;  // geometry index of each route vertex
  std::vector<double> vertex_dist;           // meters from start at each route vertex
  std::vector<char> edge_on_route;           // indexed by edge id

  double length() const { return vertex_dist.empty() ? 0.0 : vertex_dist.back(); }
  double geom_length() const { return geom_cum.empty() ? 0.0 : geom_cum.back(); }
  bool is_route_edge(int edge_id) const {
    return edge_id >= 0 && edge_id < static_cast<int>(edge_on_route.size()) &&
           edge_on_route[edge_id] != 0;
  }

  // Arc position of the i-th route vertex on the concatenated geometry.
  double vertex_arc(std::size_t i) const { return geom_cum[vertex_geom_index[i]]; }

  Vec2 point_at(double arc) const;
  double bearing_at(double arc) const;
  NearestOnPolyline locate_nearest(const PlanarGeometry& g) const;
};

// Per-edge traversal cost for routing; defaults to edge length.
using EdgeCostFn = std::function<double(const StreetGraph&, int)>;

// Dijkstra over the undirected graph with non-negative costs. Throws
// NoRouteError when t is unreachable from s.
Route shortest_route(const StreetGraph& g, int s, int t, const EdgeCostFn& cost = {});

// Assembles a Route from an explicit edge sequence starting at vertex s.
Route route_from_edges(const StreetGraph& g, int s, const std::vector<int>& edge_ids);

// Matches an externally supplied route linestring onto the graph: points
// snap to vertices within tolerance_m, consecutive snapped vertices connect
// by their direct edge or, failing that, the shortest path between them.
Route snap_route_linestring(const StreetGraph& g, const std::vector<Vec2>& line,
                            double tolerance_m = 10.0);

}  // namespace orientsel
