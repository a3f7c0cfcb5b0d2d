#include "orientsel/route.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "orientsel/errors.hpp"

namespace orientsel {

Vec2 Route::point_at(double arc) const {
  return orientsel::point_at_arc(geometry, geom_cum, arc);
}

double Route::bearing_at(double arc) const {
  return orientsel::bearing_at_arc(geometry, geom_cum, arc);
}

NearestOnPolyline Route::locate_nearest(const PlanarGeometry& g) const {
  return nearest_on_polyline(geometry, geom_cum, g);
}

Route route_from_edges(const StreetGraph& g, int s, const std::vector<int>& edge_ids) {
  Route r;
  r.edge_on_route.assign(g.edges.size(), 0);
  r.vertex_ids.push_back(s);
  r.geometry.push_back(g.vertices[s].pos);
  r.geometry_wgs.push_back(g.vertices[s].wgs);
  r.geom_cum.push_back(0.0);
  r.vertex_geom_index.push_back(0);
  r.vertex_dist.push_back(0.0);

  int at = s;
  for (const int eid : edge_ids) {
    const GraphEdge& e = g.edges[eid];
    if (e.a != at && e.b != at)
      throw DataError("route edge " + std::to_string(eid) + " does not continue the path");
    const bool forward = e.a == at;
    const int next = forward ? e.b : e.a;

    const auto& pts = e.geometry;
    const auto& pts_wgs = e.geometry_wgs;
    const std::size_t n = pts.size();
    for (std::size_t k = 1; k < n; ++k) {
      const std::size_t idx = forward ? k : n - 1 - k;
      const Vec2 p = pts[idx];
      r.geom_cum.push_back(r.geom_cum.back() + distance(r.geometry.back(), p));
      r.geometry.push_back(p);
      r.geometry_wgs.push_back(pts_wgs[idx]);
    }

    r.edge_ids.push_back(eid);
    r.edge_on_route[eid] = 1;
    r.vertex_ids.push_back(next);
    r.vertex_geom_index.push_back(r.geometry.size() - 1);
    r.vertex_dist.push_back(r.vertex_dist.back() + e.length);
    at = next;
  }
  return r;
}

Route shortest_route(const StreetGraph& g, int s, int t, const EdgeCostFn& cost) {
  if (s < 0 || t < 0 || s >= static_cast<int>(g.vertices.size()) ||
      t >= static_cast<int>(g.vertices.size()))
    throw DataError("route endpoint vertex out of range");
  if (s == t) return route_from_edges(g, s, {});

  const auto edge_cost = [&](int eid) {
    return cost ? cost(g, eid) : g.edges[eid].length;
  };

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.vertices.size(), inf);
  std::vector<int> via_edge(g.vertices.size(), -1);
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[s] = 0.0;
  heap.push({0.0, s});

  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    if (u == t) break;
    for (const int eid : g.vertices[u].incident) {
      const GraphEdge& e = g.edges[eid];
      const int v = e.a == u ? e.b : e.a;
      const double nd = d + edge_cost(eid);
      if (nd < dist[v]) {
        dist[v] = nd;
        via_edge[v] = eid;
        heap.push({nd, v});
      }
    }
  }

  if (via_edge[t] == -1)
    throw NoRouteError("no path between vertices " + std::to_string(g.vertices[s].id) + " and " +
                       std::to_string(g.vertices[t].id));

  std::vector<int> path;
  int at = t;
  while (at != s) {
    const int eid = via_edge[at];
    path.push_back(eid);
    const GraphEdge& e = g.edges[eid];
    at = e.a == at ? e.b : e.a;
  }
  std::reverse(path.begin(), path.end());
  return route_from_edges(g, s, path);
}

Route snap_route_linestring(const StreetGraph& g, const std::vector<Vec2>& line,
                            double tolerance_m) {
  std::vector<int> snapped;
  for (const Vec2& p : line) {
    const int v = g.nearest_vertex(p);
    if (v < 0 || distance(p, g.vertices[v].pos) > tolerance_m) continue;
    if (snapped.empty() || snapped.back() != v) snapped.push_back(v);
  }
  if (snapped.empty())
    throw DataError("route linestring has no point within snapping tolerance of a graph vertex");
  if (snapped.size() == 1) return route_from_edges(g, snapped[0], {});

  std::vector<int> edge_path;
  for (std::size_t i = 1; i < snapped.size(); ++i) {
    const int u = snapped[i - 1];
    const int v = snapped[i];
    // Prefer the direct edge; equal candidates resolve to the shortest, then
    // the lowest id.
    int direct = -1;
    for (const int eid : g.vertices[u].incident) {
      const GraphEdge& e = g.edges[eid];
      if ((e.a == u && e.b == v) || (e.b == u && e.a == v)) {
        if (direct == -1 || e.length < g.edges[direct].length) direct = eid;
      }
    }
    if (direct != -1) {
      edge_path.push_back(direct);
    } else {
      const Route gap = shortest_route(g, u, v);
      edge_path.insert(edge_path.end(), gap.edge_ids.begin(), gap.edge_ids.end());
    }
  }
  return route_from_edges(g, snapped.front(), edge_path);
}

}  // namespace orientsel
