#include "orientsel/network_select.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace orientsel {

namespace {

double edge_weight(const StreetGraph& g, int eid, const EdgeWeightFn& weight) {
  return weight ? weight(g, eid) : hierarchy_edge_weight(g, eid);
}

std::vector<int> route_edge_sources(const Route& route) {
  std::set<int> uniq(route.edge_ids.begin(), route.edge_ids.end());
  return {uniq.begin(), uniq.end()};
}

// Multi-source BFS over edge adjacency. The step predicate decides whether
// the frontier may move from edge `cur` to its neighbor `nb`.
template <typename Step>
std::vector<int> edge_bfs(const StreetGraph& g, const std::vector<int>& sources, Step step) {
  std::vector<int> depth(g.edges.size(), kDepthUnreachable);
  std::deque<int> queue;
  for (const int eid : sources) {
    if (depth[eid] != 0) {
      depth[eid] = 0;
      queue.push_back(eid);
    }
  }
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (const int nb : g.adjacent_edges(cur)) {
      if (depth[nb] != kDepthUnreachable) continue;
      if (!step(cur, nb)) continue;
      depth[nb] = depth[cur] + 1;
      queue.push_back(nb);
    }
  }
  return depth;
}

}  // namespace

std::vector<int> compute_depths(const StreetGraph& g, const Route& route) {
  return edge_bfs(g, route_edge_sources(route), [](int, int) { return true; });
}

std::vector<int> compute_weight_depths(const StreetGraph& g, const Route& route,
                                       bool endpoint_only, const EdgeWeightFn& weight) {
  const std::vector<int> sources = route_edge_sources(route);
  if (sources.empty()) return std::vector<int>(g.edges.size(), kDepthUnreachable);

  if (!endpoint_only) {
    return edge_bfs(g, sources, [&](int cur, int nb) {
      return edge_weight(g, nb, weight) >= edge_weight(g, cur, weight);
    });
  }

  // Terminal comparison only: reach the route over plain adjacency, but the
  // route edge reached must not outweigh the queried edge. One BFS per
  // distinct route weight, taking sources at or below that weight.
  std::set<double> weights;
  for (const int eid : sources) weights.insert(edge_weight(g, eid, weight));

  std::vector<int> result(g.edges.size(), kDepthUnreachable);
  for (const double w : weights) {
    std::vector<int> cohort;
    for (const int eid : sources) {
      if (edge_weight(g, eid, weight) <= w) cohort.push_back(eid);
    }
    const std::vector<int> dist = edge_bfs(g, cohort, [](int, int) { return true; });
    for (std::size_t e = 0; e < dist.size(); ++e) {
      if (edge_weight(g, static_cast<int>(e), weight) >= w)
        result[e] = std::min(result[e], dist[e]);
    }
  }
  for (const int eid : sources) result[eid] = 0;
  return result;
}

std::vector<int> select_depth(const StreetGraph& g, const Route& route, int n) {
  const std::vector<int> depth = compute_depths(g, route);
  std::vector<int> out;
  for (std::size_t e = 0; e < depth.size(); ++e) {
    if (depth[e] <= n) out.push_back(static_cast<int>(e));
  }
  return out;
}

std::vector<int> network_skeleton(const StreetGraph& g, double w, const EdgeWeightFn& weight) {
  std::vector<int> out;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (edge_weight(g, static_cast<int>(e), weight) >= w) out.push_back(static_cast<int>(e));
  }
  return out;
}

std::vector<int> buffer_network(const StreetGraph& g, Vec2 location, double md_f) {
  std::vector<int> out;
  for (const auto& e : g.edges) {
    const PlanarGeometry line{GeomKind::LineString, e.geometry};
    if (dist_point_geometry(location, line) <= md_f) out.push_back(e.id);
  }
  return out;
}

NetworkSelection select_network(const StreetGraph& g, const Route& route, Vec2 location,
                                double md_f, const NetworkSelectParams& params,
                                const EdgeWeightFn& weight) {
  const std::vector<int> depth = compute_depths(g, route);
  const std::vector<int> wdepth =
      compute_weight_depths(g, route, params.weighted_depth_endpoint_only, weight);

  std::vector<char> in_buffer(g.edges.size(), 0);
  for (const int eid : buffer_network(g, location, md_f)) in_buffer[eid] = 1;

  std::vector<char> in_skeleton(g.edges.size(), 0);
  if (params.skeleton_w) {
    for (const int eid : network_skeleton(g, *params.skeleton_w, weight)) in_skeleton[eid] = 1;
  }

  NetworkSelection sel;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const int eid = static_cast<int>(e);
    const bool on_route = route.is_route_edge(eid);
    bool by_depth = false;
    if (params.depth_n) {
      const int d = params.use_weighted_depth ? wdepth[e] : depth[e];
      by_depth = d <= *params.depth_n;
    }
    const bool selected =
        on_route || (in_buffer[e] != 0 && (by_depth || in_skeleton[e] != 0));
    if (!selected) continue;

    sel.edges.push_back(eid);
    EdgeAnnotation a;
    a.depth = depth[e];
    a.weighted_depth = wdepth[e];
    a.in_skeleton = in_skeleton[e] != 0;
    a.in_buffer = in_buffer[e] != 0;
    a.on_route = on_route;
    sel.annotations[eid] = a;
  }
  return sel;
}

}  // namespace orientsel
