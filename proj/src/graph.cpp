#include "orientsel/graph.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "orientsel/errors.hpp"
#include "orientsel/log.hpp"

namespace orientsel {

std::optional<int> street_type_from_highway(const std::string& highway_value) {
  if (highway_value == "motorway" || highway_value == "trunk") return kTypeHighway;
  if (highway_value == "primary") return kTypePrimary;
  if (highway_value == "secondary") return kTypeSecondary;
  if (highway_value == "tertiary") return kTypeTertiary;
  if (highway_value == "residential" || highway_value == "unclassified" ||
      highway_value == "living_street")
    return kTypeResidential;
  return std::nullopt;
}

const char* street_type_label(int type_value) {
  switch (type_value) {
    case kTypeHighway: return "highway";
    case kTypePrimary: return "primary";
    case kTypeSecondary: return "secondary";
    case kTypeTertiary: return "tertiary";
    case kTypeResidential: return "residential";
  }
  return "unknown";
}

bool is_street_type(int type_value) {
  return type_value == kTypeHighway || type_value == kTypePrimary ||
         type_value == kTypeSecondary || type_value == kTypeTertiary ||
         type_value == kTypeResidential;
}

int StreetGraph::vertex_index(long long node_id) const {
  const auto it = index_.find(node_id);
  return it == index_.end() ? -1 : it->second;
}

bool StreetGraph::connected(int x, int y) const {
  const GraphEdge& ex = edges[x];
  const GraphEdge& ey = edges[y];
  return ex.a == ey.a || ex.a == ey.b || ex.b == ey.a || ex.b == ey.b;
}

std::vector<int> StreetGraph::adjacent_edges(int edge_id) const {
  const GraphEdge& e = edges[edge_id];
  std::set<int> out(vertices[e.a].incident.begin(), vertices[e.a].incident.end());
  out.insert(vertices[e.b].incident.begin(), vertices[e.b].incident.end());
  out.erase(edge_id);
  return {out.begin(), out.end()};
}

int StreetGraph::nearest_vertex(Vec2 p) const {
  int best = -1;
  double best_dist = std::numeric_limits<double>::max();
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const double d = distance(p, vertices[i].pos);
    if (d < best_dist) {
      best_dist = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

void StreetGraph::rebuild_index() {
  index_.clear();
  for (std::size_t i = 0; i < vertices.size(); ++i) index_[vertices[i].id] = static_cast<int>(i);
  for (auto& v : vertices) v.incident.clear();
  for (const auto& e : edges) {
    vertices[e.a].incident.push_back(e.id);
    if (e.b != e.a) vertices[e.b].incident.push_back(e.id);
  }
  for (auto& v : vertices) std::sort(v.incident.begin(), v.incident.end());
}

double hierarchy_edge_weight(const StreetGraph& g, int edge_id) {
  return static_cast<double>(g.hierarchy_weight(edge_id));
}

StreetGraph build_graph(const std::vector<GraphWay>& ways,
                        const std::map<long long, GeoPoint>& node_locations,
                        const Projection& proj) {
  struct Kept {
    const GraphWay* way;
    int type;
  };
  std::vector<Kept> kept;
  for (const auto& w : ways) {
    const auto type = street_type_from_highway(w.highway);
    if (!type) {
      log_debug("way " + std::to_string(w.id) + " highway=" + w.highway + " not mappable; dropped");
      continue;
    }
    if (w.node_refs.size() < 2) continue;
    kept.push_back({&w, *type});
  }
  if (kept.empty()) throw EmptyGraphError("no ways with a mappable highway class");

  // Nodes used more than once across all kept ways become junction vertices;
  // way endpoints are vertices regardless.
  std::map<long long, int> usage;
  for (const auto& k : kept) {
    for (const long long ref : k.way->node_refs) ++usage[ref];
  }
  std::set<long long> vertex_nodes;
  for (const auto& k : kept) {
    vertex_nodes.insert(k.way->node_refs.front());
    vertex_nodes.insert(k.way->node_refs.back());
  }
  for (const auto& [ref, n] : usage) {
    if (n >= 2) vertex_nodes.insert(ref);
  }

  StreetGraph g;
  g.vertices.reserve(vertex_nodes.size());
  for (const long long id : vertex_nodes) {
    GraphVertex v;
    v.id = id;
    v.wgs = node_locations.at(id);
    v.pos = proj.to_local(v.wgs);
    g.vertices.push_back(std::move(v));
  }
  g.rebuild_index();

  for (const auto& k : kept) {
    const auto& refs = k.way->node_refs;
    std::vector<GeoPoint> pts_wgs{node_locations.at(refs.front())};
    long long from = refs.front();
    for (std::size_t i = 1; i < refs.size(); ++i) {
      pts_wgs.push_back(node_locations.at(refs[i]));
      if (vertex_nodes.count(refs[i]) == 0) continue;

      GraphEdge e;
      e.id = static_cast<int>(g.edges.size());
      e.a = g.vertex_index(from);
      e.b = g.vertex_index(refs[i]);
      e.type = k.type;
      e.roundabout = k.way->roundabout;
      e.source_id = k.way->id;
      e.geometry_wgs = std::move(pts_wgs);
      e.geometry = proj.to_local(std::span<const GeoPoint>(e.geometry_wgs));
      e.length = polyline_length(e.geometry);
      if (e.length > 0.0) {
        g.edges.push_back(std::move(e));
      } else {
        log_debug("way " + std::to_string(k.way->id) + " produced a zero-length edge; dropped");
      }
      pts_wgs = {node_locations.at(refs[i])};
      from = refs[i];
    }
  }

  if (g.edges.empty()) throw EmptyGraphError("all mappable ways degenerate to zero-length edges");
  g.rebuild_index();
  return g;
}

}  // namespace orientsel
