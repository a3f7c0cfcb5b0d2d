#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orientsel/geometry.hpp"
#include "orientsel/osm_parser.hpp"

namespace orientsel {

// Street hierarchy classes. Lower type value means higher order, so ordering
// comparisons go through hierarchy_weight_value instead.
inline constexpr int kTypeHighway = 10;
inline constexpr int kTypePrimary = 20;
inline constexpr int kTypeSecondary = 30;
inline constexpr int kTypeTertiary = 40;
inline constexpr int kTypeResidential = 50;

std::optional<int> street_type_from_highway(const std::string& highway_value);
const char* street_type_label(int type_value);
bool is_street_type(int type_value);

// Inverts the class value so that "weight >= w" keeps the major roads:
// highway 50, primary 40, secondary 30, tertiary 20, residential 10.
inline int hierarchy_weight_value(int type_value) { return 60 - type_value; }

struct GraphVertex {
  long long id = 0;
  GeoPoint wgs;
  Vec2 pos;
  std::vector<int> incident;  // edge ids, ascending
};

struct GraphEdge {
  int id = 0;
  int a = 0;  // vertex indices, geometry runs a -> b
  int b = 0;
  int type = kTypeResidential;
  bool roundabout = false;
  long long source_id = 0;  // originating way or synthetic edge id
  std::vector<GeoPoint> geometry_wgs;
  std::vector<Vec2> geometry;
  double length = 0.0;
};

class StreetGraph {
 public:
  std::vector<GraphVertex> vertices;
  std::vector<GraphEdge> edges;

  int vertex_index(long long node_id) const;
  int degree(int v) const { return static_cast<int>(vertices[v].incident.size()); }

  // True iff the two edges share an endpoint vertex; an edge is connected to
  // itself.
  bool connected(int x, int y) const;
  int hierarchy_weight(int edge_id) const { return hierarchy_weight_value(edges[edge_id].type); }
  bool weight_connected(int x, int y) const {
    return connected(x, y) && hierarchy_weight(x) >= hierarchy_weight(y);
  }

  // Edges sharing an endpoint with edge_id, ascending, without edge_id itself.
  std::vector<int> adjacent_edges(int edge_id) const;

  int nearest_vertex(Vec2 p) const;

  void rebuild_index();

 private:
  std::map<long long, int> index_;
};

// Caller-replaceable edge weight for the skeleton and weighted-depth
// operators; the default is the street hierarchy weight.
using EdgeWeightFn = std::function<double(const StreetGraph&, int)>;
double hierarchy_edge_weight(const StreetGraph& g, int edge_id);

// Splits highway ways at shared nodes and assembles the graph. Ways whose
// highway class has no hierarchy mapping are dropped. Throws EmptyGraphError
// when nothing mappable remains.
StreetGraph build_graph(const std::vector<GraphWay>& ways,
                        const std::map<long long, GeoPoint>& node_locations,
                        const Projection& proj);

}  // namespace orientsel
