#include <set>

#include "doctest.h"
#include "orientsel/errors.hpp"
#include "orientsel/graph.hpp"
#include "support/testutil.hpp"

using namespace orientsel;
using testutil::kDegPerMeter;

namespace {

GraphWay way(long long id, std::vector<long long> refs, std::string highway,
             bool roundabout = false) {
  GraphWay w;
  w.id = id;
  w.node_refs = std::move(refs);
  w.highway = std::move(highway);
  w.roundabout = roundabout;
  return w;
}

std::map<long long, GeoPoint> line_of_nodes(int count, double step_m) {
  std::map<long long, GeoPoint> nodes;
  for (int i = 0; i < count; ++i) nodes[i + 1] = {i * step_m * kDegPerMeter, 0.0};
  return nodes;
}

}  // namespace

TEST_CASE("highway class mapping") {
  CHECK(street_type_from_highway("motorway") == kTypeHighway);
  CHECK(street_type_from_highway("trunk") == kTypeHighway);
  CHECK(street_type_from_highway("primary") == kTypePrimary);
  CHECK(street_type_from_highway("secondary") == kTypeSecondary);
  CHECK(street_type_from_highway("tertiary") == kTypeTertiary);
  CHECK(street_type_from_highway("residential") == kTypeResidential);
  CHECK(street_type_from_highway("unclassified") == kTypeResidential);
  CHECK(street_type_from_highway("living_street") == kTypeResidential);
  CHECK(!street_type_from_highway("footway"));
  CHECK(!street_type_from_highway("service"));
  CHECK(!street_type_from_highway(""));
}

TEST_CASE("hierarchy weight inverts the class value") {
  CHECK(hierarchy_weight_value(kTypeHighway) == 50);
  CHECK(hierarchy_weight_value(kTypePrimary) == 40);
  CHECK(hierarchy_weight_value(kTypeSecondary) == 30);
  CHECK(hierarchy_weight_value(kTypeTertiary) == 20);
  CHECK(hierarchy_weight_value(kTypeResidential) == 10);
}

TEST_CASE("ways split at shared nodes only") {
  // way 1 passes nodes 1-2-3-4, way 2 crosses at node 3
  std::map<long long, GeoPoint> nodes = line_of_nodes(4, 100.0);
  nodes[10] = {2 * 100.0 * kDegPerMeter, 100.0 * kDegPerMeter};
  nodes[11] = {2 * 100.0 * kDegPerMeter, -100.0 * kDegPerMeter};
  const std::vector<GraphWay> ways{way(1, {1, 2, 3, 4}, "residential"),
                                   way(2, {10, 3, 11}, "primary")};
  const Projection proj(GeoPoint{0, 0});
  const StreetGraph g = build_graph(ways, nodes, proj);

  // vertices: endpoints 1, 4, 10, 11 and the shared node 3; node 2 stays
  // interior geometry
  std::set<long long> vertex_ids;
  for (const auto& v : g.vertices) vertex_ids.insert(v.id);
  CHECK(vertex_ids == std::set<long long>{1, 3, 4, 10, 11});

  REQUIRE(g.edges.size() == 4);
  // way 1 contributes 1->3 (through node 2) and 3->4
  const int v1 = g.vertex_index(1);
  const int v3 = g.vertex_index(3);
  REQUIRE(v1 >= 0);
  REQUIRE(v3 >= 0);
  bool found_through_edge = false;
  for (const auto& e : g.edges) {
    if ((e.a == v1 && e.b == v3) || (e.a == v3 && e.b == v1)) {
      found_through_edge = true;
      CHECK(e.geometry.size() == 3);
      CHECK(e.length == doctest::Approx(200.0).epsilon(1e-9));
      CHECK(e.source_id == 1);
      CHECK(e.type == kTypeResidential);
    }
  }
  CHECK(found_through_edge);
  CHECK(g.degree(v3) == 4);
}

TEST_CASE("unmappable highway classes are dropped") {
  const std::map<long long, GeoPoint> nodes = line_of_nodes(3, 50.0);
  SUBCASE("some mappable ways remain") {
    const std::vector<GraphWay> ways{way(1, {1, 2}, "residential"), way(2, {2, 3}, "footway")};
    const StreetGraph g = build_graph(ways, nodes, Projection(GeoPoint{0, 0}));
    CHECK(g.edges.size() == 1);
  }
  SUBCASE("nothing mappable throws") {
    const std::vector<GraphWay> ways{way(1, {1, 2}, "footway")};
    CHECK_THROWS_AS(build_graph(ways, nodes, Projection(GeoPoint{0, 0})), EmptyGraphError);
    CHECK_THROWS_AS(build_graph({}, nodes, Projection(GeoPoint{0, 0})), EmptyGraphError);
  }
}

TEST_CASE("roundabout flag carries onto the edges") {
  const std::map<long long, GeoPoint> nodes = line_of_nodes(3, 40.0);
  const std::vector<GraphWay> ways{way(1, {1, 2, 3}, "residential", true)};
  const StreetGraph g = build_graph(ways, nodes, Projection(GeoPoint{0, 0}));
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].roundabout);
}

TEST_CASE("connectivity relations") {
  // two edges sharing vertex 2, one disconnected pair
  std::map<long long, GeoPoint> nodes = line_of_nodes(3, 100.0);
  nodes[20] = {0.0, 500.0 * kDegPerMeter};
  nodes[21] = {100.0 * kDegPerMeter, 500.0 * kDegPerMeter};
  const std::vector<GraphWay> ways{way(1, {1, 2}, "residential"), way(2, {2, 3}, "primary"),
                                   way(3, {20, 21}, "secondary")};
  const StreetGraph g = build_graph(ways, nodes, Projection(GeoPoint{0, 0}));
  REQUIRE(g.edges.size() == 3);

  int e_res = -1, e_pri = -1, e_sec = -1;
  for (const auto& e : g.edges) {
    if (e.type == kTypeResidential) e_res = e.id;
    if (e.type == kTypePrimary) e_pri = e.id;
    if (e.type == kTypeSecondary) e_sec = e.id;
  }

  SUBCASE("connected is symmetric and reflexive") {
    CHECK(g.connected(e_res, e_pri));
    CHECK(g.connected(e_pri, e_res));
    CHECK(g.connected(e_res, e_res));
    CHECK(!g.connected(e_res, e_sec));
  }

  SUBCASE("weight_connected compares hierarchy weights") {
    // primary outweighs residential
    CHECK(g.weight_connected(e_pri, e_res));
    CHECK(!g.weight_connected(e_res, e_pri));
    // at least one direction always holds for connected edges
    CHECK((g.weight_connected(e_pri, e_res) || g.weight_connected(e_res, e_pri)));
    CHECK(!g.weight_connected(e_res, e_sec));
  }

  SUBCASE("adjacent_edges excludes the edge itself") {
    const auto adj = g.adjacent_edges(e_res);
    CHECK(adj == std::vector<int>{e_pri});
    CHECK(g.adjacent_edges(e_sec).empty());
  }

  SUBCASE("nearest vertex") {
    const int v = g.nearest_vertex({100.0 * 1.9, 0.0});
    CHECK(g.vertices[v].id == 3);
  }
}

TEST_CASE("self-crossing way creates a vertex at the repeated node") {
  // way visits node 2 twice: 1-2-3 then back 3-2-4 within one ref list
  std::map<long long, GeoPoint> nodes;
  nodes[1] = {0.0, 0.0};
  nodes[2] = {100.0 * kDegPerMeter, 0.0};
  nodes[3] = {100.0 * kDegPerMeter, 100.0 * kDegPerMeter};
  nodes[4] = {200.0 * kDegPerMeter, 0.0};
  const std::vector<GraphWay> ways{way(1, {1, 2, 3, 2, 4}, "residential")};
  const StreetGraph g = build_graph(ways, nodes, Projection(GeoPoint{0, 0}));
  const int v2 = g.vertex_index(2);
  REQUIRE(v2 >= 0);
  CHECK(g.degree(v2) == 3);
  CHECK(g.edges.size() == 3);
}

TEST_CASE("zero length segments are dropped") {
  std::map<long long, GeoPoint> nodes;
  nodes[1] = {0.0, 0.0};
  nodes[2] = {0.0, 0.0};  // same position
  nodes[3] = {100.0 * kDegPerMeter, 0.0};
  const std::vector<GraphWay> ways{way(1, {1, 2}, "residential"), way(2, {2, 3}, "residential")};
  const StreetGraph g = build_graph(ways, nodes, Projection(GeoPoint{0, 0}));
  CHECK(g.edges.size() == 1);

  const std::vector<GraphWay> only_degenerate{way(1, {1, 2}, "residential")};
  CHECK_THROWS_AS(build_graph(only_degenerate, nodes, Projection(GeoPoint{0, 0})),
                  EmptyGraphError);
}
