#include <string>

#include "doctest.h"
#include "orientsel/errors.hpp"
#include "orientsel/synthetic.hpp"
#include "support/testutil.hpp"

using namespace orientsel;

namespace {

const char* kSmallNet = R"({
  "vertices": [
    {"id": 1, "lon": 0.0, "lat": 0.0},
    {"id": 2, "lon": 0.001, "lat": 0.0},
    {"id": 3, "lon": 0.001, "lat": 0.001}
  ],
  "edges": [
    {"id": 10, "from": 1, "to": 2, "type": 50},
    {"id": 11, "from": 2, "to": 3, "type": 20, "roundabout": true,
     "geometry": [[0.001, 0.0], [0.0012, 0.0005], [0.001, 0.001]]}
  ],
  "features": [
    {"id": "f1", "tags": {"amenity": "cafe", "name": "K1", "layer": 2},
     "geometry": {"type": "Point", "coordinates": [0.0005, 0.0001]}}
  ]
})";

}  // namespace

TEST_CASE("synthetic documents parse into networks and features") {
  const SyntheticData data = parse_synthetic(kSmallNet);
  CHECK(data.vertices.size() == 3);
  CHECK(data.vertices.at(3).lat == 0.001);
  REQUIRE(data.edges.size() == 2);
  CHECK(data.edges[1].roundabout);
  CHECK(data.edges[1].geometry.size() == 3);
  CHECK(data.edges[0].geometry.empty());
  REQUIRE(data.features.size() == 1);
  CHECK(data.features[0].tags.at("amenity") == "cafe");
  // non-string tag values arrive as their JSON text
  CHECK(data.features[0].tags.at("layer") == "2");
  CHECK(data.features[0].geometry.kind == GeomKind::Point);
}

TEST_CASE("synthetic validation rejects malformed documents") {
  CHECK_THROWS_AS(parse_synthetic("not json"), DataError);
  CHECK_THROWS_AS(parse_synthetic("[]"), DataError);
  CHECK_THROWS_AS(parse_synthetic(R"({"edges": []})"), DataError);
  CHECK_THROWS_AS(parse_synthetic(R"({"vertices": []})"), DataError);
  CHECK_THROWS_AS(parse_synthetic(R"({"vertices": [{"id": 1, "lon": 0}], "edges": []})"),
                  DataError);
  CHECK_THROWS_AS(parse_synthetic(R"({
    "vertices": [{"id": 1, "lon": 0, "lat": 0}, {"id": 1, "lon": 1, "lat": 1}],
    "edges": []})"),
                  DataError);
  CHECK_THROWS_AS(parse_synthetic(R"({
    "vertices": [{"id": 1, "lon": 0, "lat": 0}],
    "edges": [{"id": 5, "from": 1, "to": 1}]})"),
                  DataError);
  // 35 is not a street type value
  CHECK_THROWS_AS(parse_synthetic(R"({
    "vertices": [{"id": 1, "lon": 0, "lat": 0}, {"id": 2, "lon": 1, "lat": 0}],
    "edges": [{"id": 5, "from": 1, "to": 2, "type": 35}]})"),
                  DataError);
  CHECK_THROWS_AS(parse_synthetic(R"({
    "vertices": [{"id": 1, "lon": 0, "lat": 0}, {"id": 2, "lon": 1, "lat": 0}],
    "edges": [{"id": 5, "from": 1, "to": 2, "type": 50, "geometry": [[0, 0]]}]})"),
                  DataError);
  CHECK_THROWS_AS(parse_synthetic(R"({
    "vertices": [], "edges": [], "features": [{"id": "x"}]})"),
                  DataError);
}

TEST_CASE("graph construction from synthetic data") {
  SyntheticData data = parse_synthetic(kSmallNet);
  const Projection proj = testutil::origin_projection();
  const StreetGraph g = build_graph(data, proj);
  CHECK(g.vertices.size() == 3);
  CHECK(g.edges.size() == 2);
  CHECK(g.edges[1].roundabout);
  CHECK(g.edges[1].geometry.size() == 3);
  CHECK(g.edges[0].length > 100.0);  // about 111 m per 0.001 degree

  SUBCASE("edges referencing unknown vertices fail") {
    data.edges[0].from = 99;
    CHECK_THROWS_AS(build_graph(data, proj), DataError);
  }

  SUBCASE("zero-length edges are dropped, the rest survives") {
    SyntheticEdgeDef dup;
    dup.id = 12;
    dup.from = 2;
    dup.to = 2;
    data.edges.push_back(dup);
    const StreetGraph g2 = build_graph(data, proj);
    CHECK(g2.edges.size() == 2);
  }

  SUBCASE("a network without usable edges is an error") {
    data.edges.clear();
    CHECK_THROWS_AS(build_graph(data, proj), EmptyGraphError);
    SyntheticEdgeDef loop;
    loop.id = 12;
    loop.from = 2;
    loop.to = 2;
    data.edges.push_back(loop);
    CHECK_THROWS_AS(build_graph(data, proj), EmptyGraphError);
  }
}

TEST_CASE("graphs serialize back into the same schema") {
  const SyntheticData data = parse_synthetic(kSmallNet);
  const Projection proj = testutil::origin_projection();
  const StreetGraph g = build_graph(data, proj);

  const OJson j = graph_to_json(g);
  const SyntheticData again = parse_synthetic(j.dump());
  const StreetGraph g2 = build_graph(again, proj);

  REQUIRE(g2.vertices.size() == g.vertices.size());
  REQUIRE(g2.edges.size() == g.edges.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    CHECK(g2.vertices[g2.edges[i].a].id == g.vertices[g.edges[i].a].id);
    CHECK(g2.vertices[g2.edges[i].b].id == g.vertices[g.edges[i].b].id);
    CHECK(g2.edges[i].type == g.edges[i].type);
    CHECK(g2.edges[i].roundabout == g.edges[i].roundabout);
    CHECK(g2.edges[i].length == doctest::Approx(g.edges[i].length).epsilon(1e-12));
  }
}

TEST_CASE("shipped fixtures load") {
  const SyntheticData showcase = load_synthetic_file(testutil::fixture_path("dp_showcase.json"));
  CHECK(showcase.vertices.size() == 16);
  CHECK(showcase.edges.size() == 16);
  int roundabouts = 0;
  for (const auto& e : showcase.edges) roundabouts += e.roundabout ? 1 : 0;
  CHECK(roundabouts == 3);

  const SyntheticData grid = load_synthetic_file(testutil::fixture_path("grid_fixture.json"));
  CHECK(grid.vertices.size() == 25);
  CHECK(grid.edges.size() == 40);
  CHECK(grid.features.size() == 15);
  CHECK_NOTHROW(build_graph(grid, Projection({0.004, 0.004})));
}
