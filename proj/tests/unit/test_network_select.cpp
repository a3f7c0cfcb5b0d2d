#include <algorithm>

#include "doctest.h"
#include "orientsel/network_select.hpp"
#include "support/testutil.hpp"

using namespace orientsel;
using testutil::NetBuilder;

namespace {

int edge_by_source(const StreetGraph& g, long long source_id) {
  for (const auto& e : g.edges) {
    if (e.source_id == source_id) return e.id;
  }
  return -1;
}

}  // namespace

TEST_CASE("topological depth radiates from the route") {
  // route 1-2-3 with a chain hanging off vertex 2 and a disconnected pair
  NetBuilder b;
  b.vertex(1, 0, 0).vertex(2, 100, 0).vertex(3, 200, 0);
  b.vertex(4, 100, 100).vertex(5, 100, 200).vertex(6, 100, 300);
  b.vertex(7, 500, 500).vertex(8, 600, 500);
  b.edge(1, 1, 2).edge(2, 2, 3);
  b.edge(3, 2, 4, kTypeSecondary).edge(4, 4, 5, kTypePrimary).edge(5, 5, 6);
  b.edge(6, 7, 8);
  const StreetGraph g = b.build(testutil::origin_projection());
  const Route r = shortest_route(g, g.vertex_index(1), g.vertex_index(3));

  const auto depth = compute_depths(g, r);
  CHECK(depth[edge_by_source(g, 1)] == 0);
  CHECK(depth[edge_by_source(g, 2)] == 0);
  CHECK(depth[edge_by_source(g, 3)] == 1);
  CHECK(depth[edge_by_source(g, 4)] == 2);
  CHECK(depth[edge_by_source(g, 5)] == 3);
  CHECK(depth[edge_by_source(g, 6)] == kDepthUnreachable);

  SUBCASE("weighted depth requires non-decreasing weights outward") {
    const auto wd = compute_weight_depths(g, r);
    CHECK(wd[edge_by_source(g, 1)] == 0);
    CHECK(wd[edge_by_source(g, 3)] == 1);  // secondary over residential route
    CHECK(wd[edge_by_source(g, 4)] == 2);  // primary over secondary
    // the residential tail breaks the chain
    CHECK(wd[edge_by_source(g, 5)] == kDepthUnreachable);
    CHECK(wd[edge_by_source(g, 6)] == kDepthUnreachable);
  }

  SUBCASE("select_depth keeps everything at or under the limit") {
    const auto sel = select_depth(g, r, 1);
    std::vector<int> expect{edge_by_source(g, 1), edge_by_source(g, 2), edge_by_source(g, 3)};
    std::sort(expect.begin(), expect.end());
    CHECK(sel == expect);
  }
}

TEST_CASE("endpoint-only weighted depth relaxes the chain restriction") {
  // route: residential A then primary P; a residential tail R hangs off the
  // primary end
  NetBuilder b;
  b.vertex(1, 0, 0).vertex(2, 100, 0).vertex(3, 200, 0).vertex(4, 300, 0);
  b.edge(1, 1, 2, kTypeResidential).edge(2, 2, 3, kTypePrimary).edge(3, 3, 4, kTypeResidential);
  const StreetGraph g = b.build(testutil::origin_projection());
  const Route r = shortest_route(g, g.vertex_index(1), g.vertex_index(3));

  const int eR = edge_by_source(g, 3);
  // plain depth reaches R in one hop
  CHECK(compute_depths(g, r)[eR] == 1);
  // the strict chain cannot step down from the primary onto R
  CHECK(compute_weight_depths(g, r)[eR] == kDepthUnreachable);
  // endpoint comparison: R reaches the residential route edge A two hops
  // away, and A does not outweigh R
  CHECK(compute_weight_depths(g, r, true)[eR] == 2);
}

TEST_CASE("weighted depth with a caller-supplied weight function") {
  NetBuilder b;
  b.vertex(1, 0, 0).vertex(2, 100, 0).vertex(3, 100, 100);
  b.edge(1, 1, 2).edge(2, 2, 3);
  const StreetGraph g = b.build(testutil::origin_projection());
  const Route r = shortest_route(g, g.vertex_index(1), g.vertex_index(2));

  // inverted weights: the branch falls below the route edge
  const auto inverse = [](const StreetGraph& gg, int eid) {
    return -static_cast<double>(gg.hierarchy_weight(eid));
  };
  const auto wd = compute_weight_depths(g, r, false, inverse);
  CHECK(wd[edge_by_source(g, 2)] == 1);  // equal weight still passes
}

TEST_CASE("network skeleton follows the inversion table") {
  NetBuilder b;
  b.vertex(1, 0, 0).vertex(2, 100, 0).vertex(3, 200, 0).vertex(4, 300, 0).vertex(5, 400, 0)
      .vertex(6, 500, 0);
  b.edge(1, 1, 2, kTypeHighway).edge(2, 2, 3, kTypePrimary).edge(3, 3, 4, kTypeSecondary)
      .edge(4, 4, 5, kTypeTertiary).edge(5, 5, 6, kTypeResidential);
  const StreetGraph g = b.build(testutil::origin_projection());

  const auto at = [&](long long sid) { return edge_by_source(g, sid); };
  CHECK(network_skeleton(g, 50.0) == std::vector<int>{at(1)});
  CHECK(network_skeleton(g, 40.0) == std::vector<int>{at(1), at(2)});
  CHECK(network_skeleton(g, 30.0) == std::vector<int>{at(1), at(2), at(3)});
  CHECK(network_skeleton(g, 20.0) == std::vector<int>{at(1), at(2), at(3), at(4)});
  CHECK(network_skeleton(g, 10.0) == std::vector<int>{at(1), at(2), at(3), at(4), at(5)});

  SUBCASE("thresholds nest monotonically") {
    const double ws[] = {50.0, 40.0, 30.0, 20.0, 10.0};
    for (int i = 0; i + 1 < 5; ++i) {
      const auto higher = network_skeleton(g, ws[i]);
      const auto lower = network_skeleton(g, ws[i + 1]);
      CHECK(std::includes(lower.begin(), lower.end(), higher.begin(), higher.end()));
    }
  }
}

TEST_CASE("buffer selects any edge that dips into range") {
  NetBuilder b;
  b.vertex(1, -500, 200).vertex(2, 500, 200).vertex(3, -500, 400).vertex(4, 500, 400);
  b.edge(1, 1, 2).edge(2, 3, 4);
  const StreetGraph g = b.build(testutil::origin_projection());

  // edge 1 passes 200 m north of the location, well inside 250 m, although
  // both its endpoints are much farther away
  const auto in = buffer_network(g, {0, 0}, 250.0);
  CHECK(in == std::vector<int>{edge_by_source(g, 1)});
  CHECK(buffer_network(g, {0, 0}, 150.0).empty());
  CHECK(buffer_network(g, {0, 0}, 410.0).size() == 2);
}

TEST_CASE("combined selection joins route, depth and skeleton inside the buffer") {
  // route 1-2; branch C at depth 1; deeper branch D at depth 2; a detached
  // primary running through the buffer; a primary far outside the buffer
  NetBuilder b;
  b.vertex(1, 0, 0).vertex(2, 100, 0);
  b.vertex(4, 100, 100).vertex(5, 100, 200);
  b.vertex(7, -200, 50).vertex(8, -100, 50);
  b.vertex(9, 5000, 0).vertex(10, 5100, 0);
  b.edge(1, 1, 2);
  b.edge(2, 2, 4).edge(3, 4, 5);
  b.edge(4, 7, 8, kTypePrimary);
  b.edge(5, 9, 10, kTypePrimary);
  const StreetGraph g = b.build(testutil::origin_projection());
  const Route r = shortest_route(g, g.vertex_index(1), g.vertex_index(2));

  NetworkSelectParams params;
  params.depth_n = 1;
  params.skeleton_w = 40.0;
  const NetworkSelection sel = select_network(g, r, {50, 0}, 300.0, params);

  const int route_e = edge_by_source(g, 1);
  const int depth1_e = edge_by_source(g, 2);
  const int depth2_e = edge_by_source(g, 3);
  const int near_pri = edge_by_source(g, 4);
  const int far_pri = edge_by_source(g, 5);

  std::vector<int> expect{route_e, depth1_e, near_pri};
  std::sort(expect.begin(), expect.end());
  CHECK(sel.edges == expect);

  CHECK(sel.annotations.at(route_e).on_route);
  CHECK(sel.annotations.at(route_e).depth == 0);
  CHECK(sel.annotations.at(depth1_e).depth == 1);
  CHECK(!sel.annotations.at(depth1_e).in_skeleton);
  CHECK(sel.annotations.at(near_pri).in_skeleton);
  CHECK(sel.annotations.at(near_pri).depth == kDepthUnreachable);
  CHECK(sel.annotations.count(depth2_e) == 0);
  CHECK(sel.annotations.count(far_pri) == 0);

  SUBCASE("without a skeleton threshold the detached primary drops out") {
    NetworkSelectParams p2;
    p2.depth_n = 1;
    const NetworkSelection s2 = select_network(g, r, {50, 0}, 300.0, p2);
    std::vector<int> e2{route_e, depth1_e};
    std::sort(e2.begin(), e2.end());
    CHECK(s2.edges == e2);
  }

  SUBCASE("route edges stay selected outside the buffer") {
    const NetworkSelection s3 = select_network(g, r, {5000, 5000}, 100.0, params);
    CHECK(s3.edges == std::vector<int>{route_e});
    CHECK(!s3.annotations.at(route_e).in_buffer);
  }

  SUBCASE("weighted depth can gate the depth criterion") {
    NetworkSelectParams p4;
    p4.depth_n = 1;
    p4.use_weighted_depth = true;
    const NetworkSelection s4 = select_network(g, r, {50, 0}, 300.0, p4);
    // branch C is residential like the route, so it still passes
    CHECK(std::find(s4.edges.begin(), s4.edges.end(), depth1_e) != s4.edges.end());
  }
}
