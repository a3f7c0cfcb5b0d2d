#pragma once

#include <limits>
#include <map>
#include <optional>

#include "orientsel/route.hpp"

namespace orientsel {

inline constexpr int kDepthUnreachable = std::numeric_limits<int>::max();

// Fewest edge-adjacency hops from each edge to the nearest route edge;
// route edges are 0, unreachable edges kDepthUnreachable.
std::vector<int> compute_depths(const StreetGraph& g, const Route& route);

// Depth restricted to weight-compatible chains: every step outward from the
// route must be non-decreasing in edge weight, which implies the reached
// edge outweighs the route edge it connects back to. With endpoint_only the
// chain restriction is dropped and only the terminal comparison remains.
std::vector<int> compute_weight_depths(const StreetGraph& g, const Route& route,
                                       bool endpoint_only = false,
                                       const EdgeWeightFn& weight = {});

// Edge ids with depth <= n, ascending.
std::vector<int> select_depth(const StreetGraph& g, const Route& route, int n);

// Edge ids whose weight is >= w, ascending.
std::vector<int> network_skeleton(const StreetGraph& g, double w, const EdgeWeightFn& weight = {});

// Edge ids with any geometry part within md_f of the location, ascending.
std::vector<int> buffer_network(const StreetGraph& g, Vec2 location, double md_f);

struct NetworkSelectParams {
  std::optional<int> depth_n;
  std::optional<double> skeleton_w;
  bool use_weighted_depth = false;
  bool weighted_depth_endpoint_only = false;
};

struct EdgeAnnotation {
  int depth = kDepthUnreachable;
  int weighted_depth = kDepthUnreachable;
  bool in_skeleton = false;
  bool in_buffer = false;
  bool on_route = false;
};

struct NetworkSelection {
  std::vector<int> edges;  // ascending
  std::map<int, EdgeAnnotation> annotations;
};

// Combined context selection: the route itself plus every buffered edge that
// passes the depth or skeleton criterion of the scale.
NetworkSelection select_network(const StreetGraph& g, const Route& route, Vec2 location,
                                double md_f, const NetworkSelectParams& params,
                                const EdgeWeightFn& weight = {});

}  // namespace orientsel
