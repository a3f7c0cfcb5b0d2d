#pragma once

#include "orientsel/geojson.hpp"
#include "orientsel/graph.hpp"

namespace orientsel {

// Explicit network description used by fixtures and tooling: vertices with
// ids and WGS84 positions, edges referencing them, optional tagged features.
// Unlike raw street data the edges are final; nothing gets split.
struct SyntheticEdgeDef {
  long long id = 0;
  long long from = 0;
  long long to = 0;
  int type = kTypeResidential;
  bool roundabout = false;
  std::vector<GeoPoint> geometry;  // empty = straight segment
};

struct SyntheticData {
  std::map<long long, GeoPoint> vertices;
  std::vector<SyntheticEdgeDef> edges;
  std::vector<RawFeature> features;
};

SyntheticData parse_synthetic(const std::string& json_text);
SyntheticData load_synthetic_file(const std::filesystem::path& path);

StreetGraph build_graph(const SyntheticData& data, const Projection& proj);

// Serializes a graph in the same schema (features not included), so a graph
// can be rebuilt from its own JSON.
OJson graph_to_json(const StreetGraph& g);

}  // namespace orientsel
