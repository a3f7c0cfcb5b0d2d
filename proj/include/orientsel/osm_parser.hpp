#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "orientsel/feature.hpp"

namespace orientsel {

// Highway-tagged way kept for graph construction. The raw highway value is
// preserved; the graph builder decides which classes enter the hierarchy.
struct GraphWay {
  long long id = 0;
  std::vector<long long> node_refs;
  std::string highway;
  bool roundabout = false;
};

struct ParsedOsm {
  std::vector<RawFeature> features;
  std::vector<GraphWay> graph_ways;
  std::map<long long, GeoPoint> node_locations;
  std::vector<std::string> warnings;
};

// Parses an OSM XML document (nodes, ways, relations with tag/nd/member
// children). Tagged nodes become point features, tagged ways become
// linestrings or polygons (closed ring), highway ways are returned for graph
// building, and boundary/multipolygon relations are stitched into polygons.
// Throws OsmParseError with a line number on malformed input.
ParsedOsm parse_osm(const std::string& xml_text);

ParsedOsm load_osm_file(const std::filesystem::path& path);

}  // namespace orientsel
