#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "orientsel/feature.hpp"

namespace orientsel {

// Key-order-preserving JSON so serialized output is stable run to run.
using OJson = nlohmann::ordered_json;

// Polygons are rewound counterclockwise on the way out (right-hand rule).
OJson geometry_to_geojson(const GeoGeometry& g);
GeoGeometry geometry_from_geojson(const nlohmann::json& j);

OJson geojson_feature(OJson geometry, OJson properties);
OJson feature_collection(std::vector<OJson> features);

// RFC 7946 geometry checks (types, position arrays, ring closure and
// winding, coordinate ranges). Returns human-readable violations, empty when
// the document is clean.
std::vector<std::string> geojson_problems(const nlohmann::json& j);

void write_json_file(const std::filesystem::path& path, const OJson& j);
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace orientsel
