#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orientsel/geometry.hpp"

namespace orientsel {

// Candidate typing by geometry and role: point landmark, line landmark,
// area landmark, administrative region, environmental region.
enum class FeatureType { PL, LL, AL, AR, ER };

const char* feature_type_name(FeatureType t);
std::optional<FeatureType> feature_type_from(const std::string& name);

// Tagged geometry straight out of the source data, before any rule matching.
struct RawFeature {
  std::string id;
  std::map<std::string, std::string> tags;
  GeoGeometry geometry;
};

// Feature that passed the tag rules and carries everything scoring needs.
struct FeatureCandidate {
  std::string id;
  FeatureType type = FeatureType::PL;
  std::string category;   // concrete "key=value" the rule matched on
  double category_weight = 0.0;
  std::string name;       // display name, may be empty
  GeoGeometry geometry_wgs;
  PlanarGeometry geometry;  // projected, filled by the pipeline
};

}  // namespace orientsel
