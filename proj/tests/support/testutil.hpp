#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "orientsel/synthetic.hpp"

namespace testutil {

using namespace orientsel;

inline std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(ORIENTSEL_SOURCE_DIR) / "tests" / "data" / name;
}

// Degrees per meter of great-circle arc on the reference sphere. Fixtures
// sit at the equator so the same factor serves both axes.
inline constexpr double kDegPerMeter = 180.0 / (orientsel::kPi * orientsel::kEarthRadiusM);

// Fluent builder for small in-test networks. Coordinates are given in
// meters and placed at the equator around lon/lat zero.
struct NetBuilder {
  SyntheticData data;

  NetBuilder& vertex(long long id, double x_m, double y_m) {
    data.vertices[id] = {x_m * kDegPerMeter, y_m * kDegPerMeter};
    return *this;
  }

  NetBuilder& edge(long long id, long long from, long long to, int type = kTypeResidential,
                   bool roundabout = false) {
    SyntheticEdgeDef def;
    def.id = id;
    def.from = from;
    def.to = to;
    def.type = type;
    def.roundabout = roundabout;
    data.edges.push_back(def);
    return *this;
  }

  StreetGraph build(const Projection& proj) const { return build_graph(data, proj); }
};

inline Projection origin_projection() { return Projection(GeoPoint{0.0, 0.0}); }

}  // namespace testutil
