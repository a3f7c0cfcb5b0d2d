#include "orientsel/geojson.hpp"

#include <algorithm>
#include <fstream>

#include "orientsel/errors.hpp"

namespace orientsel {

namespace {

OJson position(const GeoPoint& p) { return OJson::array({p.lon, p.lat}); }

double ring_signed_area_deg(const std::vector<GeoPoint>& ring) {
  double acc = 0.0;
  for (std::size_t i = 1; i < ring.size(); ++i)
    acc += ring[i - 1].lon * ring[i].lat - ring[i].lon * ring[i - 1].lat;
  return acc / 2.0;
}

}  // namespace

OJson geometry_to_geojson(const GeoGeometry& g) {
  OJson out;
  switch (g.kind) {
    case GeomKind::Point:
      out["type"] = "Point";
      out["coordinates"] = position(g.pts.front());
      break;
    case GeomKind::LineString: {
      out["type"] = "LineString";
      OJson coords = OJson::array();
      for (const auto& p : g.pts) coords.push_back(position(p));
      out["coordinates"] = coords;
      break;
    }
    case GeomKind::Polygon: {
      out["type"] = "Polygon";
      std::vector<GeoPoint> ring = g.pts;
      if (ring_signed_area_deg(ring) < 0.0) std::reverse(ring.begin(), ring.end());
      OJson coords = OJson::array();
      for (const auto& p : ring) coords.push_back(position(p));
      out["coordinates"] = OJson::array({coords});
      break;
    }
  }
  return out;
}

GeoGeometry geometry_from_geojson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j.contains("coordinates"))
    throw DataError("GeoJSON geometry must be an object with type and coordinates");
  const std::string type = j["type"].get<std::string>();
  const auto& coords = j["coordinates"];

  const auto read_pos = [](const nlohmann::json& c) -> GeoPoint {
    if (!c.is_array() || c.size() < 2 || !c[0].is_number() || !c[1].is_number())
      throw DataError("GeoJSON position must be an array of at least two numbers");
    return {c[0].get<double>(), c[1].get<double>()};
  };

  if (type == "Point") return GeoGeometry::point(read_pos(coords));
  if (type == "LineString") {
    std::vector<GeoPoint> pts;
    for (const auto& c : coords) pts.push_back(read_pos(c));
    if (pts.size() < 2) throw DataError("LineString needs at least two positions");
    return GeoGeometry::line(std::move(pts));
  }
  if (type == "Polygon") {
    if (!coords.is_array() || coords.empty())
      throw DataError("Polygon needs at least an exterior ring");
    std::vector<GeoPoint> ring;
    for (const auto& c : coords[0]) ring.push_back(read_pos(c));
    if (ring.size() < 4) throw DataError("Polygon ring needs at least four positions");
    if (ring.front().lon != ring.back().lon || ring.front().lat != ring.back().lat)
      throw DataError("Polygon ring must be closed");
    return GeoGeometry::polygon(std::move(ring));
  }
  throw DataError("unsupported GeoJSON geometry type: " + type);
}

OJson geojson_feature(OJson geometry, OJson properties) {
  OJson f;
  f["type"] = "Feature";
  f["geometry"] = std::move(geometry);
  f["properties"] = std::move(properties);
  return f;
}

OJson feature_collection(std::vector<OJson> features) {
  OJson fc;
  fc["type"] = "FeatureCollection";
  fc["features"] = OJson::array();
  for (auto& f : features) fc["features"].push_back(std::move(f));
  return fc;
}

namespace {

void check_position(const nlohmann::json& c, const std::string& where,
                    std::vector<std::string>& out) {
  if (!c.is_array() || c.size() < 2) {
    out.push_back(where + ": position must be an array of at least two numbers");
    return;
  }
  for (const auto& v : c) {
    if (!v.is_number()) {
      out.push_back(where + ": position contains a non-number");
      return;
    }
  }
  const double lon = c[0].get<double>();
  const double lat = c[1].get<double>();
  if (lon < -180.0 || lon > 180.0) out.push_back(where + ": longitude out of range");
  if (lat < -90.0 || lat > 90.0) out.push_back(where + ": latitude out of range");
}

double json_ring_area(const nlohmann::json& ring) {
  double acc = 0.0;
  for (std::size_t i = 1; i < ring.size(); ++i) {
    acc += ring[i - 1][0].get<double>() * ring[i][1].get<double>() -
           ring[i][0].get<double>() * ring[i - 1][1].get<double>();
  }
  return acc / 2.0;
}

void check_geometry(const nlohmann::json& g, const std::string& where,
                    std::vector<std::string>& out) {
  if (g.is_null()) return;
  if (!g.is_object() || !g.contains("type") || !g["type"].is_string()) {
    out.push_back(where + ": geometry must be an object with a type");
    return;
  }
  const std::string type = g["type"].get<std::string>();
  if (!g.contains("coordinates")) {
    out.push_back(where + ": geometry lacks coordinates");
    return;
  }
  const auto& coords = g["coordinates"];

  if (type == "Point") {
    check_position(coords, where, out);
  } else if (type == "LineString") {
    if (!coords.is_array() || coords.size() < 2) {
      out.push_back(where + ": LineString needs at least two positions");
      return;
    }
    for (const auto& c : coords) check_position(c, where, out);
  } else if (type == "Polygon") {
    if (!coords.is_array() || coords.empty()) {
      out.push_back(where + ": Polygon needs at least one ring");
      return;
    }
    for (std::size_t r = 0; r < coords.size(); ++r) {
      const auto& ring = coords[r];
      const std::string ring_where = where + " ring " + std::to_string(r);
      if (!ring.is_array() || ring.size() < 4) {
        out.push_back(ring_where + ": ring needs at least four positions");
        continue;
      }
      for (const auto& c : ring) check_position(c, ring_where, out);
      if (ring.front() != ring.back()) out.push_back(ring_where + ": ring is not closed");
      const double area = json_ring_area(ring);
      if (r == 0 && area < 0.0) out.push_back(ring_where + ": exterior ring must be counterclockwise");
      if (r > 0 && area > 0.0) out.push_back(ring_where + ": interior ring must be clockwise");
    }
  } else {
    out.push_back(where + ": unsupported geometry type " + type);
  }
}

}  // namespace

std::vector<std::string> geojson_problems(const nlohmann::json& j) {
  std::vector<std::string> out;
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    out.push_back("document must be an object with a type");
    return out;
  }
  const std::string type = j["type"].get<std::string>();
  if (type == "FeatureCollection") {
    if (!j.contains("features") || !j["features"].is_array()) {
      out.push_back("FeatureCollection lacks a features array");
      return out;
    }
    std::size_t i = 0;
    for (const auto& f : j["features"]) {
      const std::string where = "feature " + std::to_string(i++);
      if (!f.is_object() || f.value("type", "") != "Feature") {
        out.push_back(where + ": not a Feature");
        continue;
      }
      if (!f.contains("geometry")) out.push_back(where + ": missing geometry");
      else check_geometry(f["geometry"], where, out);
      if (!f.contains("properties") || !(f["properties"].is_object() || f["properties"].is_null()))
        out.push_back(where + ": properties must be an object or null");
    }
  } else if (type == "Feature") {
    if (j.contains("geometry")) check_geometry(j["geometry"], "feature", out);
    else out.push_back("feature: missing geometry");
  } else {
    check_geometry(j, "geometry", out);
  }
  return out;
}

void write_json_file(const std::filesystem::path& path, const OJson& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path.string());
  out << j.dump(2) << "\n";
  if (!out) throw DataError("write failed: " + path.string());
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

}  // namespace orientsel
