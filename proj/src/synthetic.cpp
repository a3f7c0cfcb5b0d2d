#include "orientsel/synthetic.hpp"

#include <fstream>
#include <sstream>

#include "orientsel/errors.hpp"
#include "orientsel/log.hpp"

namespace orientsel {

SyntheticData parse_synthetic(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("synthetic network: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DataError("synthetic network: top level must be an object");

  SyntheticData data;
  if (!doc.contains("vertices") || !doc["vertices"].is_array())
    throw DataError("synthetic network: missing \"vertices\" array");
  for (const auto& v : doc["vertices"]) {
    if (!v.is_object() || !v.contains("id") || !v.contains("lon") || !v.contains("lat"))
      throw DataError("synthetic network: vertex needs id, lon, lat");
    const long long id = v["id"].get<long long>();
    if (data.vertices.count(id) > 0)
      throw DataError("synthetic network: duplicate vertex id " + std::to_string(id));
    data.vertices[id] = {v["lon"].get<double>(), v["lat"].get<double>()};
  }

  if (!doc.contains("edges") || !doc["edges"].is_array())
    throw DataError("synthetic network: missing \"edges\" array");
  for (const auto& e : doc["edges"]) {
    if (!e.is_object() || !e.contains("id") || !e.contains("from") || !e.contains("to") ||
        !e.contains("type"))
      throw DataError("synthetic network: edge needs id, from, to, type");
    SyntheticEdgeDef def;
    def.id = e["id"].get<long long>();
    def.from = e["from"].get<long long>();
    def.to = e["to"].get<long long>();
    def.type = e["type"].get<int>();
    if (!is_street_type(def.type))
      throw DataError("synthetic network: edge " + std::to_string(def.id) +
                      " has unknown type value " + std::to_string(def.type));
    def.roundabout = e.value("roundabout", false);
    if (e.contains("geometry")) {
      for (const auto& c : e["geometry"]) {
        if (!c.is_array() || c.size() < 2)
          throw DataError("synthetic network: edge geometry positions must be [lon, lat]");
        def.geometry.push_back({c[0].get<double>(), c[1].get<double>()});
      }
      if (def.geometry.size() < 2)
        throw DataError("synthetic network: edge geometry needs at least two positions");
    }
    data.edges.push_back(std::move(def));
  }

  if (doc.contains("features")) {
    if (!doc["features"].is_array())
      throw DataError("synthetic network: \"features\" must be an array");
    for (const auto& f : doc["features"]) {
      if (!f.is_object() || !f.contains("id") || !f.contains("geometry"))
        throw DataError("synthetic network: feature needs id and geometry");
      RawFeature rf;
      rf.id = f["id"].is_string() ? f["id"].get<std::string>() : f["id"].dump();
      if (f.contains("tags")) {
        if (!f["tags"].is_object()) throw DataError("synthetic network: feature tags must be an object");
        for (const auto& [k, v] : f["tags"].items())
          rf.tags[k] = v.is_string() ? v.get<std::string>() : v.dump();
      }
      rf.geometry = geometry_from_geojson(f["geometry"]);
      data.features.push_back(std::move(rf));
    }
  }
  return data;
}

SyntheticData load_synthetic_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open synthetic network file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_synthetic(buf.str());
}

StreetGraph build_graph(const SyntheticData& data, const Projection& proj) {
  if (data.edges.empty()) throw EmptyGraphError("synthetic network has no edges");

  StreetGraph g;
  g.vertices.reserve(data.vertices.size());
  for (const auto& [id, wgs] : data.vertices) {
    GraphVertex v;
    v.id = id;
    v.wgs = wgs;
    v.pos = proj.to_local(wgs);
    g.vertices.push_back(std::move(v));
  }
  g.rebuild_index();

  for (const auto& def : data.edges) {
    const int a = g.vertex_index(def.from);
    const int b = g.vertex_index(def.to);
    if (a < 0 || b < 0)
      throw DataError("synthetic network: edge " + std::to_string(def.id) +
                      " references an unknown vertex");
    GraphEdge e;
    e.id = static_cast<int>(g.edges.size());
    e.a = a;
    e.b = b;
    e.type = def.type;
    e.roundabout = def.roundabout;
    e.source_id = def.id;
    e.geometry_wgs = def.geometry.empty()
                         ? std::vector<GeoPoint>{data.vertices.at(def.from),
                                                 data.vertices.at(def.to)}
                         : def.geometry;
    e.geometry = proj.to_local(std::span<const GeoPoint>(e.geometry_wgs));
    e.length = polyline_length(e.geometry);
    if (e.length <= 0.0) {
      log_warn("synthetic network: edge " + std::to_string(def.id) + " has zero length; dropped");
      continue;
    }
    g.edges.push_back(std::move(e));
  }
  if (g.edges.empty()) throw EmptyGraphError("synthetic network edges all degenerate");
  g.rebuild_index();
  return g;
}

OJson graph_to_json(const StreetGraph& g) {
  OJson out;
  out["vertices"] = OJson::array();
  for (const auto& v : g.vertices) {
    OJson vj;
    vj["id"] = v.id;
    vj["lon"] = v.wgs.lon;
    vj["lat"] = v.wgs.lat;
    out["vertices"].push_back(std::move(vj));
  }
  out["edges"] = OJson::array();
  for (const auto& e : g.edges) {
    OJson ej;
    ej["id"] = e.id;
    ej["from"] = g.vertices[e.a].id;
    ej["to"] = g.vertices[e.b].id;
    ej["type"] = e.type;
    ej["roundabout"] = e.roundabout;
    OJson coords = OJson::array();
    for (const auto& p : e.geometry_wgs) coords.push_back(OJson::array({p.lon, p.lat}));
    ej["geometry"] = std::move(coords);
    out["edges"].push_back(std::move(ej));
  }
  return out;
}

}  // namespace orientsel
