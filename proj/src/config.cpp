#include "orientsel/config.hpp"

#include <set>

#include "orientsel/errors.hpp"

namespace orientsel {

namespace {

void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (known.count(key) == 0)
      throw ConfigError(where + ": unknown key \"" + key + "\"");
  }
}

double require_number(const nlohmann::json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_number())
    throw ConfigError(where + ": missing numeric \"" + key + "\"");
  return obj[key].get<double>();
}

GeoPoint parse_lonlat(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(where + ": expected [lon, lat]");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::filesystem::path resolve(const std::filesystem::path& base_dir, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base_dir / path;
}

FunctionalScale parse_scale(const nlohmann::json& j, const std::string& where) {
  reject_unknown_keys(j,
                      {"name", "md_f", "depth", "skeleton_w", "use_weighted_depth",
                       "weighted_depth_endpoint_only", "extent", "category_weight_overrides"},
                      where);
  FunctionalScale s;
  if (!j.contains("name") || !j["name"].is_string())
    throw ConfigError(where + ": missing string \"name\"");
  s.name = j["name"].get<std::string>();
  s.md_f = require_number(j, "md_f", where);
  if (j.contains("depth")) {
    if (!j["depth"].is_number_integer() || j["depth"].get<int>() < 0)
      throw ConfigError(where + ": \"depth\" must be a non-negative integer");
    s.netselect.depth_n = j["depth"].get<int>();
  }
  if (j.contains("skeleton_w")) {
    if (!j["skeleton_w"].is_number())
      throw ConfigError(where + ": \"skeleton_w\" must be a number");
    s.netselect.skeleton_w = j["skeleton_w"].get<double>();
  }
  s.netselect.use_weighted_depth = j.value("use_weighted_depth", false);
  s.netselect.weighted_depth_endpoint_only = j.value("weighted_depth_endpoint_only", false);
  if (j.contains("extent")) {
    const auto& e = j["extent"];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw ConfigError(where + ": \"extent\" must be [width_m, height_m]");
    s.extent_width_m = e[0].get<double>();
    s.extent_height_m = e[1].get<double>();
  }
  if (j.contains("category_weight_overrides")) {
    if (!j["category_weight_overrides"].is_object())
      throw ConfigError(where + ": \"category_weight_overrides\" must be an object");
    for (const auto& [cat, w] : j["category_weight_overrides"].items()) {
      if (!w.is_number()) throw ConfigError(where + ": override \"" + cat + "\" must be a number");
      s.category_weight_overrides[cat] = w.get<double>();
    }
  }
  return s;
}

}  // namespace

std::vector<FunctionalScale> default_scales() {
  FunctionalScale intersection;
  intersection.name = "intersection";
  intersection.md_f = 250.0;
  intersection.netselect.depth_n = 1;

  FunctionalScale neighborhood;
  neighborhood.name = "neighborhood";
  neighborhood.md_f = 1000.0;
  neighborhood.netselect.depth_n = 2;
  neighborhood.netselect.skeleton_w = 20.0;

  FunctionalScale city;
  city.name = "city";
  city.md_f = 5000.0;
  city.netselect.skeleton_w = 30.0;

  return {intersection, neighborhood, city};
}

PipelineConfig parse_config(const nlohmann::json& in_doc, const std::filesystem::path& base_dir) {
  const nlohmann::json& doc =
      in_doc.is_object() && in_doc.contains("effective_config") ? in_doc["effective_config"] : in_doc;
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown_keys(doc,
                      {"data", "tag_rules", "output_dir", "route", "route_file", "weights",
                       "extended_metrics", "premerge", "turn_threshold_deg", "ref_len_m",
                       "direction_sectors", "scales", "contexts"},
                      "config");

  PipelineConfig cfg;
  if (!doc.contains("data") || !doc["data"].is_string())
    throw ConfigError("config: missing string \"data\"");
  cfg.data_path = resolve(base_dir, doc["data"].get<std::string>());
  if (!doc.contains("tag_rules") || !doc["tag_rules"].is_string())
    throw ConfigError("config: missing string \"tag_rules\"");
  cfg.rules_path = resolve(base_dir, doc["tag_rules"].get<std::string>());
  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string()) throw ConfigError("config: \"output_dir\" must be a string");
    cfg.output_dir = resolve(base_dir, doc["output_dir"].get<std::string>());
  }
  if (doc.contains("route_file")) {
    if (!doc["route_file"].is_string()) throw ConfigError("config: \"route_file\" must be a string");
    cfg.route_file = resolve(base_dir, doc["route_file"].get<std::string>());
  }

  if (doc.contains("route")) {
    const auto& r = doc["route"];
    reject_unknown_keys(r, {"from", "to"}, "config route");
    cfg.route_from = parse_lonlat(r.at("from"), "config route.from");
    cfg.route_to = parse_lonlat(r.at("to"), "config route.to");
    cfg.has_route_endpoints = true;
  }

  if (doc.contains("weights")) {
    const auto& w = doc["weights"];
    reject_unknown_keys(
        w, {"category", "relation", "uniqueness", "distance", "direction", "connection", "coverage"},
        "config weights");
    cfg.weights.category = require_number(w, "category", "config weights");
    cfg.weights.relation = require_number(w, "relation", "config weights");
    cfg.weights.uniqueness = require_number(w, "uniqueness", "config weights");
    cfg.weights.distance = require_number(w, "distance", "config weights");
    cfg.weights.direction = require_number(w, "direction", "config weights");
    if (w.contains("connection")) cfg.weights.connection = w["connection"].get<double>();
    if (w.contains("coverage")) cfg.weights.coverage = w["coverage"].get<double>();
  }

  if (doc.contains("extended_metrics")) {
    const auto& e = doc["extended_metrics"];
    reject_unknown_keys(e, {"connection", "coverage", "snap_tolerance_m"}, "config extended_metrics");
    cfg.extended.connection = e.value("connection", false);
    cfg.extended.coverage = e.value("coverage", false);
    if (e.contains("snap_tolerance_m"))
      cfg.extended.snap_tolerance_m = require_number(e, "snap_tolerance_m", "config extended_metrics");
  }

  cfg.premerge = doc.value("premerge", false);
  if (doc.contains("turn_threshold_deg"))
    cfg.turn_threshold_deg = require_number(doc, "turn_threshold_deg", "config");
  if (doc.contains("ref_len_m")) cfg.ref_len_m = require_number(doc, "ref_len_m", "config");

  if (doc.contains("direction_sectors")) {
    const auto& d = doc["direction_sectors"];
    reject_unknown_keys(d, {"front_max_deg", "back_min_deg"}, "config direction_sectors");
    if (d.contains("front_max_deg"))
      cfg.sectors.front_max_deg = require_number(d, "front_max_deg", "config direction_sectors");
    if (d.contains("back_min_deg"))
      cfg.sectors.back_min_deg = require_number(d, "back_min_deg", "config direction_sectors");
  }

  if (doc.contains("scales")) {
    if (!doc["scales"].is_array()) throw ConfigError("config: \"scales\" must be an array");
    std::size_t i = 0;
    for (const auto& s : doc["scales"])
      cfg.scales.push_back(parse_scale(s, "config scale #" + std::to_string(++i)));
  } else {
    cfg.scales = default_scales();
  }

  if (doc.contains("contexts")) {
    if (!doc["contexts"].is_array()) throw ConfigError("config: \"contexts\" must be an array");
    std::size_t i = 0;
    for (const auto& c : doc["contexts"]) {
      const std::string where = "config context #" + std::to_string(++i);
      reject_unknown_keys(c, {"name", "route_fraction", "scale"}, where);
      ContextSpec spec;
      if (!c.contains("name") || !c["name"].is_string())
        throw ConfigError(where + ": missing string \"name\"");
      spec.name = c["name"].get<std::string>();
      spec.route_fraction = require_number(c, "route_fraction", where);
      if (!c.contains("scale") || !c["scale"].is_string())
        throw ConfigError(where + ": missing string \"scale\"");
      spec.scale_name = c["scale"].get<std::string>();
      cfg.contexts.push_back(std::move(spec));
    }
  }
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  const nlohmann::json doc = [&] {
    try {
      return read_json_file(path);
    } catch (const DataError& e) {
      // A config that cannot be read or parsed is a configuration problem.
      throw ConfigError(e.what());
    }
  }();
  const auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  try {
    PipelineConfig cfg = parse_config(doc, base);
    validate_config(cfg);
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
}

void validate_config(const PipelineConfig& cfg) {
  cfg.weights.validate(cfg.extended.connection, cfg.extended.coverage);
  if (!cfg.has_route_endpoints && !cfg.route_file)
    throw ConfigError("config: needs either \"route\" endpoints or a \"route_file\"");
  if (cfg.turn_threshold_deg <= 0.0) throw ConfigError("config: turn_threshold_deg must be positive");
  if (cfg.ref_len_m <= 0.0) throw ConfigError("config: ref_len_m must be positive");
  if (cfg.extended.snap_tolerance_m <= 0.0)
    throw ConfigError("config: snap_tolerance_m must be positive");
  if (!(cfg.sectors.front_max_deg > 0.0 && cfg.sectors.front_max_deg < cfg.sectors.back_min_deg &&
        cfg.sectors.back_min_deg < 180.0))
    throw ConfigError("config: direction sectors must satisfy 0 < front_max < back_min < 180");

  if (cfg.scales.empty()) throw ConfigError("config: needs at least one scale");
  std::set<std::string> names;
  for (const auto& s : cfg.scales) {
    if (s.name.empty()) throw ConfigError("config: scale with empty name");
    if (!names.insert(s.name).second)
      throw ConfigError("config: duplicate scale name \"" + s.name + "\"");
    if (s.md_f <= 0.0) throw ConfigError("config: scale \"" + s.name + "\" md_f must be positive");
    if (s.extent_width_m < 0.0 || s.extent_height_m < 0.0)
      throw ConfigError("config: scale \"" + s.name + "\" extent must be non-negative");
    for (const auto& [cat, w] : s.category_weight_overrides) {
      if (w < 0.0 || w > 1.0)
        throw ConfigError("config: scale \"" + s.name + "\" override \"" + cat +
                          "\" must be within [0,1]");
    }
  }

  std::set<std::string> context_names;
  for (const auto& c : cfg.contexts) {
    if (c.name.empty()) throw ConfigError("config: context with empty name");
    if (!context_names.insert(c.name).second)
      throw ConfigError("config: duplicate context name \"" + c.name + "\"");
    if (c.route_fraction < 0.0 || c.route_fraction > 1.0)
      throw ConfigError("config: context \"" + c.name + "\" route_fraction must be within [0,1]");
    if (find_scale(cfg, c.scale_name) == nullptr)
      throw ConfigError("config: context \"" + c.name + "\" references unknown scale \"" +
                        c.scale_name + "\"");
  }
}

const FunctionalScale* find_scale(const PipelineConfig& cfg, const std::string& name) {
  for (const auto& s : cfg.scales) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

OJson config_to_json(const PipelineConfig& cfg) {
  OJson j;
  j["data"] = std::filesystem::absolute(cfg.data_path).lexically_normal().string();
  j["tag_rules"] = std::filesystem::absolute(cfg.rules_path).lexically_normal().string();
  j["output_dir"] = std::filesystem::absolute(cfg.output_dir).lexically_normal().string();
  if (cfg.route_file)
    j["route_file"] = std::filesystem::absolute(*cfg.route_file).lexically_normal().string();
  if (cfg.has_route_endpoints) {
    j["route"]["from"] = OJson::array({cfg.route_from.lon, cfg.route_from.lat});
    j["route"]["to"] = OJson::array({cfg.route_to.lon, cfg.route_to.lat});
  }
  j["weights"]["category"] = cfg.weights.category;
  j["weights"]["relation"] = cfg.weights.relation;
  j["weights"]["uniqueness"] = cfg.weights.uniqueness;
  j["weights"]["distance"] = cfg.weights.distance;
  j["weights"]["direction"] = cfg.weights.direction;
  j["weights"]["connection"] = cfg.weights.connection;
  j["weights"]["coverage"] = cfg.weights.coverage;
  j["extended_metrics"]["connection"] = cfg.extended.connection;
  j["extended_metrics"]["coverage"] = cfg.extended.coverage;
  j["extended_metrics"]["snap_tolerance_m"] = cfg.extended.snap_tolerance_m;
  j["premerge"] = cfg.premerge;
  j["turn_threshold_deg"] = cfg.turn_threshold_deg;
  j["ref_len_m"] = cfg.ref_len_m;
  j["direction_sectors"]["front_max_deg"] = cfg.sectors.front_max_deg;
  j["direction_sectors"]["back_min_deg"] = cfg.sectors.back_min_deg;

  j["scales"] = OJson::array();
  for (const auto& s : cfg.scales) {
    OJson sj;
    sj["name"] = s.name;
    sj["md_f"] = s.md_f;
    if (s.netselect.depth_n) sj["depth"] = *s.netselect.depth_n;
    if (s.netselect.skeleton_w) sj["skeleton_w"] = *s.netselect.skeleton_w;
    if (s.netselect.use_weighted_depth) sj["use_weighted_depth"] = true;
    if (s.netselect.weighted_depth_endpoint_only) sj["weighted_depth_endpoint_only"] = true;
    if (s.extent_width_m > 0.0 || s.extent_height_m > 0.0)
      sj["extent"] = OJson::array({s.extent_width_m, s.extent_height_m});
    if (!s.category_weight_overrides.empty()) {
      OJson ov;
      for (const auto& [cat, w] : s.category_weight_overrides) ov[cat] = w;
      sj["category_weight_overrides"] = std::move(ov);
    }
    j["scales"].push_back(std::move(sj));
  }

  j["contexts"] = OJson::array();
  for (const auto& c : cfg.contexts) {
    OJson cj;
    cj["name"] = c.name;
    cj["route_fraction"] = c.route_fraction;
    cj["scale"] = c.scale_name;
    j["contexts"].push_back(std::move(cj));
  }
  return j;
}

}  // namespace orientsel
