#include "orientsel/pipeline.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "orientsel/errors.hpp"
#include "orientsel/log.hpp"
#include "orientsel/osm_parser.hpp"

namespace orientsel {

namespace {

template <typename F>
decltype(auto) stage(const char* name, F&& f) {
  try {
    return std::forward<F>(f)();
  } catch (const ConfigError&) {
    throw;
  } catch (const PipelineError&) {
    throw;
  } catch (const std::exception& e) {
    throw PipelineError(name, e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open data file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool looks_like_xml(const std::string& text) {
  for (const char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '<';
  }
  return false;
}

}  // namespace

Pipeline::Pipeline(PipelineConfig cfg) : cfg_(std::move(cfg)) {}

void Pipeline::load_data() {
  const std::string text = read_text_file(cfg_.data_path);
  if (looks_like_xml(text)) {
    ParsedOsm parsed = parse_osm(text);
    raw_features_ = std::move(parsed.features);
    graph_ways_ = std::move(parsed.graph_ways);
    node_locations_ = std::move(parsed.node_locations);
  } else {
    synthetic_ = std::make_unique<SyntheticData>(parse_synthetic(text));
    raw_features_ = synthetic_->features;
  }
}

void Pipeline::compute_route() {
  if (cfg_.route_file) {
    const nlohmann::json doc = read_json_file(*cfg_.route_file);
    const nlohmann::json* geom = &doc;
    if (doc.is_object() && doc.value("type", "") == "FeatureCollection") {
      if (!doc.contains("features") || doc["features"].empty())
        throw DataError("route file has no features");
      geom = &doc["features"][0]["geometry"];
    } else if (doc.is_object() && doc.value("type", "") == "Feature") {
      geom = &doc["geometry"];
    }
    const GeoGeometry line = geometry_from_geojson(*geom);
    if (line.kind != GeomKind::LineString)
      throw DataError("route file geometry must be a LineString");
    route_ = snap_route_linestring(graph_, proj_->to_local(std::span<const GeoPoint>(line.pts)));
    return;
  }

  const int s = graph_.nearest_vertex(proj_->to_local(cfg_.route_from));
  const int t = graph_.nearest_vertex(proj_->to_local(cfg_.route_to));
  route_ = shortest_route(graph_, s, t);
}

void Pipeline::prepare() {
  if (prepared_) return;

  stage("parse", [&] { load_data(); });

  // Planar frame centered between the route endpoints; with an external
  // route file its own endpoints define the frame.
  GeoPoint a = cfg_.route_from;
  GeoPoint b = cfg_.route_to;
  if (cfg_.route_file) {
    const nlohmann::json doc = stage("parse", [&] { return read_json_file(*cfg_.route_file); });
    const nlohmann::json* geom = &doc;
    if (doc.is_object() && doc.value("type", "") == "FeatureCollection" &&
        doc.contains("features") && !doc["features"].empty())
      geom = &doc["features"][0]["geometry"];
    else if (doc.is_object() && doc.value("type", "") == "Feature")
      geom = &doc["geometry"];
    const GeoGeometry line = stage("parse", [&] { return geometry_from_geojson(*geom); });
    if (!line.pts.empty()) {
      a = line.pts.front();
      b = line.pts.back();
    }
  }
  proj_ = std::make_unique<Projection>(GeoPoint{(a.lon + b.lon) / 2.0, (a.lat + b.lat) / 2.0});

  stage("graph", [&] {
    graph_ = synthetic_ ? build_graph(*synthetic_, *proj_)
                        : build_graph(graph_ways_, node_locations_, *proj_);
  });

  stage("route", [&] { compute_route(); });
  edge_depths_ = compute_depths(graph_, route_);

  stage("analyze", [&] {
    RouteAnalysisParams params;
    params.turn_threshold_deg = cfg_.turn_threshold_deg;
    params.ref_len_m = cfg_.ref_len_m;
    dps_ = classify_decision_points(graph_, route_, params);
  });

  stage("candidates", [&] {
    const auto rules = load_tag_rules(cfg_.rules_path);
    candidates_ = apply_tag_rules(raw_features_, rules);
    if (cfg_.premerge) candidates_ = premerge_candidates(candidates_);
    for (auto& c : candidates_) {
      c.geometry = project(*proj_, c.geometry_wgs);
    }
  });

  prepared_ = true;
}

Context Pipeline::make_context(const ContextSpec& spec) const {
  const FunctionalScale* scale = find_scale(cfg_, spec.scale_name);
  if (scale == nullptr)
    throw ConfigError("context \"" + spec.name + "\" references unknown scale \"" +
                      spec.scale_name + "\"");
  return context_at_fraction(route_, spec.route_fraction, *scale, spec.name);
}

ContextResult Pipeline::evaluate_context(const ContextSpec& spec) const {
  ContextResult res;
  res.name = spec.name;
  res.context = make_context(spec);

  res.network = select_network(graph_, route_, res.context.location, res.context.scale.md_f,
                               res.context.scale.netselect);

  SalienceInputs inputs;
  inputs.graph = &graph_;
  inputs.route = &route_;
  inputs.decision_points = &dps_;
  inputs.edge_depths = &edge_depths_;
  inputs.weights = cfg_.weights;
  inputs.extended = cfg_.extended;
  inputs.sectors = cfg_.sectors;

  res.ranked = rank_candidates(candidates_, res.context, inputs, candidates_.size());
  return res;
}

OJson Pipeline::route_geojson() const {
  OJson props;
  props["length_m"] = route_.length();
  props["edge_count"] = route_.edge_ids.size();
  if (!route_.vertex_ids.empty()) {
    props["start_vertex"] = graph_.vertices[route_.vertex_ids.front()].id;
    props["end_vertex"] = graph_.vertices[route_.vertex_ids.back()].id;
  }
  GeoGeometry geom = route_.geometry_wgs.size() >= 2
                         ? GeoGeometry::line(route_.geometry_wgs)
                         : GeoGeometry::point(route_.geometry_wgs.empty() ? GeoPoint{}
                                                                          : route_.geometry_wgs[0]);
  return feature_collection({geojson_feature(geometry_to_geojson(geom), std::move(props))});
}

OJson Pipeline::decision_points_geojson() const {
  std::vector<OJson> features;
  for (const auto& dp : dps_) {
    OJson props;
    props["vertex"] = graph_.vertices[dp.vertex].id;
    props["dp_class"] = dp.dp_class;
    props["deflection_deg"] = dp.deflection;
    props["route_dist_m"] = dp.route_dist;
    features.push_back(geojson_feature(
        geometry_to_geojson(GeoGeometry::point(graph_.vertices[dp.vertex].wgs)), std::move(props)));
  }
  return feature_collection(std::move(features));
}

OJson Pipeline::network_geojson(const NetworkSelection& sel) const {
  std::vector<OJson> features;
  for (const int eid : sel.edges) {
    const GraphEdge& e = graph_.edges[eid];
    const EdgeAnnotation& a = sel.annotations.at(eid);
    OJson props;
    props["edge"] = eid;
    props["source_id"] = e.source_id;
    props["type"] = e.type;
    if (a.depth != kDepthUnreachable) props["depth"] = a.depth;
    if (a.weighted_depth != kDepthUnreachable) props["weighted_depth"] = a.weighted_depth;
    props["in_skeleton"] = a.in_skeleton;
    props["in_buffer"] = a.in_buffer;
    props["on_route"] = a.on_route;
    features.push_back(
        geojson_feature(geometry_to_geojson(GeoGeometry::line(e.geometry_wgs)), std::move(props)));
  }
  return feature_collection(std::move(features));
}

OJson Pipeline::candidates_geojson(const std::vector<RankedCandidate>& ranked) const {
  std::vector<OJson> features;
  for (const auto& rc : ranked) {
    OJson props;
    props["rank"] = rc.rank;
    props["id"] = rc.candidate.id;
    props["category"] = rc.candidate.category;
    props["feature_type"] = feature_type_name(rc.candidate.type);
    if (!rc.candidate.name.empty()) props["name"] = rc.candidate.name;
    props["S_f"] = rc.breakdown.total;
    props["B_f"] = rc.breakdown.buffer;
    props["S_c"] = rc.breakdown.category;
    props["R"] = rc.breakdown.relation;
    props["U_c"] = rc.breakdown.uniqueness;
    props["D_f"] = rc.breakdown.distance;
    props["O"] = rc.breakdown.direction;
    if (rc.breakdown.connection) props["connection"] = *rc.breakdown.connection;
    if (rc.breakdown.coverage) props["coverage"] = *rc.breakdown.coverage;
    props["dist_to_route_m"] = rc.breakdown.dist_to_route;
    features.push_back(geojson_feature(geometry_to_geojson(rc.candidate.geometry_wgs), std::move(props)));
  }
  return feature_collection(std::move(features));
}

RunSummary Pipeline::run() {
  prepare();

  RunSummary summary;
  const std::filesystem::path out_dir = cfg_.output_dir;
  std::filesystem::create_directories(out_dir);

  OJson manifest;
  manifest["effective_config"] = config_to_json(cfg_);
  manifest["contexts"] = OJson::array();

  for (const auto& spec : cfg_.contexts) {
    OJson entry;
    entry["name"] = spec.name;
    try {
      const ContextResult res = evaluate_context(spec);
      const std::filesystem::path ctx_dir = out_dir / spec.name;
      write_json_file(ctx_dir / "route.geojson", route_geojson());
      write_json_file(ctx_dir / "decision_points.geojson", decision_points_geojson());
      write_json_file(ctx_dir / "network.geojson", network_geojson(res.network));
      write_json_file(ctx_dir / "candidates_ranked.geojson", candidates_geojson(res.ranked));
      entry["status"] = "ok";
      entry["scale"] = spec.scale_name;
      entry["route_fraction"] = spec.route_fraction;
      entry["network_edges"] = res.network.edges.size();
      entry["ranked_candidates"] = res.ranked.size();
      entry["decision_points"] = dps_.size();
      ++summary.contexts_ok;
    } catch (const std::exception& e) {
      log_error("context '" + spec.name + "' failed: " + e.what());
      entry["status"] = "error";
      entry["error"] = e.what();
      ++summary.contexts_failed;
    }
    manifest["contexts"].push_back(std::move(entry));
  }

  summary.manifest_path = out_dir / "manifest.json";
  write_json_file(summary.manifest_path, manifest);
  return summary;
}

}  // namespace orientsel
