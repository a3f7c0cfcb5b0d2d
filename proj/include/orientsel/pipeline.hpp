#pragma once

#include <memory>

#include "orientsel/config.hpp"
#include "orientsel/osm_parser.hpp"
#include "orientsel/synthetic.hpp"
#include "orientsel/tag_rules.hpp"

namespace orientsel {

struct ContextResult {
  std::string name;
  Context context;
  NetworkSelection network;
  std::vector<RankedCandidate> ranked;
};

struct RunSummary {
  std::filesystem::path manifest_path;
  int contexts_ok = 0;
  int contexts_failed = 0;
};

// End-to-end orchestration: load data, build the graph, compute the route,
// analyze it, then evaluate each configured context and write its GeoJSON
// bundle. Failures are wrapped with the stage name; a failing context does
// not stop the remaining ones.
class Pipeline {
 public:
  explicit Pipeline(PipelineConfig cfg);

  void prepare();

  const PipelineConfig& config() const { return cfg_; }
  const Projection& projection() const { return *proj_; }
  const StreetGraph& graph() const { return graph_; }
  const Route& route() const { return route_; }
  const std::vector<DecisionPoint>& decision_points() const { return dps_; }
  const std::vector<FeatureCandidate>& candidates() const { return candidates_; }

  Context make_context(const ContextSpec& spec) const;
  ContextResult evaluate_context(const ContextSpec& spec) const;

  RunSummary run();

  // GeoJSON builders, exposed for tests and the CLI.
  OJson route_geojson() const;
  OJson decision_points_geojson() const;
  OJson network_geojson(const NetworkSelection& sel) const;
  OJson candidates_geojson(const std::vector<RankedCandidate>& ranked) const;

 private:
  void load_data();
  void compute_route();

  PipelineConfig cfg_;
  std::unique_ptr<Projection> proj_;
  std::vector<RawFeature> raw_features_;
  std::vector<GraphWay> graph_ways_;          // street data path
  std::map<long long, GeoPoint> node_locations_;
  std::unique_ptr<SyntheticData> synthetic_;  // synthetic path
  StreetGraph graph_;
  Route route_;
  std::vector<DecisionPoint> dps_;
  std::vector<FeatureCandidate> candidates_;
  std::vector<int> edge_depths_;
  bool prepared_ = false;
};

}  // namespace orientsel
