#pragma once

#include <optional>

#include "orientsel/feature.hpp"
#include "orientsel/network_select.hpp"
#include "orientsel/route_analysis.hpp"

namespace orientsel {

// Contextual scale level. md_f bounds the buffer; the extent rectangle feeds
// the coverage metric and defaults to a square of side 2*md_f.
struct FunctionalScale {
  std::string name;
  double md_f = 0.0;
  std::map<std::string, double> category_weight_overrides;  // "key=value" or bare key
  NetworkSelectParams netselect;
  double extent_width_m = 0.0;
  double extent_height_m = 0.0;

  double extent_width() const { return extent_width_m > 0.0 ? extent_width_m : 2.0 * md_f; }
  double extent_height() const { return extent_height_m > 0.0 ? extent_height_m : 2.0 * md_f; }
};

struct MetricWeights {
  double category = 0.2;
  double relation = 0.2;
  double uniqueness = 0.2;
  double distance = 0.2;
  double direction = 0.2;
  double connection = 0.2;  // only enters the sum when the extension is on
  double coverage = 0.2;

  // The five core weights must be positive and sum to 1 within 1e-9;
  // extension weights must be positive. Throws ConfigError.
  void validate(bool connection_enabled = false, bool coverage_enabled = false) const;
};

struct ExtendedOptions {
  bool connection = false;
  bool coverage = false;
  double snap_tolerance_m = 5.0;
};

struct DirectionSectors {
  double front_max_deg = 45.0;
  double back_min_deg = 135.0;
};

struct Context {
  std::string name;
  double route_arc = 0.0;
  Vec2 location;
  double travel_bearing = 0.0;
  FunctionalScale scale;
};

Context context_at_fraction(const Route& route, double fraction, const FunctionalScale& scale,
                            const std::string& name = "");

struct SalienceBreakdown {
  double buffer = 0.0;      // gate, 0 or 1
  double category = 0.0;    // [0,1]
  double relation = 0.0;    // 0.5 or 1
  double uniqueness = 0.0;  // (0,1]
  double distance = 0.0;    // [0,1]
  double direction = 0.0;   // 0.1, 0.5 or 1
  std::optional<double> connection;
  std::optional<double> coverage;
  double dist_to_route = 0.0;
  double dist_to_location = 0.0;
  double total = 0.0;
};

double metric_buffer(const PlanarGeometry& cand, Vec2 location, double md_f);
double metric_category(const FeatureCandidate& cand, const FunctionalScale& scale);

// 1 when the candidate's nearest route point falls on any decision point's
// reference segment (ends inclusive), else 0.5.
double metric_relation(double nearest_arc, const std::vector<DecisionPoint>& decision_points);

double metric_uniqueness(const std::string& category,
                         const std::vector<const FeatureCandidate*>& population);

double metric_distance(double dist_to_route, double md_f);

double metric_direction(const PlanarGeometry& cand, Vec2 location, double travel_bearing,
                        const DirectionSectors& sectors = {});

// 1.0 within snap tolerance of a route edge, 0.5 within tolerance of an edge
// reachable from the route, 0.0 otherwise. edge_depths comes from
// compute_depths on the same graph and route.
double metric_connection(const PlanarGeometry& cand, const StreetGraph& g, const Route& route,
                         const std::vector<int>& edge_depths, double snap_tolerance_m);

// Fraction of the extent the region overlaps; a region covering 95% or more
// scores 0.
double metric_coverage(const PlanarGeometry& cand, const Rect& extent);

struct SalienceInputs {
  const StreetGraph* graph = nullptr;
  const Route* route = nullptr;
  const std::vector<DecisionPoint>* decision_points = nullptr;
  const std::vector<const FeatureCandidate*>* population = nullptr;  // post-buffer set
  const std::vector<int>* edge_depths = nullptr;  // needed for the connection metric
  MetricWeights weights;
  ExtendedOptions extended;
  DirectionSectors sectors;
};

SalienceBreakdown overall_salience(const FeatureCandidate& cand, const Context& ctx,
                                   const SalienceInputs& in);

struct RankedCandidate {
  FeatureCandidate candidate;
  SalienceBreakdown breakdown;
  int rank = 0;
};

// Scores the buffered subset of candidates and returns the top k, ordered by
// salience descending (ties: nearer to the route, then smaller id).
// Zero-salience candidates never appear.
std::vector<RankedCandidate> rank_candidates(const std::vector<FeatureCandidate>& candidates,
                                             const Context& ctx, const SalienceInputs& inputs,
                                             std::size_t k);

}  // namespace orientsel
