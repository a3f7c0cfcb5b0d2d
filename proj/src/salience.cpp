#include "orientsel/salience.hpp"

#include <algorithm>
#include <cmath>

#include "orientsel/errors.hpp"

namespace orientsel {

void MetricWeights::validate(bool connection_enabled, bool coverage_enabled) const {
  const double core[] = {category, relation, uniqueness, distance, direction};
  const char* names[] = {"category", "relation", "uniqueness", "distance", "direction"};
  double sum = 0.0;
  for (int i = 0; i < 5; ++i) {
    if (!(core[i] > 0.0))
      throw ConfigError(std::string("metric weight '") + names[i] + "' must be positive");
    sum += core[i];
  }
  if (std::fabs(sum - 1.0) > 1e-9)
    throw ConfigError("the five core metric weights must sum to 1 (got " + std::to_string(sum) +
                      ")");
  if (connection_enabled && !(connection > 0.0))
    throw ConfigError("metric weight 'connection' must be positive when the metric is enabled");
  if (coverage_enabled && !(coverage > 0.0))
    throw ConfigError("metric weight 'coverage' must be positive when the metric is enabled");
}

Context context_at_fraction(const Route& route, double fraction, const FunctionalScale& scale,
                            const std::string& name) {
  Context ctx;
  ctx.name = name;
  ctx.route_arc = fraction * route.geom_length();
  ctx.location = route.point_at(ctx.route_arc);
  ctx.travel_bearing = route.bearing_at(ctx.route_arc);
  ctx.scale = scale;
  return ctx;
}

double metric_buffer(const PlanarGeometry& cand, Vec2 location, double md_f) {
  return dist_point_geometry(location, cand) <= md_f ? 1.0 : 0.0;
}

double metric_category(const FeatureCandidate& cand, const FunctionalScale& scale) {
  auto it = scale.category_weight_overrides.find(cand.category);
  if (it != scale.category_weight_overrides.end()) return it->second;
  const std::size_t eq = cand.category.find('=');
  if (eq != std::string::npos) {
    it = scale.category_weight_overrides.find(cand.category.substr(0, eq));
    if (it != scale.category_weight_overrides.end()) return it->second;
  }
  return cand.category_weight;
}

double metric_relation(double nearest_arc, const std::vector<DecisionPoint>& decision_points) {
  for (const auto& dp : decision_points) {
    if (nearest_arc >= dp.ref_arc_start && nearest_arc <= dp.ref_arc_end) return 1.0;
  }
  return 0.5;
}

double metric_uniqueness(const std::string& category,
                         const std::vector<const FeatureCandidate*>& population) {
  std::size_t n = 0;
  for (const auto* c : population) {
    if (c->category == category) ++n;
  }
  return 1.0 / static_cast<double>(std::max<std::size_t>(n, 1));
}

double metric_distance(double dist_to_route, double md_f) {
  return std::clamp(1.0 - dist_to_route / md_f, 0.0, 1.0);
}

double metric_direction(const PlanarGeometry& cand, Vec2 location, double travel_bearing,
                        const DirectionSectors& sectors) {
  const NearestPoint np = nearest_point_on_geometry(location, cand);
  if (np.dist <= 0.0) return 1.0;  // on top of the location counts as front
  const double theta = angle_diff_deg(travel_bearing, bearing_deg(location, np.point));
  if (theta <= sectors.front_max_deg) return 1.0;
  if (theta >= sectors.back_min_deg) return 0.1;
  return 0.5;
}

double metric_connection(const PlanarGeometry& cand, const StreetGraph& g, const Route& route,
                         const std::vector<int>& edge_depths, double snap_tolerance_m) {
  bool reachable_hit = false;
  for (const auto& e : g.edges) {
    const double d = dist_polyline_geometry(std::span<const Vec2>(e.geometry), cand);
    if (d > snap_tolerance_m) continue;
    if (route.is_route_edge(e.id)) return 1.0;
    if (edge_depths[e.id] != kDepthUnreachable) reachable_hit = true;
  }
  return reachable_hit ? 0.5 : 0.0;
}

double metric_coverage(const PlanarGeometry& cand, const Rect& extent) {
  if (cand.kind != GeomKind::Polygon || cand.pts.size() < 4) return 0.0;
  const double extent_area = extent.area();
  if (extent_area <= 0.0) return 0.0;
  const auto clipped = clip_ring_to_rect(std::span<const Vec2>(cand.pts), extent);
  if (clipped.empty()) return 0.0;
  const double fraction = ring_area(std::span<const Vec2>(clipped)) / extent_area;
  return fraction >= 0.95 ? 0.0 : fraction;
}

SalienceBreakdown overall_salience(const FeatureCandidate& cand, const Context& ctx,
                                   const SalienceInputs& in) {
  const double md = ctx.scale.md_f;
  SalienceBreakdown b;

  b.dist_to_location = dist_point_geometry(ctx.location, cand.geometry);
  b.buffer = b.dist_to_location <= md ? 1.0 : 0.0;
  b.category = metric_category(cand, ctx.scale);

  const NearestOnPolyline nr = in.route->locate_nearest(cand.geometry);
  b.dist_to_route = nr.dist;
  b.relation = metric_relation(nr.arc, *in.decision_points);

  static const std::vector<const FeatureCandidate*> empty_population;
  b.uniqueness =
      metric_uniqueness(cand.category, in.population ? *in.population : empty_population);
  b.distance = metric_distance(nr.dist, md);
  b.direction = metric_direction(cand.geometry, ctx.location, ctx.travel_bearing, in.sectors);

  const MetricWeights& w = in.weights;
  double sum = w.category * b.category + w.relation * b.relation + w.uniqueness * b.uniqueness +
               w.distance * b.distance + w.direction * b.direction;
  double denom = 1.0;

  if (in.extended.connection) {
    b.connection = metric_connection(cand.geometry, *in.graph, *in.route, *in.edge_depths,
                                     in.extended.snap_tolerance_m);
    sum += w.connection * *b.connection;
    denom += w.connection;
  }
  const bool region = cand.type == FeatureType::AR || cand.type == FeatureType::ER;
  if (in.extended.coverage && region) {
    const Rect extent =
        Rect::centered(ctx.location, ctx.scale.extent_width(), ctx.scale.extent_height());
    b.coverage = metric_coverage(cand.geometry, extent);
    sum += w.coverage * *b.coverage;
    denom += w.coverage;
  }

  // Without extensions the denominator stays 1 and the total is the plain
  // gated weighted sum.
  b.total = b.buffer * (denom == 1.0 ? sum : sum / denom);
  return b;
}

std::vector<RankedCandidate> rank_candidates(const std::vector<FeatureCandidate>& candidates,
                                             const Context& ctx, const SalienceInputs& inputs,
                                             std::size_t k) {
  std::vector<const FeatureCandidate*> population;
  for (const auto& c : candidates) {
    if (metric_buffer(c.geometry, ctx.location, ctx.scale.md_f) > 0.0) population.push_back(&c);
  }

  SalienceInputs in = inputs;
  in.population = &population;

  std::vector<RankedCandidate> ranked;
  for (const auto* c : population) {
    RankedCandidate rc;
    rc.candidate = *c;
    rc.breakdown = overall_salience(*c, ctx, in);
    if (rc.breakdown.total <= 0.0) continue;
    ranked.push_back(std::move(rc));
  }

  std::sort(ranked.begin(), ranked.end(), [](const RankedCandidate& x, const RankedCandidate& y) {
    if (x.breakdown.total != y.breakdown.total) return x.breakdown.total > y.breakdown.total;
    if (x.breakdown.dist_to_route != y.breakdown.dist_to_route)
      return x.breakdown.dist_to_route < y.breakdown.dist_to_route;
    return x.candidate.id < y.candidate.id;
  });

  if (ranked.size() > k) ranked.resize(k);
  for (std::size_t i = 0; i < ranked.size(); ++i) ranked[i].rank = static_cast<int>(i) + 1;
  return ranked;
}

}  // namespace orientsel
