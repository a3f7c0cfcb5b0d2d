#include <map>
#include <set>
#include <utility>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include "orientsel/tag_rules.hpp"

namespace orientsel {

namespace {

namespace bg = boost::geometry;
using BgPoint = bg::model::d2::point_xy<double>;
using BgPolygon = bg::model::polygon<BgPoint>;
using BgMulti = bg::model::multi_polygon<BgPolygon>;

BgPolygon to_bg(const GeoGeometry& g) {
  BgPolygon poly;
  for (const auto& p : g.pts) bg::append(poly.outer(), BgPoint(p.lon, p.lat));
  bg::correct(poly);
  return poly;
}

GeoGeometry from_bg(const BgPolygon& poly) {
  std::vector<GeoPoint> ring;
  ring.reserve(poly.outer().size());
  for (const auto& p : poly.outer()) ring.push_back({bg::get<0>(p), bg::get<1>(p)});
  return GeoGeometry::polygon(std::move(ring));
}

}  // namespace

std::vector<FeatureCandidate> premerge_candidates(const std::vector<FeatureCandidate>& candidates) {
  std::map<std::pair<std::string, std::string>, std::vector<const FeatureCandidate*>> groups;
  std::vector<FeatureCandidate> out;
  std::set<std::string> used_ids;
  for (const auto& c : candidates) {
    if (c.geometry_wgs.kind == GeomKind::Polygon && c.geometry_wgs.pts.size() >= 4) {
      groups[{c.category, c.name}].push_back(&c);
    } else {
      used_ids.insert(c.id);
      out.push_back(c);
    }
  }

  for (const auto& [key, members] : groups) {
    if (members.size() == 1) {
      used_ids.insert(members[0]->id);
      out.push_back(*members[0]);
      continue;
    }

    BgMulti merged;
    for (const auto* m : members) {
      BgMulti next;
      bg::union_(merged, to_bg(m->geometry_wgs), next);
      merged = std::move(next);
    }

    for (const auto& poly : merged) {
      // The merged piece inherits the smallest member id it overlaps, which
      // keeps ids stable across runs.
      std::string id;
      for (const auto* m : members) {
        if (bg::intersects(poly, to_bg(m->geometry_wgs))) {
          if (id.empty() || m->id < id) id = m->id;
        }
      }
      if (id.empty()) id = members.front()->id;
      std::string unique = id;
      for (int n = 2; used_ids.count(unique) > 0; ++n) unique = id + "+" + std::to_string(n);
      used_ids.insert(unique);

      FeatureCandidate c = *members.front();
      c.id = unique;
      c.geometry_wgs = from_bg(poly);
      c.geometry = {};
      out.push_back(std::move(c));
    }
  }

  return out;
}

}  // namespace orientsel
