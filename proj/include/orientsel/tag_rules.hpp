#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "orientsel/feature.hpp"

namespace orientsel {

// One row of the declarative candidate-selection table. Rules are evaluated
// in list order; the first match wins.
struct TagRule {
  std::string key;
  std::string value_pattern;  // exact value or "*"
  std::string requirement;    // terms joined by "OR" or ","; empty or "-" means none
  std::vector<FeatureType> types;
  double weight = 0.0;
  std::string description;
};

// Loads rules from a JSON file {"rules": [{key, value, requirement, types,
// weight, description}]}. Throws ConfigError on malformed entries.
std::vector<TagRule> load_tag_rules(const std::filesystem::path& path);
std::vector<TagRule> parse_tag_rules(const std::string& json_text);

// Requirement grammar: "name" (key present), "admin_level=*" (key present),
// "bridge=yes" (exact value); terms combine disjunctively.
bool requirement_satisfied(const std::string& requirement,
                           const std::map<std::string, std::string>& tags);

bool rule_matches(const TagRule& rule, const std::map<std::string, std::string>& tags);

// Picks the concrete feature type for a matched rule: point geometry takes
// PL, linestrings LL, polygons the rule's areal or region type. Returns
// nothing when the geometry fits none of the rule's types.
std::optional<FeatureType> resolve_feature_type(const TagRule& rule, GeomKind kind);

std::vector<FeatureCandidate> apply_tag_rules(const std::vector<RawFeature>& features,
                                              const std::vector<TagRule>& rules,
                                              std::vector<std::string>* warnings = nullptr);

// Optional cleanup pass for fragmented source data: unions polygon candidates
// that share category and name; each resulting polygon becomes one candidate
// carrying the smallest member id.
std::vector<FeatureCandidate> premerge_candidates(const std::vector<FeatureCandidate>& candidates);

}  // namespace orientsel
