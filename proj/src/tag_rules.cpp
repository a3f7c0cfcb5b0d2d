#include "orientsel/tag_rules.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "orientsel/errors.hpp"
#include "orientsel/log.hpp"

namespace orientsel {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_terms(const std::string& requirement) {
  // Disjunction terms, separated by commas or the word OR.
  std::vector<std::string> terms;
  std::string cur;
  std::size_t i = 0;
  while (i < requirement.size()) {
    if (requirement[i] == ',') {
      terms.push_back(cur);
      cur.clear();
      ++i;
    } else if (requirement.compare(i, 4, " OR ") == 0) {
      terms.push_back(cur);
      cur.clear();
      i += 4;
    } else {
      cur += requirement[i];
      ++i;
    }
  }
  terms.push_back(cur);
  std::vector<std::string> out;
  for (auto& t : terms) {
    auto trimmed = trim(t);
    if (!trimmed.empty()) out.push_back(std::move(trimmed));
  }
  return out;
}

bool term_satisfied(const std::string& term, const std::map<std::string, std::string>& tags) {
  const std::size_t eq = term.find('=');
  if (eq == std::string::npos) return tags.count(trim(term)) > 0;
  const std::string key = trim(term.substr(0, eq));
  const std::string value = trim(term.substr(eq + 1));
  const auto it = tags.find(key);
  if (it == tags.end()) return false;
  return value == "*" || it->second == value;
}

}  // namespace

bool requirement_satisfied(const std::string& requirement,
                           const std::map<std::string, std::string>& tags) {
  const std::string req = trim(requirement);
  if (req.empty() || req == "-") return true;
  for (const auto& term : split_terms(req)) {
    if (term_satisfied(term, tags)) return true;
  }
  return false;
}

bool rule_matches(const TagRule& rule, const std::map<std::string, std::string>& tags) {
  const auto it = tags.find(rule.key);
  if (it == tags.end()) return false;
  if (rule.value_pattern != "*" && it->second != rule.value_pattern) return false;
  return requirement_satisfied(rule.requirement, tags);
}

std::optional<FeatureType> resolve_feature_type(const TagRule& rule, GeomKind kind) {
  for (const FeatureType t : rule.types) {
    switch (kind) {
      case GeomKind::Point:
        if (t == FeatureType::PL) return t;
        break;
      case GeomKind::LineString:
        if (t == FeatureType::LL) return t;
        break;
      case GeomKind::Polygon:
        if (t == FeatureType::AL || t == FeatureType::AR || t == FeatureType::ER) return t;
        break;
    }
  }
  return std::nullopt;
}

std::vector<FeatureCandidate> apply_tag_rules(const std::vector<RawFeature>& features,
                                              const std::vector<TagRule>& rules,
                                              std::vector<std::string>* warnings) {
  std::vector<FeatureCandidate> out;
  const auto warn = [&](const std::string& msg) {
    if (warnings) warnings->push_back(msg);
    log_warn(msg);
  };

  for (const auto& f : features) {
    const TagRule* matched = nullptr;
    for (const auto& rule : rules) {
      if (rule_matches(rule, f.tags)) {
        matched = &rule;
        break;
      }
    }
    if (matched == nullptr) continue;

    const auto type = resolve_feature_type(*matched, f.geometry.kind);
    if (!type) {
      warn("feature " + f.id + " matches rule '" + matched->key + "=" + matched->value_pattern +
           "' but its geometry fits none of the rule's types; dropped");
      continue;
    }

    FeatureCandidate c;
    c.id = f.id;
    c.type = *type;
    c.category = matched->key + "=" + f.tags.at(matched->key);
    c.category_weight = matched->weight;
    const auto name = f.tags.find("name");
    if (name != f.tags.end()) c.name = name->second;
    c.geometry_wgs = f.geometry;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<TagRule> parse_tag_rules(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("tag rules: invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rules") || !doc["rules"].is_array())
    throw ConfigError("tag rules: expected top-level object with a \"rules\" array");

  std::vector<TagRule> rules;
  std::size_t idx = 0;
  for (const auto& entry : doc["rules"]) {
    ++idx;
    const std::string where = "tag rules: rule #" + std::to_string(idx);
    if (!entry.is_object()) throw ConfigError(where + " is not an object");
    TagRule r;
    r.key = entry.value("key", "");
    r.value_pattern = entry.value("value", "");
    r.requirement = entry.value("requirement", "");
    r.description = entry.value("description", "");
    if (r.key.empty()) throw ConfigError(where + ": missing \"key\"");
    if (r.value_pattern.empty()) throw ConfigError(where + ": missing \"value\"");
    if (!entry.contains("weight") || !entry["weight"].is_number())
      throw ConfigError(where + ": missing numeric \"weight\"");
    r.weight = entry["weight"].get<double>();
    if (r.weight < 0.0 || r.weight > 1.0)
      throw ConfigError(where + ": weight must be within [0,1]");
    const std::string types = entry.value("types", "");
    for (const auto& t : split_terms(types)) {
      const auto ft = feature_type_from(t);
      if (!ft) throw ConfigError(where + ": unknown feature type \"" + t + "\"");
      r.types.push_back(*ft);
    }
    if (r.types.empty()) throw ConfigError(where + ": missing \"types\"");
    rules.push_back(std::move(r));
  }
  if (rules.empty()) throw ConfigError("tag rules: rule list is empty");
  return rules;
}

std::vector<TagRule> load_tag_rules(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open tag rules file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tag_rules(buf.str());
}

}  // namespace orientsel
