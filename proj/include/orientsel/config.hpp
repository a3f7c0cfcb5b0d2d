#pragma once

#include <filesystem>
#include <optional>

#include "orientsel/geojson.hpp"
#include "orientsel/salience.hpp"

namespace orientsel {

struct ContextSpec {
  std::string name;
  double route_fraction = 0.0;
  std::string scale_name;
};

struct PipelineConfig {
  std::filesystem::path data_path;
  std::filesystem::path rules_path;
  std::filesystem::path output_dir = "out";
  std::optional<std::filesystem::path> route_file;
  GeoPoint route_from;
  GeoPoint route_to;
  bool has_route_endpoints = false;
  MetricWeights weights;
  ExtendedOptions extended;
  bool premerge = false;
  double turn_threshold_deg = 30.0;
  double ref_len_m = 50.0;
  DirectionSectors sectors;
  std::vector<FunctionalScale> scales;
  std::vector<ContextSpec> contexts;
};

// Reads a config document, resolving relative paths against the config
// file's directory. A run manifest (object with "effective_config") is
// accepted as well, so a finished run can be replayed from its manifest.
PipelineConfig load_config(const std::filesystem::path& path);
PipelineConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);

// Structural checks beyond parsing: weight validity, scale references,
// fraction ranges. Throws ConfigError.
void validate_config(const PipelineConfig& cfg);

// Effective configuration with absolute paths, as embedded in the manifest.
OJson config_to_json(const PipelineConfig& cfg);

const FunctionalScale* find_scale(const PipelineConfig& cfg, const std::string& name);

// The built-in scale ladder used when a config does not define its own.
std::vector<FunctionalScale> default_scales();

}  // namespace orientsel
