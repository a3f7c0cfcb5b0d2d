#pragma once

#include <stdexcept>
#include <string>

namespace orientsel {

// Invalid configuration (bad weights, unknown scale, malformed config file).
// The CLI maps this to exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid or unusable input data. The CLI maps this to exit code 2.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OsmParseError : DataError {
  int line;
  OsmParseError(const std::string& msg, int line_no)
      : DataError("OSM XML parse error at line " + std::to_string(line_no) + ": " + msg),
        line(line_no) {}
};

struct EmptyGraphError : DataError {
  using DataError::DataError;
};

struct NoRouteError : DataError {
  using DataError::DataError;
};

// Wraps a failure with the name of the pipeline stage it occurred in.
struct PipelineError : DataError {
  std::string stage;
  PipelineError(const std::string& stage_name, const std::string& msg)
      : DataError("stage '" + stage_name + "': " + msg), stage(stage_name) {}
};

}  // namespace orientsel
