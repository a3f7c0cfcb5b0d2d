#include "orientsel/log.hpp"

#include <cstdlib>
#include <iostream>

namespace orientsel {

namespace {

LogLevel parse_level(const char* value) {
  if (!value) return LogLevel::Warn;
  std::string v(value);
  if (v == "debug") return LogLevel::Debug;
  if (v == "info") return LogLevel::Info;
  if (v == "warn" || v == "warning") return LogLevel::Warn;
  if (v == "error") return LogLevel::Error;
  if (v == "none" || v == "off") return LogLevel::None;
  return LogLevel::Warn;
}

LogLevel& level_ref() {
  static LogLevel level = parse_level(std::getenv("ORIENT_SELECT_LOG"));
  return level;
}

const char* level_tag(LogLevel level) {
  switch (level) {
    case LogLevel::Debug: return "debug";
    case LogLevel::Info: return "info";
    case LogLevel::Warn: return "warn";
    case LogLevel::Error: return "error";
    default: return "?";
  }
}

}  // namespace

LogLevel log_level() { return level_ref(); }

void set_log_level(LogLevel level) { level_ref() = level; }

void log_msg(LogLevel level, const std::string& msg) {
  if (level < level_ref() || level == LogLevel::None) return;
  std::cerr << "[" << level_tag(level) << "] " << msg << "\n";
}

}  // namespace orientsel
