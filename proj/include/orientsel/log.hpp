#pragma once

#include <sstream>
#include <string>

namespace orientsel {

enum class LogLevel { Debug = 0, Info = 1, Warn = 2, Error = 3, None = 4 };

// Active level, read once from the ORIENT_SELECT_LOG environment variable
// (debug|info|warn|error|none). Defaults to warn.
LogLevel log_level();
void set_log_level(LogLevel level);

void log_msg(LogLevel level, const std::string& msg);

inline void log_debug(const std::string& msg) { log_msg(LogLevel::Debug, msg); }
inline void log_info(const std::string& msg) { log_msg(LogLevel::Info, msg); }
inline void log_warn(const std::string& msg) { log_msg(LogLevel::Warn, msg); }
inline void log_error(const std::string& msg) { log_msg(LogLevel::Error, msg); }

}  // namespace orientsel
