#ifndef SPARSH_LOG_HPP
#define SPARSH_LOG_HPP

/**
 * \file log.hpp
 * \brief Minimal stderr logging gated by the SPARSH_LOG environment
 *        variable (quiet, info, debug; default info).
 */

#include <cstdlib>
#include <iostream>
#include <string>

namespace sparsh {

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

inline LogLevel log_level_from_env() {
    const char *v = std::getenv("SPARSH_LOG");
    if (!v) return LogLevel::info;
    const std::string s(v);
    if (s == "quiet") return LogLevel::quiet;
    if (s == "debug") return LogLevel::debug;
    return LogLevel::info;
}

/// Process-wide level; mutable so tests and the CLI can override.
inline LogLevel &log_level() {
    static LogLevel level = log_level_from_env();
    return level;
}

inline void log_info(const std::string &msg) {
    if (static_cast<int>(log_level()) >= static_cast<int>(LogLevel::info))
        std::cerr << msg << '\n';
}

inline void log_debug(const std::string &msg) {
    if (static_cast<int>(log_level()) >= static_cast<int>(LogLevel::debug))
        std::cerr << "[debug] " << msg << '\n';
}

} // namespace sparsh

#endif
