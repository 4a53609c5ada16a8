#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace peakspread {
namespace log {

enum class Level { kQuiet = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

// Verbosity comes from the PEAKSPREAD_LOG environment variable
// (quiet|warn|info|debug). Default is warn.
inline Level level() {
  static const Level cached = [] {
    const char* env = std::getenv("PEAKSPREAD_LOG");
    if (env == nullptr) return Level::kWarn;
    if (std::strcmp(env, "quiet") == 0) return Level::kQuiet;
    if (std::strcmp(env, "info") == 0) return Level::kInfo;
    if (std::strcmp(env, "debug") == 0) return Level::kDebug;
    return Level::kWarn;
  }();
  return cached;
}

template <typename... Args>
inline void emit(Level at, const char* tag, const char* fmt, Args... args) {
  if (level() < at) return;
  std::fprintf(stderr, "[peakspread %s] ", tag);
  std::fprintf(stderr, fmt, args...);
  std::fputc('\n', stderr);
}

template <typename... Args>
inline void warn(const char* fmt, Args... args) {
  emit(Level::kWarn, "warn", fmt, args...);
}

template <typename... Args>
inline void info(const char* fmt, Args... args) {
  emit(Level::kInfo, "info", fmt, args...);
}

template <typename... Args>
inline void debug(const char* fmt, Args... args) {
  emit(Level::kDebug, "debug", fmt, args...);
}

}  // namespace log
}  // namespace peakspread
