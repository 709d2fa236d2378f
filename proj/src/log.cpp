#include "ipaal/log.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace ipaal::log {

static std::atomic<Level> g_level{Level::Warn};

void set_level(Level level) { g_level.store(level); }
Level level() { return g_level.load(); }

void init_from_env() {
  const char* v = std::getenv("IPAAL_LOG");
  if (!v) return;
  if (!std::strcmp(v, "quiet")) set_level(Level::Quiet);
  else if (!std::strcmp(v, "warn")) set_level(Level::Warn);
  else if (!std::strcmp(v, "info")) set_level(Level::Info);
  else if (!std::strcmp(v, "debug")) set_level(Level::Debug);
}

static void emit(const char* tag, const char* fmt, va_list args) {
  std::fprintf(stderr, "[%s] ", tag);
  std::vfprintf(stderr, fmt, args);
  std::fputc('\n', stderr);
}

#define IPAAL_LOG_IMPL(name, lvl, tag)            \
  void name(const char* fmt, ...) {               \
    if (level() < lvl) return;                    \
    va_list args;                                 \
    va_start(args, fmt);                          \
    emit(tag, fmt, args);                         \
    va_end(args);                                 \
  }

IPAAL_LOG_IMPL(warn, Level::Warn, "warn")
IPAAL_LOG_IMPL(info, Level::Info, "info")
IPAAL_LOG_IMPL(debug, Level::Debug, "debug")

#undef IPAAL_LOG_IMPL

}  // namespace ipaal::log
