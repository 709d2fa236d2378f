#pragma once

#include <cstdarg>

namespace ipaal::log {

enum class Level { Quiet = 0, Warn = 1, Info = 2, Debug = 3 };

void set_level(Level level);
Level level();

/// Reads IPAAL_LOG (quiet|warn|info|debug) and applies it; unknown or unset
/// values leave the level at Warn.
void init_from_env();

void warn(const char* fmt, ...);
void info(const char* fmt, ...);
void debug(const char* fmt, ...);

}  // namespace ipaal::log
