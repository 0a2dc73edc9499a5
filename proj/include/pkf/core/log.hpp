#pragma once

#include <spdlog/spdlog.h>

namespace pkf::log {

/// Stderr logger shared by the library. Its level comes from the PKF_LOG
/// environment variable (trace, debug, info, warn, error, off); default warn.
spdlog::logger& get();

}  // namespace pkf::log
