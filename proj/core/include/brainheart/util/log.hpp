#pragma once

#include <memory>

#include <spdlog/logger.h>

namespace bh {

// Library-wide logger ("brainheart"), stderr sink, created on first use.
spdlog::logger& logger();

void set_log_level(spdlog::level::level_enum level);

}  // namespace bh
