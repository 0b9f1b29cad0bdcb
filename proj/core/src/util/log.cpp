#include "brainheart/util/log.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace bh {

spdlog::logger& logger() {
  static std::shared_ptr<spdlog::logger> instance = [] {
    auto existing = spdlog::get("brainheart");
    if (existing) return existing;
    auto created = spdlog::stderr_color_mt("brainheart");
    created->set_pattern("[%l] %v");
    return created;
  }();
  return *instance;
}

void set_log_level(spdlog::level::level_enum level) { logger().set_level(level); }

}  // namespace bh
