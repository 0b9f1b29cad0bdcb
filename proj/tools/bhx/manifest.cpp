#include "manifest.hpp"

#include <ctime>
#include <fstream>

#include <boost/crc.hpp>
#include <boost/version.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/version.h>

#include "brainheart/util/error.hpp"

#ifndef BHX_VERSION
#define BHX_VERSION "0.0.0"
#endif

namespace bhx {

std::string crc64_hex(const std::string& text) {
  boost::crc_optimal<64, 0x42F0E1EBA9EA3693ULL, 0, 0, false, false> crc;
  crc.process_bytes(text.data(), text.size());
  return fmt::format("{:016x}", crc.checksum());
}

std::vector<std::pair<std::string, std::string>> library_versions() {
  return {
      {"bhx", BHX_VERSION},
      {"boost", fmt::format("{}.{}.{}", BOOST_VERSION / 100000, BOOST_VERSION / 100 % 1000, BOOST_VERSION % 100)},
      {"fmt", fmt::format("{}.{}.{}", FMT_VERSION / 10000, FMT_VERSION / 100 % 100, FMT_VERSION % 100)},
      {"spdlog", fmt::format("{}.{}.{}", SPDLOG_VER_MAJOR, SPDLOG_VER_MINOR, SPDLOG_VER_PATCH)},
      {"nlohmann_json", fmt::format("{}.{}.{}", NLOHMANN_JSON_VERSION_MAJOR, NLOHMANN_JSON_VERSION_MINOR,
                                    NLOHMANN_JSON_VERSION_PATCH)},
  };
}

namespace {

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

RunManifest::RunManifest(std::string command, const PipelineConfig& cfg)
    : command_(std::move(command)),
      config_path_(cfg.source.empty() ? std::string() : cfg.source.generic_string()),
      config_hash_(crc64_hex(canonical_text(cfg))),
      seed_(cfg.seed),
      jobs_(cfg.jobs),
      started_utc_(utc_now()) {}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["tool"] = "bhx";
  j["command"] = command_;
  j["config_path"] = config_path_.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(config_path_);
  j["config_hash"] = "crc64:" + config_hash_;
  j["seed"] = seed_;
  j["jobs"] = jobs_;
  auto& versions = j["versions"] = nlohmann::ordered_json::object();
  for (const auto& [name, v] : library_versions()) versions[name] = v;
  j["inputs"] = inputs_;
  j["outputs"] = outputs_;
  auto& notes = j["notes"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : notes_) notes[k] = v;
  j["started_utc"] = started_utc_;
  auto& timings = j["timings_ms"] = nlohmann::ordered_json::object();
  double total = 0.0;
  for (const auto& [stage, ms] : timings_) {
    timings[stage] = ms;
    total += ms;
  }
  timings["total"] = total;
  return j.dump(2) + "\n";
}

std::filesystem::path RunManifest::location_for(const std::filesystem::path& output, bool is_directory) {
  if (is_directory) return output / "run_manifest.json";
  auto p = output;
  p += ".run.json";
  return p;
}

void RunManifest::write(const std::filesystem::path& location) const {
  std::ofstream out(location, std::ios::binary | std::ios::trunc);
  if (!out) throw bh::DataError(fmt::format("cannot write run manifest {}", location.string()));
  out << to_json();
}

}  // namespace bhx
