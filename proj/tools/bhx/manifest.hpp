#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"

namespace bhx {

/// CRC-64/ECMA-182 of the text, as 16 lowercase hex digits.
std::string crc64_hex(const std::string& text);

/// Records one command invocation. Everything time dependent lives here and
/// never in the primary outputs.
class RunManifest {
 public:
  RunManifest(std::string command, const PipelineConfig& cfg);

  void input(const std::filesystem::path& p) { inputs_.push_back(p.generic_string()); }
  void output(const std::filesystem::path& p) { outputs_.push_back(p.generic_string()); }
  void note(std::string key, std::string value) { notes_.emplace_back(std::move(key), std::move(value)); }

  /// Wall time of a stage, in milliseconds.
  template <typename F>
  auto timed(const std::string& stage, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    struct Record {
      RunManifest* self;
      std::string stage;
      std::chrono::steady_clock::time_point t0;
      ~Record() {
        const auto dt = std::chrono::steady_clock::now() - t0;
        self->timings_.emplace_back(stage, std::chrono::duration<double, std::milli>(dt).count());
      }
    } record{this, stage, t0};
    return f();
  }

  std::string to_json() const;

  /// `<dir>/run_manifest.json` for a directory output, `<file>.run.json`
  /// beside a file output.
  static std::filesystem::path location_for(const std::filesystem::path& output, bool is_directory);
  void write(const std::filesystem::path& location) const;

 private:
  std::string command_;
  std::string config_path_;
  std::string config_hash_;
  std::uint64_t seed_;
  int jobs_;
  std::string started_utc_;
  std::vector<std::string> inputs_, outputs_;
  std::vector<std::pair<std::string, std::string>> notes_;
  std::vector<std::pair<std::string, double>> timings_;
};

/// Version string of the tool and the libraries it was built with.
std::vector<std::pair<std::string, std::string>> library_versions();

}  // namespace bhx
