#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <set>
#include <string>

#include "acceptance/criteria.hpp"
#include "brainheart/util/log.hpp"

namespace {

using bh::acceptance::Outcome;

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // 0: no runtime limit
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "HRV oracle", 5.0, bh::acceptance::hrv_oracle},
    {2, "catch22 oracle", 30.0, bh::acceptance::catch22_oracle},
    {3, "IPFM correctness", 20.0, bh::acceptance::ipfm_correctness},
    {4, "calibration round-trip", 60.0, bh::acceptance::calibration_round_trip},
    {5, "learning stack", 180.0, bh::acceptance::learning_stack},
    {6, "synthetic end-to-end", 300.0, bh::acceptance::synthetic_end_to_end},
    {7, "cross-modal sanity", 300.0, bh::acceptance::crossmodal_sanity},
    {8, "determinism", 0.0, bh::acceptance::determinism},
};

}  // namespace

// Usage: brainheart_acceptance [criterion ids...]
int main(int argc, char** argv) {
  bh::set_log_level(spdlog::level::warn);
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : kCriteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass && c.limit_s > 0 && secs > c.limit_s) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.limit_s)) + " s limit)";
    }
    failed += !o.pass;
    std::printf("%s criterion %d %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
