#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bh {

inline constexpr double kMinPlausibleRrMs = 300.0;
inline constexpr double kMaxPlausibleRrMs = 2000.0;

struct RrSeries {
  std::vector<double> beat_times;      // s
  std::vector<double> intervals;       // ms
  std::vector<double> diff_intervals;  // ms
  std::vector<bool> plausible;         // per interval

  /// Intervals inside the plausibility bounds.
  std::vector<double> plausible_intervals() const;
  /// Successive differences over pairs of adjacent plausible intervals only.
  std::vector<double> plausible_diffs() const;
  std::size_t implausible_count() const;
};

/// Throws ValidationError unless beat_times has at least 3 strictly
/// increasing entries ("< 3 peaks").
RrSeries rr_from_beat_times(std::vector<double> beat_times);

/// Builds an RrSeries directly from intervals in ms, beats starting at t = 0.
RrSeries rr_from_intervals(std::span<const double> intervals_ms);

RrSeries extract_rr(std::span<const std::size_t> peaks, double rate);

}  // namespace bh
