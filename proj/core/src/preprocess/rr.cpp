#include "brainheart/preprocess/rr.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "brainheart/util/error.hpp"

namespace bh {

std::vector<double> RrSeries::plausible_intervals() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (plausible[i]) out.push_back(intervals[i]);
  }
  return out;
}

std::vector<double> RrSeries::plausible_diffs() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < diff_intervals.size(); ++i) {
    if (plausible[i] && plausible[i + 1]) out.push_back(diff_intervals[i]);
  }
  return out;
}

std::size_t RrSeries::implausible_count() const {
  return static_cast<std::size_t>(std::count(plausible.begin(), plausible.end(), false));
}

RrSeries rr_from_beat_times(std::vector<double> beat_times) {
  if (beat_times.size() < 3) {
    throw ValidationError(fmt::format("< 3 peaks: got {}", beat_times.size()));
  }
  RrSeries rr;
  rr.beat_times = std::move(beat_times);
  const auto& t = rr.beat_times;
  rr.intervals.reserve(t.size() - 1);
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    if (!(t[k + 1] > t[k])) throw ValidationError("beat times must be strictly increasing");
    rr.intervals.push_back((t[k + 1] - t[k]) * 1000.0);
  }
  for (std::size_t k = 0; k + 1 < rr.intervals.size(); ++k) {
    rr.diff_intervals.push_back(rr.intervals[k + 1] - rr.intervals[k]);
  }
  rr.plausible.reserve(rr.intervals.size());
  for (const double v : rr.intervals) {
    rr.plausible.push_back(v >= kMinPlausibleRrMs && v <= kMaxPlausibleRrMs);
  }
  return rr;
}

RrSeries rr_from_intervals(std::span<const double> intervals_ms) {
  RrSeries rr;
  rr.beat_times.push_back(0.0);
  for (const double v : intervals_ms) {
    if (!(v > 0.0)) throw ValidationError("intervals must be > 0");
    rr.beat_times.push_back(rr.beat_times.back() + v / 1000.0);
  }
  if (rr.beat_times.size() < 3) throw ValidationError("< 3 peaks: need at least 2 intervals");
  // Keep the given values exactly rather than re-deriving them from beat times.
  rr.intervals.assign(intervals_ms.begin(), intervals_ms.end());
  for (std::size_t k = 0; k + 1 < rr.intervals.size(); ++k) {
    rr.diff_intervals.push_back(rr.intervals[k + 1] - rr.intervals[k]);
  }
  for (const double v : rr.intervals) {
    rr.plausible.push_back(v >= kMinPlausibleRrMs && v <= kMaxPlausibleRrMs);
  }
  return rr;
}

RrSeries extract_rr(std::span<const std::size_t> peaks, double rate) {
  if (!(rate > 0.0)) throw ValidationError("sampling rate must be > 0");
  if (peaks.size() < 3) throw ValidationError(fmt::format("< 3 peaks: got {}", peaks.size()));
  RrSeries rr;
  for (std::size_t k = 0; k < peaks.size(); ++k) {
    if (k > 0 && peaks[k] <= peaks[k - 1]) throw ValidationError("peak indices must be strictly increasing");
    rr.beat_times.push_back(static_cast<double>(peaks[k]) / rate);
  }
  // Integer sample differences give exact intervals.
  for (std::size_t k = 0; k + 1 < peaks.size(); ++k) {
    rr.intervals.push_back(static_cast<double>(peaks[k + 1] - peaks[k]) * 1000.0 / rate);
  }
  for (std::size_t k = 0; k + 1 < rr.intervals.size(); ++k) {
    rr.diff_intervals.push_back(rr.intervals[k + 1] - rr.intervals[k]);
  }
  for (const double v : rr.intervals) {
    rr.plausible.push_back(v >= kMinPlausibleRrMs && v <= kMaxPlausibleRrMs);
  }
  return rr;
}

}  // namespace bh
