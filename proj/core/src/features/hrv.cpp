#include "brainheart/features/hrv.hpp"

#include <cmath>

#include <fmt/format.h>

#include "brainheart/util/error.hpp"
#include "brainheart/util/log.hpp"
#include "brainheart/util/stats.hpp"

namespace bh {

namespace {

HrvFeatures hrv_core(std::span<const double> intervals, std::span<const double> diffs) {
  if (intervals.size() < 3 || diffs.size() < 2) {
    throw DataError(fmt::format("too few intervals: {} plausible intervals, {} usable differences",
                                intervals.size(), diffs.size()));
  }
  HrvFeatures f;
  f.mean_nn = stats::mean(intervals);
  const double var_nn = stats::variance(intervals);
  f.sdnn = std::sqrt(var_nn);
  double ss = 0.0;
  for (const double d : diffs) ss += d * d;
  f.rmssd = std::sqrt(ss / static_cast<double>(diffs.size()));
  f.sd1_sq = 0.5 * stats::variance(diffs);
  f.sd2_sq = 2.0 * var_nn - f.sd1_sq;
  f.sd1 = std::sqrt(f.sd1_sq);
  if (f.sd2_sq < 0.0) {
    f.sd2_clamped = true;
    f.sd2 = 0.0;
  } else {
    f.sd2 = std::sqrt(f.sd2_sq);
  }
  return f;
}

}  // namespace

HrvFeatures compute_hrv(const RrSeries& rr) {
  const auto intervals = rr.plausible_intervals();
  const auto diffs = rr.plausible_diffs();
  auto f = hrv_core(intervals, diffs);
  if (f.sd2_clamped) logger().warn("SD2 radicand {} < 0; SD2 clamped to 0", f.sd2_sq);
  return f;
}

HrvFeatures hrv_from_intervals(std::span<const double> intervals_ms) {
  const auto diffs = stats::diff(intervals_ms);
  return hrv_core(intervals_ms, diffs);
}

WindowedPoincare compute_windowed_poincare(const RrSeries& rr, std::size_t window_beats) {
  if (window_beats < 3) throw ValidationError("window_beats must be >= 3");
  const std::size_t n = rr.intervals.size();
  if (n < window_beats) {
    throw DataError(fmt::format("series shorter than window: {} intervals for a {}-beat window", n, window_beats));
  }
  WindowedPoincare w;
  w.window_beats = window_beats;
  const std::size_t count = n - window_beats + 1;
  w.centers.reserve(count);
  w.sd1_t.reserve(count);
  w.sd2_t.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    RrSeries sub;
    sub.beat_times.assign(rr.beat_times.begin() + static_cast<std::ptrdiff_t>(k),
                          rr.beat_times.begin() + static_cast<std::ptrdiff_t>(k + window_beats + 1));
    sub.intervals.assign(rr.intervals.begin() + static_cast<std::ptrdiff_t>(k),
                         rr.intervals.begin() + static_cast<std::ptrdiff_t>(k + window_beats));
    sub.diff_intervals.assign(rr.diff_intervals.begin() + static_cast<std::ptrdiff_t>(k),
                              rr.diff_intervals.begin() + static_cast<std::ptrdiff_t>(k + window_beats - 1));
    sub.plausible.assign(rr.plausible.begin() + static_cast<std::ptrdiff_t>(k),
                         rr.plausible.begin() + static_cast<std::ptrdiff_t>(k + window_beats));
    w.centers.push_back(static_cast<double>(k) + 0.5 * static_cast<double>(window_beats));
    try {
      const auto f = hrv_core(sub.plausible_intervals(), sub.plausible_diffs());
      w.sd1_t.push_back(f.sd1);
      w.sd2_t.push_back(f.sd2);
    } catch (const DataError&) {
      w.sd1_t.push_back(std::nan(""));
      w.sd2_t.push_back(std::nan(""));
    }
  }
  return w;
}

}  // namespace bh
