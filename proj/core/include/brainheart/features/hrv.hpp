#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "brainheart/preprocess/rr.hpp"

namespace bh {

inline constexpr std::array<std::string_view, 5> kHrvFeatureNames{"meanNN", "SDNN", "RMSSD", "SD1", "SD2"};

/// Time-domain and Poincaré descriptors in ms. Dispersions use the sample sd.
struct HrvFeatures {
  double mean_nn = 0.0;
  double sdnn = 0.0;
  double rmssd = 0.0;
  double sd1 = 0.0;
  double sd2 = 0.0;
  /// ½·var(IBI′) and 2·var(IBI) − ½·var(IBI′), unclamped; sd1_sq + sd2_sq = 2·sdnn².
  double sd1_sq = 0.0;
  double sd2_sq = 0.0;
  /// Set when sd2_sq < 0 and sd2 was clamped to 0.
  bool sd2_clamped = false;

  std::array<double, 5> values() const { return {mean_nn, sdnn, rmssd, sd1, sd2}; }
};

/// Uses plausible intervals only; diffs spanning an implausible interval are
/// excluded. Throws DataError ("too few intervals") below 3 plausible intervals.
HrvFeatures compute_hrv(const RrSeries& rr);

/// Same statistics over a plain interval sequence (ms), no plausibility filter.
HrvFeatures hrv_from_intervals(std::span<const double> intervals_ms);

struct WindowedPoincare {
  std::size_t window_beats = 30;
  std::vector<double> centers;  // beat index at each window centre
  std::vector<double> sd1_t;
  std::vector<double> sd2_t;
};

/// One (sd1, sd2) per window of `window_beats` consecutive intervals, stride 1.
/// Each pair equals hrv_from_intervals on that window. Throws DataError when
/// the series is shorter than the window.
WindowedPoincare compute_windowed_poincare(const RrSeries& rr, std::size_t window_beats = 30);

}  // namespace bh
