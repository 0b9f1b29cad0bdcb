#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

namespace bh {

struct Band {
  std::string_view name;
  double low_hz;
  double high_hz;
};

inline constexpr std::array<Band, 5> kEegBands{{
    {"delta", 1.0, 4.0},
    {"theta", 4.0, 8.0},
    {"alpha", 8.0, 13.0},
    {"beta", 13.0, 30.0},
    {"gamma", 30.0, 40.0},
}};

using BandValues = std::array<double, kEegBands.size()>;

/// Per-channel absolute (unit²) and relative band power.
struct BandPowerVector {
  std::vector<BandValues> absolute;
  std::vector<BandValues> relative;
};

inline constexpr double kWelchSegmentSeconds = 2.0;

/// One-sided Welch PSD, Hann window, 50% overlap, mean removed per segment,
/// density scaling. Frequencies are k·df with df = rate/nperseg.
struct Psd {
  double df = 0.0;
  std::vector<double> power;
};
Psd welch_psd(std::span<const double> x, double rate, double segment_seconds = kWelchSegmentSeconds);

/// Bands are half-open [low, high) except the last, which includes 40 Hz, so
/// relative powers partition the 1-40 Hz total. A flat channel gives NaN
/// relative powers.
/// Throws ValidationError for rate <= 80 Hz and DataError ("epoch too short")
/// below one 2 s segment.
BandPowerVector compute_band_power(const std::vector<std::vector<double>>& epoch, double rate);

}  // namespace bh
