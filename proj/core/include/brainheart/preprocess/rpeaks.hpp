#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bh {

/// Pan–Tompkins style QRS detector: 5–15 Hz bandpass, five-point derivative,
/// squaring, 150 ms moving-window integration, adaptive signal/noise
/// thresholds with searchback, T-wave rejection and a 200 ms refractory
/// period. Detections are refined to the dominant extremum of the ECG within
/// ±75 ms.
///
/// Throws ValidationError for rate < 100 Hz or fewer than 2 s of samples and
/// DataError for a flat (zero-variance) signal.
std::vector<std::size_t> detect_r_peaks(std::span<const double> ecg, double rate);

}  // namespace bh
