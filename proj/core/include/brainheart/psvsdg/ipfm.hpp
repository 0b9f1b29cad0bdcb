#pragma once

#include <cstdint>
#include <numbers>
#include <vector>

#include "brainheart/preprocess/rr.hpp"

namespace bh {

/// Rates in beats/s, angular frequencies in rad/s, times in s.
struct PsvSdgParams {
  double mu_hr = 1.0;
  double c_s = 0.0;
  double c_v = 0.0;
  double omega_s = 2.0 * std::numbers::pi * 0.1;
  double omega_v = 2.0 * std::numbers::pi * 0.25;
  double duration = 60.0;
  double dt = 0.001;
  /// Sd of optional white noise added to the rate at each step; 0 disables it.
  double noise_sd = 0.0;
};

/// Throws ValidationError: mu_hr > 0, finite amplitudes, 0 < dt <= 0.005,
/// duration >= 10/mu_hr, and "non-positive rate" when mu_hr - (|c_s| + |c_v|) <= 0.
void validate_params(const PsvSdgParams& p);

/// Instantaneous firing rate mu_hr + c_s·sin(omega_s·t) + c_v·sin(omega_v·t).
double ipfm_rate(const PsvSdgParams& p, double t);

struct BeatTrain {
  std::vector<double> beat_times;
  PsvSdgParams params;

  /// Successive beat differences as an RR series (ms).
  RrSeries rr() const;
  std::vector<double> intervals_ms() const;
};

/// Integrate-and-fire from t = 0 with the rate integrated by the trapezoid
/// rule on a dt grid. A beat fires each time the accumulated integral reaches
/// 1; the crossing instant is linearly interpolated inside the step and the
/// excess carries over. The seed only matters when noise_sd > 0.
BeatTrain ipfm_generate(const PsvSdgParams& params, std::uint64_t seed);

}  // namespace bh
