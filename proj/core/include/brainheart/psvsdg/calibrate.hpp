#pragma once

#include <string>

#include "brainheart/psvsdg/ipfm.hpp"
#include "brainheart/util/error.hpp"

namespace bh {

struct CalibrationOptions {
  int max_evaluations = 40;
  /// Relative error at which a coordinate search stops.
  double tolerance = 0.05;
  /// Relative error the final pair must meet on both targets.
  double acceptance = 0.10;
  /// c_s + c_v is capped at this fraction of mu_hr.
  double max_modulation_fraction = 0.3;
  double dt = 0.001;
};

struct CalibrationResult {
  double c_s = 0.0;
  double c_v = 0.0;
  double achieved_sd1 = 0.0;
  double achieved_sd2 = 0.0;
  /// Generator runs spent by the search.
  int evaluations = 0;
};

/// Raised when no admissible pair reaches both targets; carries the best pair.
class CalibrationError : public DataError {
 public:
  CalibrationError(const std::string& what, CalibrationResult best) : DataError(what), best_(best) {}
  const CalibrationResult& best() const { return best_; }

 private:
  CalibrationResult best_;
};

/// sd1 and sd2 (ms) of the beat train generated with the given amplitudes.
CalibrationResult measure_amplitudes(double c_s, double c_v, double mu_hr, double duration, double dt = 0.001);

/// Small-modulation estimate of (c_s, c_v) for the targets: each sinusoid,
/// sampled once per beat, contributes var·(1 - cos(omega/mu)) to sd1² and
/// var·(1 + cos(omega/mu)) to sd2², with the beat-average attenuation folded
/// into its amplitude. Negative solutions are clamped to 0.
std::pair<double, double> initial_amplitudes(double target_sd1, double target_sd2, double mu_hr);

/// c_v is tuned against target_sd1 and c_s against target_sd2, alternating
/// log-scale bisection on one coordinate at a time.
/// Throws ValidationError ("targets > 0 required") and CalibrationError
/// ("targets unreachable").
CalibrationResult calibrate_amplitudes(double target_sd1, double target_sd2, double mu_hr, double duration,
                                       const CalibrationOptions& options = {});

}  // namespace bh
