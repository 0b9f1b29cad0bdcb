#include "brainheart/psvsdg/ipfm.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "brainheart/util/error.hpp"
#include "brainheart/util/random.hpp"

namespace bh {

void validate_params(const PsvSdgParams& p) {
  if (!std::isfinite(p.mu_hr) || p.mu_hr <= 0.0) throw ValidationError(fmt::format("mu_hr must be > 0, got {}", p.mu_hr));
  if (!std::isfinite(p.c_s) || !std::isfinite(p.c_v)) throw ValidationError("modulation amplitudes must be finite");
  if (!(p.dt > 0.0 && p.dt <= 0.005)) throw ValidationError(fmt::format("dt must be in (0, 0.005], got {}", p.dt));
  if (!(p.duration >= 10.0 / p.mu_hr)) {
    throw ValidationError(fmt::format("duration {} s is below 10/mu_hr = {} s", p.duration, 10.0 / p.mu_hr));
  }
  if (!(p.noise_sd >= 0.0)) throw ValidationError("noise_sd must be >= 0");
  const double floor = p.mu_hr - (std::abs(p.c_s) + std::abs(p.c_v));
  if (floor <= 0.0) {
    throw ValidationError(fmt::format("non-positive rate: mu_hr - (|c_s| + |c_v|) = {}", floor));
  }
}

double ipfm_rate(const PsvSdgParams& p, double t) {
  return p.mu_hr + p.c_s * std::sin(p.omega_s * t) + p.c_v * std::sin(p.omega_v * t);
}

std::vector<double> BeatTrain::intervals_ms() const {
  std::vector<double> out;
  for (std::size_t i = 1; i < beat_times.size(); ++i) out.push_back((beat_times[i] - beat_times[i - 1]) * 1000.0);
  return out;
}

RrSeries BeatTrain::rr() const { return rr_from_intervals(intervals_ms()); }

BeatTrain ipfm_generate(const PsvSdgParams& params, std::uint64_t seed) {
  validate_params(params);
  BeatTrain train;
  train.params = params;
  Rng rng(seed);
  const auto steps = static_cast<std::size_t>(std::ceil(params.duration / params.dt - 1e-9));
  // Slack on the threshold absorbs rounding in the running sum, so beats that
  // land exactly on a grid point are not deferred by one step.
  constexpr double slack = 1e-12;
  double acc = 0.0;
  double r0 = ipfm_rate(params, 0.0);
  for (std::size_t i = 0; i < steps; ++i) {
    const double t0 = static_cast<double>(i) * params.dt;
    const double t1 = std::min(static_cast<double>(i + 1) * params.dt, params.duration);
    double r1 = ipfm_rate(params, t1);
    if (params.noise_sd > 0.0) {
      r1 += params.noise_sd * rng.normal();
      if (r1 <= 0.0) throw ValidationError(fmt::format("non-positive rate at t = {} s", t1));
    }
    const double h = t1 - t0;
    const double inc = 0.5 * (r0 + r1) * h;
    while (acc + inc >= 1.0 - slack) {
      const double frac = std::clamp((1.0 - acc) / inc, 0.0, 1.0);
      train.beat_times.push_back(t0 + frac * h);
      acc -= 1.0;
    }
    acc += inc;
    r0 = r1;
  }
  return train;
}

}  // namespace bh
