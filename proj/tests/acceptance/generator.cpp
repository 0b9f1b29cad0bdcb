#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>

#include "acceptance/criteria.hpp"
#include "acceptance/oracles.hpp"
#include "brainheart/features/bandpower.hpp"
#include "brainheart/psvsdg/calibrate.hpp"
#include "brainheart/psvsdg/ipfm.hpp"

namespace bh::acceptance {
namespace {

PsvSdgParams params(double mu, double cs, double cv, double duration, double dt = 0.001) {
  PsvSdgParams p;
  p.mu_hr = mu;
  p.c_s = cs;
  p.c_v = cv;
  p.duration = duration;
  p.dt = dt;
  return p;
}

// Closed-form integral of the rate from 0 to t.
double phase(const PsvSdgParams& p, double t) {
  return p.mu_hr * t + p.c_s / p.omega_s * (1.0 - std::cos(p.omega_s * t)) +
         p.c_v / p.omega_v * (1.0 - std::cos(p.omega_v * t));
}

std::vector<double> exact_beats(const PsvSdgParams& p) {
  std::vector<double> beats;
  for (int k = 1; phase(p, p.duration) >= k; ++k) {
    double lo = 0.0, hi = p.duration;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (phase(p, mid) < k ? lo : hi) = mid;
    }
    beats.push_back(0.5 * (lo + hi));
  }
  return beats;
}

double max_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double g = 0.0;
  for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) g = std::max(g, std::abs(a[k] - b[k]));
  return g;
}

// Frequency of the largest Welch peak of the RR tachogram resampled at 4 Hz.
double tachogram_peak_hz(const std::vector<double>& beats) {
  std::vector<double> t, rr;
  for (std::size_t i = 1; i < beats.size(); ++i) {
    t.push_back(beats[i]);
    rr.push_back(beats[i] - beats[i - 1]);
  }
  std::vector<double> grid;
  std::size_t j = 0;
  for (double x = t.front(); x <= t.back(); x += 0.25) {
    while (j + 2 < t.size() && t[j + 1] < x) ++j;
    const double w = (x - t[j]) / (t[j + 1] - t[j]);
    grid.push_back(rr[j] + w * (rr[j + 1] - rr[j]));
  }
  const auto psd = welch_psd(grid, 4.0, 64.0);
  std::size_t best = 1;
  for (std::size_t k = 1; k < psd.power.size(); ++k) {
    if (psd.power[k] > psd.power[best]) best = k;
  }
  return static_cast<double>(best) * psd.df;
}

// sd1/sd2 of a single sinusoid sampled once per beat at phase step omega/mu.
double ratio_for(double omega, double mu) {
  const double rho = std::cos(omega / mu);
  return std::sqrt((1.0 - rho) / (1.0 + rho));
}

}  // namespace

Outcome ipfm_correctness() {
  Checker check;
  char buf[160];

  // Unmodulated: beat k at k/mu.
  double flat_err = 0.0;
  for (const double mu : {0.8, 1.0, 1.25, 1.5, 1.7}) {
    const auto beats = ipfm_generate(params(mu, 0.0, 0.0, 300.5), 0).beat_times;
    check.expect(beats.size() == static_cast<std::size_t>(std::floor(300.5 * mu)),
                 "beat count at mu " + std::to_string(mu));
    for (std::size_t k = 0; k < beats.size(); ++k) {
      flat_err = std::max(flat_err, std::abs(beats[k] - static_cast<double>(k + 1) / mu));
    }
  }
  check.expect(flat_err <= 1e-6, "unmodulated spacing off by " + std::to_string(flat_err));

  // Step halving: beats move less than mu·dt and approach the exact phase crossings.
  double worst_move = 0.0;
  for (const auto& base : {params(1.1, 0.2, 0.15, 80.0, 0.004), params(0.9, 0.1, 0.1, 120.0, 0.004),
                           params(1.4, 0.05, 0.3, 60.0, 0.004)}) {
    const auto exact = exact_beats(base);
    auto p = base;
    auto coarse = ipfm_generate(p, 0).beat_times;
    double coarse_err = max_gap(coarse, exact);
    for (int level = 0; level < 3; ++level) {
      auto q = p;
      q.dt = p.dt / 2;
      const auto fine = ipfm_generate(q, 0).beat_times;
      const double move = max_gap(coarse, fine);
      const double fine_err = max_gap(fine, exact);
      worst_move = std::max(worst_move, move / (p.mu_hr * p.dt));
      check.expect(coarse.size() == fine.size() && fine.size() == exact.size(), "beat count changes with dt");
      check.expect(move < p.mu_hr * p.dt, "halving dt moved a beat by " + std::to_string(move));
      check.expect(fine_err <= coarse_err + 1e-12, "error grew when dt was halved");
      p = q;
      coarse = fine;
      coarse_err = fine_err;
    }
  }

  // Each modulation shows up in its own band.
  double vagal_lo = 1.0, vagal_hi = 0.0, symp_lo = 1.0, symp_hi = 0.0;
  for (const double mu : {0.9, 1.2, 1.5}) {
    const double fv = tachogram_peak_hz(ipfm_generate(params(mu, 0.0, 0.1 * mu, 600.0), 0).beat_times);
    const double fs = tachogram_peak_hz(ipfm_generate(params(mu, 0.1 * mu, 0.0, 600.0), 0).beat_times);
    check.expect(fv >= 0.2 && fv <= 0.3, "vagal peak at " + std::to_string(fv) + " Hz");
    check.expect(fs >= 0.05 && fs <= 0.15, "sympathetic peak at " + std::to_string(fs) + " Hz");
    vagal_lo = std::min(vagal_lo, fv);
    vagal_hi = std::max(vagal_hi, fv);
    symp_lo = std::min(symp_lo, fs);
    symp_hi = std::max(symp_hi, fs);
  }

  std::snprintf(buf, sizeof buf,
                "flat spacing err %.1e s; max halving shift %.2e mu*dt; vagal peaks %.3f-%.3f Hz, "
                "sympathetic %.3f-%.3f Hz",
                flat_err, worst_move, vagal_lo, vagal_hi, symp_lo, symp_hi);
  return check.outcome(buf);
}

Outcome calibration_round_trip() {
  Checker check;
  constexpr double kDuration = 120.0;
  constexpr double kMargin = 0.1;
  const PsvSdgParams defaults;

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> sd1_range(5.0, 60.0), sd2_range(20.0, 120.0), mu_range(0.9, 1.5);
  int accepted = 0, drawn = 0, evaluations = 0;
  double worst = 0.0;
  while (accepted < 50) {
    ++drawn;
    const double sd1 = sd1_range(rng), sd2 = sd2_range(rng), mu = mu_range(rng);
    // Only ratios between the pure-sympathetic and pure-vagal limits are reachable.
    const double r = sd1 / sd2;
    if (r < ratio_for(defaults.omega_s, mu) * (1 + kMargin) || r > ratio_for(defaults.omega_v, mu) * (1 - kMargin)) {
      continue;
    }
    ++accepted;
    const std::string tag = "pair " + std::to_string(accepted);
    try {
      const auto fit = calibrate_amplitudes(sd1, sd2, mu, kDuration);
      evaluations += fit.evaluations;
      check.expect(fit.evaluations <= 40, tag + " used " + std::to_string(fit.evaluations) + " evaluations");
      auto p = params(mu, fit.c_s, fit.c_v, kDuration);
      const auto d = direct_hrv(ipfm_generate(p, 0).intervals_ms());
      const double e1 = std::abs(static_cast<double>(d.sd1) / sd1 - 1.0);
      const double e2 = std::abs(static_cast<double>(d.sd2) / sd2 - 1.0);
      worst = std::max({worst, e1, e2});
      check.expect(e1 <= 0.10 && e2 <= 0.10, tag + " missed targets");
    } catch (const CalibrationError& e) {
      check.expect(false, tag + " (" + std::to_string(sd1) + ", " + std::to_string(sd2) + ", mu " +
                              std::to_string(mu) + "): " + e.what());
    }
  }

  // Out-of-reach targets fail with a typed error carrying an admissible best pair.
  const auto unreachable = [&](double sd1, double sd2, double mu, const std::string& tag) {
    try {
      calibrate_amplitudes(sd1, sd2, mu, kDuration);
      check.expect(false, tag + " did not throw");
    } catch (const CalibrationError& e) {
      check.expect(std::string(e.what()).find("targets unreachable") != std::string::npos, tag + " message");
      check.expect(e.best().c_s >= 0 && e.best().c_v >= 0 && e.best().c_s + e.best().c_v <= 0.3 * mu + 1e-12,
                   tag + " best pair outside the cap");
      check.expect(e.best().evaluations <= 40, tag + " evaluation budget");
    }
  };
  unreachable(60.0, 20.0, 1.2, "sd1 > vagal limit");
  unreachable(2.0, 100.0, 1.2, "sd1/sd2 below sympathetic limit");
  unreachable(500.0, 900.0, 1.0, "amplitude cap");
  try {
    calibrate_amplitudes(0.0, 50.0, 1.0, kDuration);
    check.expect(false, "zero target accepted");
  } catch (const ValidationError&) {
    check.expect(true, "");
  }

  char buf[160];
  std::snprintf(buf, sizeof buf, "50 pairs (%d drawn), worst relative miss %.3f, %.1f evaluations per pair", drawn,
                worst, evaluations / 50.0);
  return check.outcome(buf);
}

}  // namespace bh::acceptance
