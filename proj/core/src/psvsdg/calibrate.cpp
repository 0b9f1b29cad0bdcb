#include "brainheart/psvsdg/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "brainheart/features/hrv.hpp"

namespace bh {

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / want; }

double worst(const CalibrationResult& r, double sd1, double sd2) {
  return std::max(rel_err(r.achieved_sd1, sd1), rel_err(r.achieved_sd2, sd2));
}

// Averaging a sinusoid over one beat period 1/mu scales its amplitude by this.
double beat_average_gain(double omega, double mu) {
  const double x = omega / (2.0 * mu);
  return std::sin(x) / x;
}

class Search {
 public:
  Search(double sd1, double sd2, double mu, double duration, const CalibrationOptions& opt)
      : sd1_(sd1), sd2_(sd2), mu_(mu), duration_(duration), opt_(opt), cap_(opt.max_modulation_fraction * mu) {}

  bool exhausted() const { return evaluations_ >= opt_.max_evaluations; }
  int evaluations() const { return evaluations_; }
  const CalibrationResult& best() const { return best_; }

  CalibrationResult eval(double c_s, double c_v) {
    auto r = measure_amplitudes(c_s, c_v, mu_, duration_, opt_.dt);
    r.evaluations = ++evaluations_;
    if (!have_best_ || worst(r, sd1_, sd2_) < worst(best_, sd1_, sd2_)) {
      best_ = r;
      have_best_ = true;
    }
    return r;
  }

  /// Bisects one amplitude (in log space) until its own target is within
  /// tolerance. `vagal` selects c_v against sd1, otherwise c_s against sd2.
  CalibrationResult tune(CalibrationResult cur, bool vagal) {
    const double target = vagal ? sd1_ : sd2_;
    auto achieved = [&](const CalibrationResult& r) { return vagal ? r.achieved_sd1 : r.achieved_sd2; };
    auto done = [&](const CalibrationResult& r) { return rel_err(achieved(r), target) <= opt_.tolerance; };
    const double other = vagal ? cur.c_s : cur.c_v;
    auto at = [&](double x) { return vagal ? eval(other, x) : eval(x, other); };
    constexpr double floor = 1e-6;
    const double upper = cap_ - other;
    if (done(cur) || upper <= floor) return cur;

    const double x = std::clamp(vagal ? cur.c_v : cur.c_s, floor, upper);
    double lo, hi;
    if (achieved(cur) < target) {
      lo = x;
      hi = x;
      do {
        if (hi >= upper || exhausted()) return cur;
        lo = hi;
        hi = std::min(upper, 2.0 * hi);
        cur = at(hi);
        if (done(cur)) return cur;
      } while (achieved(cur) < target);
    } else {
      lo = x;
      hi = x;
      do {
        if (lo <= floor || exhausted()) return cur;
        hi = lo;
        lo = std::max(floor, 0.5 * lo);
        cur = at(lo);
        if (done(cur)) return cur;
      } while (achieved(cur) > target);
    }
    while (!exhausted() && hi / lo > 1.0 + 1e-6) {
      const double mid = std::sqrt(lo * hi);
      cur = at(mid);
      if (done(cur)) return cur;
      (achieved(cur) < target ? lo : hi) = mid;
    }
    return cur;
  }

 private:
  double sd1_, sd2_, mu_, duration_;
  CalibrationOptions opt_;
  double cap_;
  int evaluations_ = 0;
  bool have_best_ = false;
  CalibrationResult best_;
};

}  // namespace

CalibrationResult measure_amplitudes(double c_s, double c_v, double mu_hr, double duration, double dt) {
  PsvSdgParams p;
  p.mu_hr = mu_hr;
  p.c_s = c_s;
  p.c_v = c_v;
  p.duration = duration;
  p.dt = dt;
  const auto f = compute_hrv(ipfm_generate(p, 0).rr());
  CalibrationResult r;
  r.c_s = c_s;
  r.c_v = c_v;
  r.achieved_sd1 = f.sd1;
  r.achieved_sd2 = f.sd2;
  return r;
}

std::pair<double, double> initial_amplitudes(double target_sd1, double target_sd2, double mu_hr) {
  const PsvSdgParams defaults;
  const double rho_s = std::cos(defaults.omega_s / mu_hr);
  const double rho_v = std::cos(defaults.omega_v / mu_hr);
  // Solve [1-rho_s 1-rho_v; 1+rho_s 1+rho_v] [var_s; var_v] = [sd1²; sd2²] in s².
  const double s1 = std::pow(target_sd1 / 1000.0, 2);
  const double s2 = std::pow(target_sd2 / 1000.0, 2);
  const double a = 1.0 - rho_s, b = 1.0 - rho_v, c = 1.0 + rho_s, d = 1.0 + rho_v;
  const double det = a * d - b * c;
  double var_s = (d * s1 - b * s2) / det;
  double var_v = (a * s2 - c * s1) / det;
  var_s = std::max(var_s, 0.0);
  var_v = std::max(var_v, 0.0);
  // RR deviation amplitude A ≈ c·gain/mu², and var = A²/2.
  const double mu2 = mu_hr * mu_hr;
  const double c_s = std::sqrt(2.0 * var_s) * mu2 / beat_average_gain(defaults.omega_s, mu_hr);
  const double c_v = std::sqrt(2.0 * var_v) * mu2 / beat_average_gain(defaults.omega_v, mu_hr);
  return {c_s, c_v};
}

CalibrationResult calibrate_amplitudes(double target_sd1, double target_sd2, double mu_hr, double duration,
                                       const CalibrationOptions& options) {
  if (!(target_sd1 > 0.0) || !(target_sd2 > 0.0)) {
    throw ValidationError(fmt::format("targets > 0 required, got sd1 = {} ms, sd2 = {} ms", target_sd1, target_sd2));
  }
  if (!(mu_hr > 0.0)) throw ValidationError("mu_hr must be > 0");
  if (options.max_evaluations < 1) throw ValidationError("max_evaluations must be >= 1");

  Search search(target_sd1, target_sd2, mu_hr, duration, options);
  const double cap = options.max_modulation_fraction * mu_hr;
  auto [c_s, c_v] = initial_amplitudes(target_sd1, target_sd2, mu_hr);
  c_s = std::max(c_s, 1e-6);
  c_v = std::max(c_v, 1e-6);
  // Keep the starting point inside the admissible region, preserving its ratio.
  if (c_s + c_v > cap) {
    const double k = cap / (c_s + c_v);
    c_s *= k;
    c_v *= k;
  }
  auto cur = search.eval(c_s, c_v);
  while (!search.exhausted() && worst(cur, target_sd1, target_sd2) > options.tolerance) {
    const double before = worst(search.best(), target_sd1, target_sd2);
    cur = search.tune(cur, true);
    cur = search.tune(cur, false);
    // A full sweep without improvement would only repeat itself.
    if (worst(search.best(), target_sd1, target_sd2) >= before) break;
  }
  CalibrationResult best = search.best();
  best.evaluations = search.evaluations();
  if (worst(best, target_sd1, target_sd2) > options.acceptance) {
    throw CalibrationError(
        fmt::format("targets unreachable: sd1 = {} ms, sd2 = {} ms at mu_hr = {}; best pair c_s = {:.4g}, c_v = {:.4g} "
                    "gives sd1 = {:.4g} ms, sd2 = {:.4g} ms",
                    target_sd1, target_sd2, mu_hr, best.c_s, best.c_v, best.achieved_sd1, best.achieved_sd2),
        best);
  }
  return best;
}

}  // namespace bh
