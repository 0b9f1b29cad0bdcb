#include "brainheart/preprocess/rpeaks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "brainheart/preprocess/filter.hpp"
#include "brainheart/util/error.hpp"
#include "brainheart/util/stats.hpp"

namespace bh {

namespace {

std::size_t samples_for(double seconds, double rate) {
  return static_cast<std::size_t>(std::lround(seconds * rate));
}

std::vector<double> five_point_derivative(const std::vector<double>& x) {
  const std::size_t n = x.size();
  auto at = [&](std::ptrdiff_t i) {
    return x[static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(n) - 1))];
  };
  std::vector<double> d(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::ptrdiff_t>(k);
    d[k] = (2.0 * at(i + 1) + at(i + 2) - at(i - 2) - 2.0 * at(i - 1)) / 8.0;
  }
  return d;
}

std::vector<double> centred_moving_average(const std::vector<double>& x, std::size_t width) {
  const std::size_t n = x.size();
  std::vector<double> cs(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) cs[i + 1] = cs[i] + x[i];
  const std::size_t half = width / 2;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(n, i + half + 1);
    out[i] = (cs[hi] - cs[lo]) / static_cast<double>(width);
  }
  return out;
}

// Local maxima at least `distance` apart, larger peaks taking precedence.
std::vector<std::size_t> spaced_maxima(const std::vector<double>& x, std::size_t distance) {
  std::vector<std::size_t> cand;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    if (x[i] > x[i - 1] && x[i] >= x[i + 1] && x[i] > 0.0) cand.push_back(i);
  }
  std::vector<std::size_t> order(cand.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[cand[a]] > x[cand[b]]; });
  std::vector<bool> removed(cand.size(), false);
  for (const std::size_t o : order) {
    if (removed[o]) continue;
    for (std::size_t j = o + 1; j < cand.size() && cand[j] - cand[o] < distance; ++j) removed[j] = true;
    for (std::size_t j = o; j-- > 0 && cand[o] - cand[j] < distance;) removed[j] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (!removed[i]) out.push_back(cand[i]);
  }
  return out;
}

}  // namespace

std::vector<std::size_t> detect_r_peaks(std::span<const double> ecg, double rate) {
  if (!(rate >= 100.0)) throw ValidationError(fmt::format("rate {} Hz below the 100 Hz minimum", rate));
  const std::size_t n = ecg.size();
  if (n < samples_for(2.0, rate)) {
    throw ValidationError(fmt::format("signal shorter than 2 s ({} samples at {} Hz)", n, rate));
  }
  if (!std::all_of(ecg.begin(), ecg.end(), [](double v) { return std::isfinite(v); })) {
    throw DataError("ECG contains non-finite samples");
  }
  const double spread = stats::sd(ecg);
  if (!(spread > 0.0)) throw DataError("flat signal: zero variance");

  FilterSpec band{FilterKind::bandpass, 5.0, 15.0, 2, true};
  const auto bp = sosfiltfilt(design_butterworth(band, rate), ecg);
  const auto deriv = five_point_derivative(bp);
  std::vector<double> sq(n);
  std::transform(deriv.begin(), deriv.end(), sq.begin(), [](double v) { return v * v; });
  std::size_t width = samples_for(0.150, rate);
  if (width % 2 == 0) ++width;
  const auto mwi = centred_moving_average(sq, width);

  const std::size_t refractory = samples_for(0.200, rate);
  const std::size_t twave_window = samples_for(0.360, rate);
  const std::size_t half_qrs = samples_for(0.075, rate);
  const auto candidates = spaced_maxima(mwi, refractory);

  auto slope_at = [&](std::size_t i) {
    const std::size_t lo = i >= half_qrs ? i - half_qrs : 0;
    const std::size_t hi = std::min(n, i + half_qrs + 1);
    double m = 0.0;
    for (std::size_t k = lo; k < hi; ++k) m = std::max(m, std::abs(deriv[k]));
    return m;
  };

  const std::size_t learn = std::min(n, samples_for(2.0, rate));
  double spki = *std::max_element(mwi.begin(), mwi.begin() + static_cast<std::ptrdiff_t>(learn)) / 3.0;
  double npki = 0.5 * stats::mean(std::span<const double>(mwi.data(), learn));
  auto threshold1 = [&] { return npki + 0.25 * (spki - npki); };

  std::vector<std::size_t> beats;
  std::vector<double> beat_slopes;
  auto rr_average = [&] {
    const std::size_t m = std::min<std::size_t>(8, beats.size() - 1);
    return static_cast<double>(beats.back() - beats[beats.size() - 1 - m]) / static_cast<double>(m);
  };

  for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
    const std::size_t i = candidates[ci];
    const double v = mwi[i];
    if (v <= threshold1()) {
      npki = 0.125 * v + 0.875 * npki;
      continue;
    }
    const double slope = slope_at(i);
    if (!beats.empty() && i - beats.back() < twave_window && slope < 0.5 * beat_slopes.back()) {
      npki = 0.125 * v + 0.875 * npki;
      continue;
    }
    // Searchback for a missed beat in an overly long gap.
    if (beats.size() >= 2 && static_cast<double>(i - beats.back()) > 1.66 * rr_average()) {
      const double threshold2 = 0.5 * threshold1();
      std::size_t best = 0;
      double best_v = threshold2;
      for (std::size_t cj = 0; cj < ci; ++cj) {
        const std::size_t j = candidates[cj];
        if (j <= beats.back() + refractory || j + refractory >= i) continue;
        if (mwi[j] > best_v) {
          best_v = mwi[j];
          best = j;
        }
      }
      if (best != 0) {
        beats.push_back(best);
        beat_slopes.push_back(slope_at(best));
        spki = 0.25 * best_v + 0.75 * spki;
      }
    }
    beats.push_back(i);
    beat_slopes.push_back(slope);
    spki = 0.125 * v + 0.875 * spki;
  }
  if (beats.empty()) return {};

  // Polarity of the QRS complex decides whether R is a maximum or a minimum.
  double up = 0.0;
  double down = 0.0;
  for (const std::size_t b : beats) {
    const std::size_t lo = b >= half_qrs ? b - half_qrs : 0;
    const std::size_t hi = std::min(n, b + half_qrs + 1);
    const auto [mn, mx] = std::minmax_element(ecg.begin() + static_cast<std::ptrdiff_t>(lo),
                                              ecg.begin() + static_cast<std::ptrdiff_t>(hi));
    const double mid = stats::median(ecg.subspan(lo, hi - lo));
    up += *mx - mid;
    down += mid - *mn;
  }
  const double sign = up >= down ? 1.0 : -1.0;

  std::vector<std::size_t> refined;
  for (const std::size_t b : beats) {
    const std::size_t lo = b >= half_qrs ? b - half_qrs : 0;
    const std::size_t hi = std::min(n, b + half_qrs + 1);
    std::size_t best = lo;
    for (std::size_t k = lo; k < hi; ++k) {
      if (sign * ecg[k] > sign * ecg[best]) best = k;
    }
    if (!refined.empty() && best < refined.back() + refractory) {
      if (sign * ecg[best] > sign * ecg[refined.back()]) refined.back() = best;
      continue;
    }
    refined.push_back(best);
  }
  return refined;
}

}  // namespace bh
