#include "brainheart/features/bandpower.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "brainheart/util/error.hpp"
#include "../util/fft.hpp"

namespace bh {

Psd welch_psd(std::span<const double> x, double rate, double segment_seconds) {
  const auto nperseg = static_cast<std::size_t>(std::lround(segment_seconds * rate));
  if (nperseg < 2) throw ValidationError("segment shorter than 2 samples");
  if (x.size() < nperseg) {
    throw DataError(fmt::format("epoch too short: {} samples, need {} for a {} s segment", x.size(), nperseg,
                                segment_seconds));
  }
  const std::size_t step = nperseg / 2;
  // Periodic Hann.
  std::vector<double> win(nperseg);
  double wss = 0.0;
  for (std::size_t i = 0; i < nperseg; ++i) {
    win[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(nperseg));
    wss += win[i] * win[i];
  }
  const std::size_t nbins = nperseg / 2 + 1;
  Psd psd;
  psd.df = rate / static_cast<double>(nperseg);
  psd.power.assign(nbins, 0.0);
  std::size_t segments = 0;
  std::vector<double> seg(nperseg);
  for (std::size_t start = 0; start + nperseg <= x.size(); start += step) {
    double m = 0.0;
    for (std::size_t i = 0; i < nperseg; ++i) m += x[start + i];
    m /= static_cast<double>(nperseg);
    for (std::size_t i = 0; i < nperseg; ++i) seg[i] = (x[start + i] - m) * win[i];
    const auto F = detail::rfft(seg, nperseg);
    for (std::size_t k = 0; k < nbins; ++k) psd.power[k] += std::norm(F[k]);
    ++segments;
  }
  const double scale = 1.0 / (rate * wss * static_cast<double>(segments));
  for (std::size_t k = 0; k < nbins; ++k) {
    psd.power[k] *= scale;
    const bool nyquist = nperseg % 2 == 0 && k == nbins - 1;
    if (k > 0 && !nyquist) psd.power[k] *= 2.0;
  }
  return psd;
}

BandPowerVector compute_band_power(const std::vector<std::vector<double>>& epoch, double rate) {
  const double top = kEegBands.back().high_hz;
  if (!(rate > 2.0 * top)) {
    throw ValidationError(fmt::format("rate too low for requested bands: {} Hz, need > {} Hz", rate, 2.0 * top));
  }
  if (epoch.empty()) throw DataError("epoch has no channels");
  BandPowerVector out;
  for (const auto& channel : epoch) {
    const Psd psd = welch_psd(channel, rate);
    BandValues abs{};
    for (std::size_t k = 0; k < psd.power.size(); ++k) {
      const double f = static_cast<double>(k) * psd.df;
      for (std::size_t b = 0; b < kEegBands.size(); ++b) {
        const bool last = b + 1 == kEegBands.size();
        if (f >= kEegBands[b].low_hz && (f < kEegBands[b].high_hz || (last && f <= kEegBands[b].high_hz))) {
          abs[b] += psd.power[k] * psd.df;
          break;
        }
      }
    }
    double total = 0.0;
    for (const double v : abs) total += v;
    BandValues rel{};
    for (std::size_t b = 0; b < rel.size(); ++b) {
      rel[b] = total > 0.0 ? abs[b] / total : std::numeric_limits<double>::quiet_NaN();
    }
    out.absolute.push_back(abs);
    out.relative.push_back(rel);
  }
  return out;
}

}  // namespace bh
