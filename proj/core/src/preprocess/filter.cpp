#include "brainheart/preprocess/filter.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <fmt/format.h>

#include "brainheart/util/error.hpp"

namespace bh {

namespace {

using cplx = std::complex<double>;

cplx bilinear(cplx s) { return (1.0 + s) / (1.0 - s); }

// Prewarped analog frequency for the unit-rate bilinear map s = (1 - z^-1) / (1 + z^-1).
double warp(double hz, double rate) { return std::tan(std::numbers::pi * hz / rate); }

Biquad section_from(cplx pole, bool real_pole, double zero_a, double zero_b) {
  // Numerator (1 - zero_a z^-1)(1 - zero_b z^-1); zero_b is ignored for first-order sections.
  Biquad q{};
  if (real_pole) {
    q.b0 = 1.0;
    q.b1 = -zero_a;
    q.b2 = 0.0;
    q.a1 = -pole.real();
    q.a2 = 0.0;
  } else {
    q.b0 = 1.0;
    q.b1 = -(zero_a + zero_b);
    q.b2 = zero_a * zero_b;
    q.a1 = -2.0 * pole.real();
    q.a2 = std::norm(pole);
  }
  return q;
}

cplx response(std::span<const Biquad> sections, double omega) {
  const cplx z1 = std::polar(1.0, -omega);
  const cplx z2 = z1 * z1;
  cplx h = 1.0;
  for (const auto& q : sections) h *= (q.b0 + q.b1 * z1 + q.b2 * z2) / (1.0 + q.a1 * z1 + q.a2 * z2);
  return h;
}

}  // namespace

void validate_filter(const FilterSpec& spec, double rate) {
  if (!(rate > 0.0)) throw ValidationError("sampling rate must be > 0");
  if (spec.order < 1 || spec.order > 8) throw ValidationError("filter order must be in [1, 8]");
  const double nyquist = rate / 2.0;
  const bool uses_low = spec.kind != FilterKind::lowpass;
  const bool uses_high = spec.kind != FilterKind::highpass;
  if ((uses_low && spec.low_hz >= nyquist) || (uses_high && spec.high_hz >= nyquist)) {
    throw ValidationError(fmt::format("cutoff ≥ Nyquist ({} Hz)", nyquist));
  }
  if ((uses_low && !(spec.low_hz > 0.0)) || (uses_high && !(spec.high_hz > 0.0))) {
    throw ValidationError("cutoff frequencies must be > 0");
  }
  if (spec.kind == FilterKind::bandpass && !(spec.low_hz < spec.high_hz)) {
    throw ValidationError("bandpass requires low_hz < high_hz");
  }
}

std::vector<Biquad> design_butterworth(const FilterSpec& spec, double rate) {
  validate_filter(spec, rate);
  const int n = spec.order;
  // Prototype poles in the upper half plane, plus the real pole for odd n.
  std::vector<cplx> proto;
  for (int k = 0; k < n / 2; ++k) {
    proto.push_back(std::polar(1.0, std::numbers::pi * (2.0 * k + n + 1) / (2.0 * n)));
  }
  const bool odd = n % 2 == 1;

  std::vector<Biquad> sections;
  double omega_ref = 0.0;
  switch (spec.kind) {
    case FilterKind::lowpass: {
      const double wc = warp(spec.high_hz, rate);
      for (const cplx p : proto) sections.push_back(section_from(bilinear(wc * p), false, -1.0, -1.0));
      if (odd) sections.push_back(section_from(bilinear(cplx(-wc)), true, -1.0, 0.0));
      omega_ref = 0.0;
      break;
    }
    case FilterKind::highpass: {
      const double wc = warp(spec.low_hz, rate);
      for (const cplx p : proto) sections.push_back(section_from(bilinear(wc / p), false, 1.0, 1.0));
      if (odd) sections.push_back(section_from(bilinear(cplx(-wc)), true, 1.0, 0.0));
      omega_ref = std::numbers::pi;
      break;
    }
    case FilterKind::bandpass: {
      const double wl = warp(spec.low_hz, rate);
      const double wh = warp(spec.high_hz, rate);
      const double bw = wh - wl;
      const double w0sq = wl * wh;
      auto split = [&](cplx p) {
        const cplx root = std::sqrt(p * p * bw * bw - 4.0 * w0sq);
        return std::pair{(p * bw + root) / 2.0, (p * bw - root) / 2.0};
      };
      for (const cplx p : proto) {
        const auto [s1, s2] = split(p);
        sections.push_back(section_from(bilinear(s1), false, 1.0, -1.0));
        sections.push_back(section_from(bilinear(s2), false, 1.0, -1.0));
      }
      if (odd) {
        // A real prototype pole maps to a conjugate pair (or two real poles).
        const auto [s1, s2] = split(cplx(-1.0));
        const cplx z1 = bilinear(s1);
        const cplx z2 = bilinear(s2);
        Biquad q{1.0, 0.0, -1.0, -(z1 + z2).real(), (z1 * z2).real()};
        sections.push_back(q);
      }
      omega_ref = 2.0 * std::atan(std::sqrt(w0sq));
      break;
    }
  }
  const double gain = std::abs(response(sections, omega_ref));
  sections.front().b0 /= gain;
  sections.front().b1 /= gain;
  sections.front().b2 /= gain;
  return sections;
}

std::vector<double> sosfilt(std::span<const Biquad> sections, std::span<const double> x) {
  std::vector<double> y(x.begin(), x.end());
  for (const auto& q : sections) {
    double z1 = 0.0;
    double z2 = 0.0;
    for (double& v : y) {
      const double in = v;
      const double out = q.b0 * in + z1;
      z1 = q.b1 * in - q.a1 * out + z2;
      z2 = q.b2 * in - q.a2 * out;
      v = out;
    }
  }
  return y;
}

namespace {

// One pass with each section started in the steady state for a constant input equal to x[0].
void run_steady(std::span<const Biquad> sections, std::vector<double>& y) {
  double level = y.front();
  for (const auto& q : sections) {
    const double dc = (q.b0 + q.b1 + q.b2) / (1.0 + q.a1 + q.a2);
    double z1 = (dc - q.b0) * level;
    double z2 = (q.b2 - q.a2 * dc) * level;
    for (double& v : y) {
      const double in = v;
      const double out = q.b0 * in + z1;
      z1 = q.b1 * in - q.a1 * out + z2;
      z2 = q.b2 * in - q.a2 * out;
      v = out;
    }
    level *= dc;
  }
}

}  // namespace

std::vector<double> sosfiltfilt(std::span<const Biquad> sections, std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 2) return {x.begin(), x.end()};
  const std::size_t pad = std::min<std::size_t>(3 * (2 * sections.size() + 1), n - 1);
  std::vector<double> ext;
  ext.reserve(n + 2 * pad);
  for (std::size_t i = pad; i >= 1; --i) ext.push_back(2.0 * x[0] - x[i]);
  ext.insert(ext.end(), x.begin(), x.end());
  for (std::size_t i = 1; i <= pad; ++i) ext.push_back(2.0 * x[n - 1] - x[n - 1 - i]);

  run_steady(sections, ext);
  std::reverse(ext.begin(), ext.end());
  run_steady(sections, ext);
  std::reverse(ext.begin(), ext.end());
  return {ext.begin() + static_cast<std::ptrdiff_t>(pad), ext.begin() + static_cast<std::ptrdiff_t>(pad + n)};
}

std::vector<double> apply_filter(std::span<const double> signal, double rate, const FilterSpec& spec) {
  const auto sections = design_butterworth(spec, rate);
  if (signal.size() <= static_cast<std::size_t>(3 * spec.order)) {
    throw ValidationError(fmt::format("signal too short: {} samples, need more than {}", signal.size(),
                                      3 * spec.order));
  }
  return spec.zero_phase ? sosfiltfilt(sections, signal) : sosfilt(sections, signal);
}

}  // namespace bh
