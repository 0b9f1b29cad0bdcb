#pragma once

#include <span>
#include <vector>

namespace bh {

enum class FilterKind { bandpass, highpass, lowpass };

struct FilterSpec {
  FilterKind kind = FilterKind::bandpass;
  double low_hz = 1.0;   // unused for lowpass
  double high_hz = 40.0; // unused for highpass
  int order = 4;
  bool zero_phase = true;
};

/// Second-order section in transposed direct form II, a0 normalised to 1.
struct Biquad {
  double b0, b1, b2, a1, a2;
};

/// Throws ValidationError ("cutoff ≥ Nyquist", non-positive cutoffs, order
/// outside [1, 8]).
void validate_filter(const FilterSpec& spec, double rate);

/// Digital Butterworth filter via the bilinear transform with prewarped
/// cutoffs. A bandpass of order n has 2n poles. Gain is 1 at DC (lowpass),
/// Nyquist (highpass) or the geometric centre of the passband (bandpass).
std::vector<Biquad> design_butterworth(const FilterSpec& spec, double rate);

/// Causal cascade starting from rest.
std::vector<double> sosfilt(std::span<const Biquad> sections, std::span<const double> x);

/// Forward-backward application with odd-extension padding and steady-state
/// initial conditions; zero phase, squared magnitude.
std::vector<double> sosfiltfilt(std::span<const Biquad> sections, std::span<const double> x);

/// Throws ValidationError for an invalid spec and "signal too short" when the
/// input has no more than 3·order samples.
std::vector<double> apply_filter(std::span<const double> signal, double rate, const FilterSpec& spec);

}  // namespace bh
