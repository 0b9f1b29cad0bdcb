#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "brainheart/data/tensor.hpp"

namespace bh {

struct EpochSpec {
  double t_min = -3.0;  // s, pre-stimulus (negative)
  double t_max = 5.0;   // s, default epoch end after the event
  double baseline_start = -3.0;
  double baseline_end = 0.0;
};

/// Throws ValidationError unless t_min < 0 < t_max and the baseline window is
/// ordered and ends at or before the event.
void validate_epoch_spec(const EpochSpec& spec);

struct EpochResult {
  SignalTensor epochs;                 // (trial, channel, time)
  std::vector<std::size_t> kept;       // indices into the event list
  std::vector<std::size_t> dropped;    // events too close to the recording edge
};

/// Cuts one epoch per event from a channel × time recording. `t_max_per_event`
/// (optional, same length as onsets) gives ragged epoch ends; the time axis is
/// sized for the longest and shorter epochs are padded. Events whose window
/// leaves the recording are dropped and logged.
EpochResult epoch_signal(const std::vector<std::vector<double>>& recording, std::span<const double> onsets,
                         const EpochSpec& spec, double rate, Unit unit = Unit::microvolt,
                         std::span<const double> t_max_per_event = {});

/// Subtracts the per-channel baseline-window mean. Epoch sample 0 sits at
/// spec.t_min. Throws ValidationError when the window falls outside the epoch or
/// covers no samples.
SignalTensor baseline_correct(const SignalTensor& epochs, const EpochSpec& spec);

struct ArtifactResult {
  SignalTensor kept;
  std::vector<std::size_t> kept_indices;
  std::vector<std::size_t> rejected;
};

inline constexpr double kDefaultArtifactLimit = 100.0;

/// Whole-epoch rejection when any channel's peak-to-peak exceeds `limit`.
ArtifactResult reject_artifacts(const SignalTensor& epochs, double limit = kDefaultArtifactLimit);

/// z-scores valid samples with the sample sd. Throws ValidationError for
/// fewer than 2 samples and DataError for zero variance.
std::vector<double> zscore_normalize(std::span<const double> samples);

/// Applies zscore_normalize to every trial and channel.
SignalTensor zscore_epochs(const SignalTensor& epochs);

/// Subtracts the cross-channel mean at each sample (channel × time input).
std::vector<std::vector<double>> average_reference(const std::vector<std::vector<double>>& channels);

}  // namespace bh
