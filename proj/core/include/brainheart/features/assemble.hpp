#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "brainheart/data/feature_table.hpp"
#include "brainheart/data/tensor.hpp"

namespace bh {

enum class FeatureMode { hrv, catch22, bandpower, eeg_combined };

std::string_view to_string(FeatureMode mode);
FeatureMode parse_feature_mode(std::string_view text);

/// Column names produced for a given mode and channel count.
std::vector<std::string> feature_names(FeatureMode mode, std::size_t channels);

/// One row per trial cell, in tensor order.
///
/// hrv: millisecond tensors are read as RR intervals (time axis = beat index);
/// microvolt/millivolt tensors are treated as ECG and go through R-peak
/// detection first. catch22 runs on every channel; single-channel tables keep
/// the bare feature names, otherwise columns are prefixed "ch<k>_".
/// Trials whose features fail or come out non-finite are dropped and logged.
/// Throws DataError ("empty tensor") when there are no trials.
FeatureTable assemble_features(const TrialSet& trials, FeatureMode mode, int jobs = 1);

}  // namespace bh
