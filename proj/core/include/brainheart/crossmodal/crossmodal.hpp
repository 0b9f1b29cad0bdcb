#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "brainheart/data/feature_table.hpp"
#include "brainheart/ml/classifier.hpp"
#include "brainheart/ml/dataset.hpp"
#include "brainheart/ml/gbt.hpp"
#include "brainheart/ml/metrics.hpp"
#include "brainheart/ml/pipeline.hpp"

namespace bh::crossmodal {

inline constexpr std::size_t kMinAlignedPairs = 30;

struct CrossModalOptions {
  ml::ClassifierConfig classifier;
  /// Regression settings; the objective is forced to squared error.
  ml::GbtConfig regressor;
  ml::Target target = ml::Target::subcondition;
  ml::SmoteOptions smote;
  std::uint64_t seed = 42;
  int jobs = 1;
};

/// Both tables reordered by trial key. Throws DataError "alignment failure"
/// listing every unmatched or duplicated key.
struct AlignedTables {
  FeatureTable hrv;
  FeatureTable eeg;
};
AlignedTables align_tables(const FeatureTable& hrv, const FeatureTable& eeg);

/// Averages "ch<N>_<feature>" columns over channels, giving one "<feature>"
/// column per feature in first-seen order. Other columns are dropped.
FeatureTable average_channels(const FeatureTable& eeg);

struct CrossModalModel {
  /// HRV inputs -> EEG feature outputs.
  ml::MultiGbtModel regressor;
  ml::Classifier eeg_classifier;
  std::vector<std::string> hrv_names;
  std::vector<std::string> eeg_names;
  ml::Target target = ml::Target::subcondition;
};

/// HRV columns must be exactly meanNN, SDNN, RMSSD, SD1, SD2. The regressor is
/// fit on aligned pairs; the classifier on the EEG rows (SMOTE-balanced when
/// enabled). Needs at least kMinAlignedPairs pairs.
CrossModalModel train_crossmodal(const FeatureTable& hrv, const FeatureTable& eeg, const CrossModalOptions& options);

struct CrossModalPrediction {
  ml::Matrix regressed;
  std::vector<int> predicted;
  /// Present when labels were scored.
  std::optional<ml::MetricsReport> metrics;
};

/// Throws DataError "name mismatch" unless hrv's columns equal the model's
/// inputs in order. With score = true the table's labels (model.target) are
/// evaluated against the predictions.
CrossModalPrediction predict_crossmodal(const CrossModalModel& model, const FeatureTable& hrv, bool score = false);

/// k-fold evaluation over aligned trials, stratified on the target: each fold
/// trains a full cross-modal model on its training trials and classifies the
/// regressed features of its test trials.
ml::CvResult cross_validate_crossmodal(const FeatureTable& hrv, const FeatureTable& eeg, const CrossModalOptions& options,
                                       int folds = 5);

std::string to_json(const CrossModalModel& model);
CrossModalModel crossmodal_from_json(const std::string& text);

}  // namespace bh::crossmodal
