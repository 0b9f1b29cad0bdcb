#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "brainheart/ml/classifier.hpp"
#include "brainheart/ml/cv.hpp"
#include "brainheart/ml/dataset.hpp"
#include "brainheart/ml/metrics.hpp"

namespace bh::ml {

struct SmoteOptions {
  bool enabled = true;
  int k = 5;
};

struct CvOptions {
  int folds = 5;
  /// Keep each subject's rows in one fold (requires groups).
  bool group_by_subject = false;
  std::uint64_t seed = 42;
  SmoteOptions smote;
  int jobs = 1;
};

/// What one fold trained and tested on.
struct FoldAudit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  /// Rows appended from the augmentation set.
  std::size_t augmented = 0;
  /// Rows added by SMOTE and the k it used (0 when SMOTE did not run).
  std::size_t synthetic = 0;
  int smote_k = 0;
};

struct CvResult {
  std::vector<double> fold_accuracy;
  /// Out-of-fold prediction for every row.
  std::vector<int> predictions;
  MetricsReport pooled;
  std::vector<FoldAudit> audit;

  double mean_accuracy() const;
  /// Sample sd of the fold accuracies.
  double sd_accuracy() const;
};

/// Extra training rows. Row i is used in a fold only when source[i] (an index
/// into the main data) is in that fold's training split; use kNoSource to
/// always include it. Test splits never contain augmentation rows.
struct Augmentation {
  static constexpr std::size_t kNoSource = std::numeric_limits<std::size_t>::max();
  Dataset data;
  std::vector<std::size_t> source;
};

/// Trains one model per fold on the training split (plus matching
/// augmentation rows), oversampled with SMOTE when enabled, and predicts the
/// held-out split. SMOTE sees training rows only. When the smallest class in
/// a training split is too small for the requested k, k drops to
/// (count - 1) and the change is logged; SMOTE is skipped below 2 rows.
CvResult cross_validate(const Dataset& data, const ClassifierConfig& cfg, const CvOptions& options,
                        std::span<const std::string> groups = {}, const Augmentation* augmentation = nullptr);

/// Fold split used by cross_validate.
Folds make_folds(const Dataset& data, const CvOptions& options, std::span<const std::string> groups);

/// Training rows for one fold with optional SMOTE; fills the SMOTE fields of
/// the audit.
Dataset oversample_training(const Dataset& train, const SmoteOptions& smote, std::uint64_t seed, FoldAudit& audit);

}  // namespace bh::ml
