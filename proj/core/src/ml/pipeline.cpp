#include "brainheart/ml/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "brainheart/ml/smote.hpp"
#include "brainheart/util/error.hpp"
#include "brainheart/util/log.hpp"
#include "brainheart/util/parallel.hpp"
#include "brainheart/util/random.hpp"

namespace bh::ml {

double CvResult::mean_accuracy() const {
  if (fold_accuracy.empty()) return 0.0;
  return std::accumulate(fold_accuracy.begin(), fold_accuracy.end(), 0.0) / static_cast<double>(fold_accuracy.size());
}

double CvResult::sd_accuracy() const {
  if (fold_accuracy.size() < 2) return 0.0;
  const double m = mean_accuracy();
  double s = 0.0;
  for (const double a : fold_accuracy) s += (a - m) * (a - m);
  return std::sqrt(s / static_cast<double>(fold_accuracy.size() - 1));
}

Folds make_folds(const Dataset& data, const CvOptions& options, std::span<const std::string> groups) {
  if (!options.group_by_subject) return stratified_kfold(data.y, data.n_classes, options.folds, options.seed);
  if (groups.size() != data.size()) {
    throw ValidationError(fmt::format("subject-wise folds need one group per row ({} groups, {} rows)", groups.size(), data.size()));
  }
  return group_kfold(groups, options.folds, options.seed);
}

Dataset oversample_training(const Dataset& train, const SmoteOptions& smote, std::uint64_t seed, FoldAudit& audit) {
  if (!smote.enabled) return train;
  const auto counts = train.class_counts();
  const auto majority = *std::max_element(counts.begin(), counts.end());
  std::size_t smallest = majority;
  for (const auto c : counts) {
    if (c > 0 && c < majority) smallest = std::min(smallest, c);
  }
  if (smallest == majority) return train;
  if (smallest < 2) {
    logger().warn("SMOTE skipped: a minority class has a single training row");
    return train;
  }
  int k = smote.k;
  if (static_cast<std::size_t>(k) > smallest - 1) {
    k = static_cast<int>(smallest - 1);
    logger().info("SMOTE k reduced from {} to {} (smallest minority class has {} rows)", smote.k, k, smallest);
  }
  auto out = ml::smote(train, k, seed);
  audit.synthetic = out.size() - train.size();
  audit.smote_k = k;
  return out;
}

CvResult cross_validate(const Dataset& data, const ClassifierConfig& cfg, const CvOptions& options,
                        std::span<const std::string> groups, const Augmentation* augmentation) {
  check_training_data(data.x, data.y, data.n_classes);
  if (augmentation) {
    if (augmentation->source.size() != augmentation->data.size()) {
      throw ValidationError("augmentation needs one source index per row");
    }
    if (augmentation->data.x.cols != data.x.cols || augmentation->data.n_classes != data.n_classes) {
      throw ValidationError("augmentation rows do not match the data's features or classes");
    }
  }
  const auto folds = make_folds(data, options, groups);

  CvResult result;
  result.fold_accuracy.resize(folds.size());
  result.audit.resize(folds.size());
  result.predictions.assign(data.size(), -1);

  parallel_for(folds.size(), options.jobs, [&](std::size_t f) {
    auto& audit = result.audit[f];
    audit.test = folds[f];
    audit.train = training_indices(folds, f, data.size());
    std::vector<char> in_train(data.size(), 0);
    for (const auto i : audit.train) in_train[i] = 1;
    for (const auto i : audit.test) {
      if (in_train[i]) throw DataError(fmt::format("fold {}: row {} is in both splits", f, i));
    }

    Dataset train = take(data, audit.train);
    if (augmentation) {
      std::vector<std::size_t> extra;
      for (std::size_t i = 0; i < augmentation->data.size(); ++i) {
        const auto src = augmentation->source[i];
        if (src == Augmentation::kNoSource || (src < data.size() && in_train[src])) extra.push_back(i);
      }
      const auto more = take(augmentation->data, extra);
      train.x.data.insert(train.x.data.end(), more.x.data.begin(), more.x.data.end());
      train.x.rows += more.x.rows;
      train.y.insert(train.y.end(), more.y.begin(), more.y.end());
      audit.augmented = extra.size();
    }
    const auto fold_seed = mix_seed(options.seed, f);
    train = oversample_training(train, options.smote, fold_seed, audit);

    auto fold_cfg = cfg;
    fold_cfg.forest.seed = mix_seed(cfg.forest.seed, f);
    fold_cfg.gbt.seed = mix_seed(cfg.gbt.seed, f);
    const auto model = train_classifier(train, fold_cfg, 1);
    const auto test = take(data, audit.test);
    const auto pred = model.predict(test.x);
    std::size_t hit = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
      result.predictions[audit.test[i]] = pred[i];
      hit += pred[i] == test.y[i];
    }
    result.fold_accuracy[f] = audit.test.empty() ? 0.0 : static_cast<double>(hit) / static_cast<double>(audit.test.size());
  });
  result.pooled = evaluate(data.y, result.predictions, data.class_names);
  return result;
}

}  // namespace bh::ml
