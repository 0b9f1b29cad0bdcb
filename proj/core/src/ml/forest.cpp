#include "brainheart/ml/forest.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "brainheart/util/error.hpp"
#include "brainheart/util/parallel.hpp"
#include "brainheart/util/random.hpp"

namespace bh::ml {

void ForestConfig::validate() const {
  if (n_trees < 1) throw ValidationError(fmt::format("n_trees must be positive, got {}", n_trees));
  if (max_depth < 1) throw ValidationError(fmt::format("max_depth must be >= 1, got {}", max_depth));
  if (max_features < 0) throw ValidationError(fmt::format("max_features must be >= 0, got {}", max_features));
  if (min_samples_leaf < 1) throw ValidationError(fmt::format("min_samples_leaf must be positive, got {}", min_samples_leaf));
  if (min_samples_split < 2) throw ValidationError(fmt::format("min_samples_split must be >= 2, got {}", min_samples_split));
}

int argmax(std::span<const double> v) {
  int best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[static_cast<std::size_t>(best)]) best = static_cast<int>(i);
  }
  return best;
}

void check_classes(const Dataset& data) {
  check_training_data(data.x, data.y, data.n_classes);
  const auto counts = data.class_counts();
  const auto present = std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; });
  if (present < 2) throw ValidationError("single-class target: at least 2 classes required");
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] == 1) {
      throw ValidationError(fmt::format("class '{}' has 1 row, at least 2 required",
                                        c < data.class_names.size() ? data.class_names[c] : std::to_string(c)));
    }
  }
}

std::vector<double> ForestModel::predict_proba(std::span<const double> x) const {
  if (x.size() != n_features) throw ValidationError(fmt::format("expected {} features, got {}", n_features, x.size()));
  std::vector<double> p(static_cast<std::size_t>(n_classes), 0.0);
  for (const auto& t : trees) {
    const auto leaf = t.predict(x);
    for (std::size_t c = 0; c < p.size(); ++c) p[c] += leaf[c];
  }
  for (double& v : p) v /= static_cast<double>(trees.size());
  return p;
}

int ForestModel::predict(std::span<const double> x) const { return argmax(predict_proba(x)); }

std::vector<int> ForestModel::predict(const Matrix& x) const {
  std::vector<int> out(x.rows);
  for (std::size_t r = 0; r < x.rows; ++r) out[r] = predict(x.row(r));
  return out;
}

ForestModel train_forest(const Dataset& data, const ForestConfig& cfg, int jobs) {
  cfg.validate();
  check_classes(data);

  std::vector<double> label(data.y.begin(), data.y.end());
  const auto order = canonical_order(data.x, label);
  const Dataset d = take(data, order);

  const auto counts = d.class_counts();
  std::vector<double> class_weight(counts.size(), 1.0);
  if (cfg.balanced) {
    for (std::size_t c = 0; c < counts.size(); ++c) {
      if (counts[c] > 0) {
        class_weight[c] = static_cast<double>(d.size()) / (static_cast<double>(d.n_classes) * static_cast<double>(counts[c]));
      }
    }
  }

  ClassTreeParams params;
  params.max_depth = cfg.max_depth;
  params.min_samples_leaf = cfg.min_samples_leaf;
  params.min_samples_split = cfg.min_samples_split;
  params.max_features = cfg.max_features > 0
                            ? cfg.max_features
                            : std::max(1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(d.x.cols)))));

  ForestModel model;
  model.n_classes = d.n_classes;
  model.n_features = d.x.cols;
  model.class_names = d.class_names;
  model.trees.resize(static_cast<std::size_t>(cfg.n_trees));

  const SortedColumns shared(d.x);
  parallel_for(model.trees.size(), jobs, [&](std::size_t t) {
    auto p = params;
    p.seed = mix_seed(cfg.seed, t);
    if (!cfg.bootstrap) {
      std::vector<double> w(d.size());
      for (std::size_t r = 0; r < d.size(); ++r) w[r] = class_weight[static_cast<std::size_t>(d.y[r])];
      model.trees[t] = build_classification_tree(d.x, shared, d.y, d.n_classes, w, p);
      return;
    }
    Rng rng(mix_seed(p.seed, 0xB007));
    std::vector<std::size_t> pick(d.size());
    for (auto& i : pick) i = static_cast<std::size_t>(rng.below(d.size()));
    std::sort(pick.begin(), pick.end());
    const Dataset sample = take(d, pick);
    std::vector<double> w(sample.size());
    for (std::size_t r = 0; r < sample.size(); ++r) w[r] = class_weight[static_cast<std::size_t>(sample.y[r])];
    model.trees[t] = build_classification_tree(sample.x, SortedColumns(sample.x), sample.y, d.n_classes, w, p);
  });
  return model;
}

ForestModel train_forest(const FeatureTable& table, Target target, const ForestConfig& cfg, int jobs) {
  auto model = train_forest(make_dataset(table, target), cfg, jobs);
  model.feature_names = table.feature_names;
  return model;
}

}  // namespace bh::ml
