#include "brainheart/ml/gbt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "brainheart/ml/forest.hpp"
#include "brainheart/util/error.hpp"
#include "brainheart/util/parallel.hpp"

namespace bh::ml {

namespace {

constexpr double kMinHessian = 1e-16;
constexpr double kEps = 1e-15;

double sigmoid(double z) { return z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z)); }

void softmax_in_place(std::span<double> z) {
  const double top = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) sum += (v = std::exp(v - top));
  for (double& v : z) v /= sum;
}

GradientTreeParams tree_params(const GbtConfig& cfg) {
  GradientTreeParams p;
  p.max_depth = cfg.max_depth;
  p.lambda = cfg.lambda;
  p.min_child_weight = cfg.min_child_weight;
  p.learning_rate = cfg.learning_rate;
  return p;
}

// Adds each tree's leaf value to the margin of the rows that landed in it.
void apply_leaves(const Tree& tree, const std::vector<int>& leaf_of_row, std::vector<double>& margin,
                  std::size_t stride, std::size_t offset) {
  for (std::size_t r = 0; r < leaf_of_row.size(); ++r) {
    const auto& node = tree.nodes[static_cast<std::size_t>(leaf_of_row[r])];
    margin[r * stride + offset] += tree.values[node.value];
  }
}

}  // namespace

std::string_view to_string(Objective objective) {
  switch (objective) {
    case Objective::softmax_multiclass: return "softmax_multiclass";
    case Objective::logistic_binary: return "logistic_binary";
    case Objective::squared_error_regression: return "squared_error_regression";
  }
  return "?";
}

Objective parse_objective(std::string_view text) {
  for (const auto o : {Objective::softmax_multiclass, Objective::logistic_binary, Objective::squared_error_regression}) {
    if (to_string(o) == text) return o;
  }
  throw ValidationError(fmt::format("unknown objective '{}'", text));
}

void GbtConfig::validate() const {
  if (n_trees < 1) throw ValidationError(fmt::format("n_trees must be positive, got {}", n_trees));
  if (max_depth < 1) throw ValidationError(fmt::format("max_depth must be >= 1, got {}", max_depth));
  if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
    throw ValidationError(fmt::format("learning_rate must be in (0, 1], got {}", learning_rate));
  }
  if (!(lambda >= 0.0)) throw ValidationError(fmt::format("lambda must be >= 0, got {}", lambda));
  if (!(min_child_weight >= 0.0)) throw ValidationError(fmt::format("min_child_weight must be >= 0, got {}", min_child_weight));
  if (n_classes < 0) throw ValidationError(fmt::format("n_classes must be >= 0, got {}", n_classes));
  if (objective == Objective::softmax_multiclass && n_classes == 1) {
    throw ValidationError("num_classes = 1 is invalid for softmax_multiclass");
  }
  if (objective == Objective::logistic_binary && n_classes != 0 && n_classes != 2) {
    throw ValidationError(fmt::format("logistic_binary needs 2 classes, got {}", n_classes));
  }
}

std::vector<double> GbtModel::margins(std::span<const double> x) const {
  if (x.size() != n_features) throw ValidationError(fmt::format("expected {} features, got {}", n_features, x.size()));
  const auto k = static_cast<std::size_t>(trees_per_round);
  std::vector<double> z(k, base_score);
  for (std::size_t t = 0; t < trees.size(); ++t) z[t % k] += trees[t].predict(x)[0];
  return z;
}

std::vector<double> GbtModel::predict_proba(std::span<const double> x) const {
  auto z = margins(x);
  switch (objective) {
    case Objective::softmax_multiclass: softmax_in_place(z); return z;
    case Objective::logistic_binary: {
      const double p = sigmoid(z[0]);
      return {1.0 - p, p};
    }
    case Objective::squared_error_regression: break;
  }
  throw ValidationError("predict_proba on a regression model");
}

int GbtModel::predict(std::span<const double> x) const { return argmax(predict_proba(x)); }

std::vector<int> GbtModel::predict(const Matrix& x) const {
  std::vector<int> out(x.rows);
  for (std::size_t r = 0; r < x.rows; ++r) out[r] = predict(x.row(r));
  return out;
}

double GbtModel::predict_value(std::span<const double> x) const {
  if (objective != Objective::squared_error_regression) throw ValidationError("predict_value on a classifier");
  return margins(x)[0];
}

std::vector<double> GbtModel::predict_values(const Matrix& x) const {
  std::vector<double> out(x.rows);
  for (std::size_t r = 0; r < x.rows; ++r) out[r] = predict_value(x.row(r));
  return out;
}

GbtModel train_gbt(const Dataset& data, const GbtConfig& cfg_in) {
  GbtConfig cfg = cfg_in;
  cfg.validate();
  if (cfg.objective == Objective::squared_error_regression) {
    throw ValidationError("squared_error_regression needs train_gbt_regression");
  }
  if (cfg.n_classes != 0 && cfg.n_classes != data.n_classes) {
    throw ValidationError(fmt::format("n_classes = {} but the data has {}", cfg.n_classes, data.n_classes));
  }
  if (cfg.objective == Objective::softmax_multiclass && data.n_classes < 2) {
    throw ValidationError(fmt::format("num_classes = {} is invalid for softmax_multiclass", data.n_classes));
  }
  if (cfg.objective == Objective::logistic_binary && data.n_classes != 2) {
    throw ValidationError(fmt::format("logistic_binary needs 2 classes, got {}", data.n_classes));
  }
  check_classes(data);

  std::vector<double> label(data.y.begin(), data.y.end());
  const auto order = canonical_order(data.x, label);
  const Dataset d = take(data, order);
  const SortedColumns cols(d.x);
  const std::size_t n = d.size();

  GbtModel model;
  model.objective = cfg.objective;
  model.n_classes = d.n_classes;
  model.n_features = d.x.cols;
  model.class_names = d.class_names;
  const bool softmax = cfg.objective == Objective::softmax_multiclass;
  const std::size_t k = softmax ? static_cast<std::size_t>(d.n_classes) : 1;
  model.trees_per_round = static_cast<int>(k);

  std::vector<double> margin(n * k, 0.0);
  std::vector<double> grad(n), hess(n), prob(n * k);
  const auto params = tree_params(cfg);
  std::vector<int> leaves;

  auto update_prob = [&] {
    for (std::size_t r = 0; r < n; ++r) {
      if (softmax) {
        std::copy_n(margin.begin() + static_cast<std::ptrdiff_t>(r * k), k, prob.begin() + static_cast<std::ptrdiff_t>(r * k));
        softmax_in_place({prob.data() + r * k, k});
      } else {
        prob[r] = sigmoid(margin[r]);
      }
    }
  };
  auto loss = [&] {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double p = softmax ? prob[r * k + static_cast<std::size_t>(d.y[r])] : (d.y[r] == 1 ? prob[r] : 1.0 - prob[r]);
      s -= std::log(std::max(p, kEps));
    }
    return s / static_cast<double>(n);
  };

  update_prob();
  for (int round = 0; round < cfg.n_trees; ++round) {
    // All trees of a round are fit to gradients at the start of the round.
    for (std::size_t c = 0; c < k; ++c) {
      for (std::size_t r = 0; r < n; ++r) {
        const double p = prob[r * k + c];
        const double target = softmax ? (static_cast<std::size_t>(d.y[r]) == c ? 1.0 : 0.0) : static_cast<double>(d.y[r]);
        grad[r] = p - target;
        hess[r] = std::max((softmax ? 2.0 : 1.0) * p * (1.0 - p), kMinHessian);
      }
      model.trees.push_back(build_gradient_tree(d.x, cols, grad, hess, params, &leaves));
      apply_leaves(model.trees.back(), leaves, margin, k, c);
    }
    update_prob();
    model.loss_history.push_back(loss());
  }
  return model;
}

GbtModel train_gbt(const FeatureTable& table, Target target, const GbtConfig& cfg) {
  auto model = train_gbt(make_dataset(table, target), cfg);
  model.feature_names = table.feature_names;
  return model;
}

GbtModel train_gbt_regression(const Matrix& x_in, std::span<const double> y_in, const GbtConfig& cfg_in) {
  GbtConfig cfg = cfg_in;
  cfg.objective = Objective::squared_error_regression;
  cfg.validate();
  if (x_in.rows != y_in.size()) throw ValidationError(fmt::format("{} feature rows but {} targets", x_in.rows, y_in.size()));
  if (x_in.rows < 2) throw ValidationError("regression needs at least 2 rows");
  for (const double v : x_in.data) {
    if (!std::isfinite(v)) throw ValidationError("NaN features in regression input");
  }
  for (const double v : y_in) {
    if (!std::isfinite(v)) throw ValidationError("non-finite regression target");
  }

  const auto order = canonical_order(x_in, y_in);
  const Matrix x = take_rows(x_in, order);
  std::vector<double> y(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) y[i] = y_in[order[i]];
  const SortedColumns cols(x);
  const std::size_t n = y.size();

  GbtModel model;
  model.objective = Objective::squared_error_regression;
  model.n_features = x.cols;
  model.base_score = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);

  std::vector<double> pred(n, model.base_score), grad(n), hess(n, 1.0);
  const auto params = tree_params(cfg);
  std::vector<int> leaves;
  for (int round = 0; round < cfg.n_trees; ++round) {
    for (std::size_t r = 0; r < n; ++r) grad[r] = pred[r] - y[r];
    model.trees.push_back(build_gradient_tree(x, cols, grad, hess, params, &leaves));
    apply_leaves(model.trees.back(), leaves, pred, 1, 0);
    double sse = 0.0;
    for (std::size_t r = 0; r < n; ++r) sse += (pred[r] - y[r]) * (pred[r] - y[r]);
    model.loss_history.push_back(sse / static_cast<double>(n));
  }
  return model;
}

std::vector<double> MultiGbtModel::predict(std::span<const double> x) const {
  std::vector<double> out(outputs.size());
  for (std::size_t j = 0; j < outputs.size(); ++j) out[j] = outputs[j].predict_value(x);
  return out;
}

Matrix MultiGbtModel::predict(const Matrix& x) const {
  Matrix out(x.rows, outputs.size());
  for (std::size_t r = 0; r < x.rows; ++r) {
    for (std::size_t j = 0; j < outputs.size(); ++j) out(r, j) = outputs[j].predict_value(x.row(r));
  }
  return out;
}

MultiGbtModel train_gbt_multi(const Matrix& x, const Matrix& y, const GbtConfig& cfg, int jobs) {
  if (x.rows != y.rows) throw ValidationError(fmt::format("{} feature rows but {} target rows", x.rows, y.rows));
  if (y.cols == 0) throw ValidationError("no regression outputs");
  MultiGbtModel model;
  model.outputs.resize(y.cols);
  parallel_for(y.cols, jobs, [&](std::size_t j) {
    std::vector<double> col(y.rows);
    for (std::size_t r = 0; r < y.rows; ++r) col[r] = y(r, j);
    model.outputs[j] = train_gbt_regression(x, col, cfg);
  });
  return model;
}

double r_squared(std::span<const double> y_true, std::span<const double> y_pred) {
  if (y_true.size() != y_pred.size() || y_true.empty()) {
    throw ValidationError(fmt::format("r_squared: lengths {} and {}", y_true.size(), y_pred.size()));
  }
  const double m = std::accumulate(y_true.begin(), y_true.end(), 0.0) / static_cast<double>(y_true.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    ss_res += (y_true[i] - y_pred[i]) * (y_true[i] - y_pred[i]);
    ss_tot += (y_true[i] - m) * (y_true[i] - m);
  }
  if (ss_tot == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return 1.0 - ss_res / ss_tot;
}

}  // namespace bh::ml
