#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "brainheart/data/feature_table.hpp"

namespace bh::ml {

/// Dense row-major matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
  std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }

  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  bool operator==(const Matrix&) const = default;
};

/// Features plus integer class labels 0..n_classes-1.
struct Dataset {
  Matrix x;
  std::vector<int> y;
  int n_classes = 0;
  std::vector<std::string> class_names;

  std::size_t size() const { return y.size(); }
  std::vector<std::size_t> class_counts() const;
};

/// Which TrialMeta field supplies the class label.
enum class Target { condition, subcondition, subject };

std::string_view to_string(Target target);
Target parse_target(std::string_view text);

/// Class names come from the label values present, sorted. Throws
/// ValidationError for non-finite features.
Dataset make_dataset(const FeatureTable& table, Target target);

/// Same, but with a fixed class list; rows with other labels are rejected.
Dataset make_dataset(const FeatureTable& table, Target target, const std::vector<std::string>& class_names);

/// Rows at the given indices.
Dataset take(const Dataset& d, std::span<const std::size_t> indices);
Matrix take_rows(const Matrix& m, std::span<const std::size_t> indices);

/// Permutation that sorts rows lexicographically by (features..., label).
/// Training on the permuted data makes models independent of input row order.
std::vector<std::size_t> canonical_order(const Matrix& x, std::span<const double> label);

/// Throws ValidationError unless every value is finite and labels are in range.
void check_training_data(const Matrix& x, std::span<const int> y, int n_classes);

}  // namespace bh::ml
