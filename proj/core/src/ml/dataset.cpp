#include "brainheart/ml/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "brainheart/util/error.hpp"

namespace bh::ml {

namespace {

std::string label_of(const TrialMeta& m, Target target) {
  switch (target) {
    case Target::condition: return std::string(to_string(m.condition));
    case Target::subcondition: return std::string(to_string(m.subcondition));
    case Target::subject: return m.subject_id;
  }
  return {};
}

}  // namespace

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols) throw ValidationError(fmt::format("row {} has {} values, expected {}", r, rows[r].size(), m.cols));
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> c(static_cast<std::size_t>(n_classes), 0);
  for (const int v : y) ++c[static_cast<std::size_t>(v)];
  return c;
}

std::string_view to_string(Target target) {
  switch (target) {
    case Target::condition: return "condition";
    case Target::subcondition: return "subcondition";
    case Target::subject: return "subject";
  }
  return "?";
}

Target parse_target(std::string_view text) {
  for (const auto t : {Target::condition, Target::subcondition, Target::subject}) {
    if (to_string(t) == text) return t;
  }
  throw ValidationError(fmt::format("unknown target '{}'", text));
}

Dataset make_dataset(const FeatureTable& table, Target target) {
  std::vector<std::string> names;
  for (const auto& m : table.labels) names.push_back(label_of(m, target));
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return make_dataset(table, target, names);
}

Dataset make_dataset(const FeatureTable& table, Target target, const std::vector<std::string>& class_names) {
  table.validate();
  Dataset d;
  d.x = Matrix::from_rows(table.rows);
  d.x.cols = table.width();
  d.class_names = class_names;
  d.n_classes = static_cast<int>(class_names.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto label = label_of(table.labels[i], target);
    const auto it = std::find(class_names.begin(), class_names.end(), label);
    if (it == class_names.end()) throw ValidationError(fmt::format("row {}: unknown label '{}'", i, label));
    d.y.push_back(static_cast<int>(it - class_names.begin()));
  }
  for (std::size_t i = 0; i < d.x.data.size(); ++i) {
    if (!std::isfinite(d.x.data[i])) {
      throw ValidationError(fmt::format("NaN features: non-finite value in row {}, column '{}'", i / d.x.cols,
                                        table.feature_names[i % d.x.cols]));
    }
  }
  return d;
}

Matrix take_rows(const Matrix& m, std::span<const std::size_t> indices) {
  Matrix out(indices.size(), m.cols);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto src = m.row(indices[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

Dataset take(const Dataset& d, std::span<const std::size_t> indices) {
  Dataset out;
  out.x = take_rows(d.x, indices);
  out.n_classes = d.n_classes;
  out.class_names = d.class_names;
  for (const auto i : indices) out.y.push_back(d.y[i]);
  return out;
}

std::vector<std::size_t> canonical_order(const Matrix& x, std::span<const double> label) {
  std::vector<std::size_t> order(x.rows);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ra = x.row(a);
    const auto rb = x.row(b);
    for (std::size_t c = 0; c < x.cols; ++c) {
      if (ra[c] != rb[c]) return ra[c] < rb[c];
    }
    return label[a] < label[b];
  });
  return order;
}

void check_training_data(const Matrix& x, std::span<const int> y, int n_classes) {
  if (x.rows != y.size()) throw ValidationError(fmt::format("{} feature rows but {} labels", x.rows, y.size()));
  if (x.rows == 0) throw ValidationError("no training rows");
  for (std::size_t i = 0; i < x.data.size(); ++i) {
    if (!std::isfinite(x.data[i])) throw ValidationError(fmt::format("NaN features in training row {}", i / x.cols));
  }
  for (const int v : y) {
    if (v < 0 || v >= n_classes) throw ValidationError(fmt::format("label {} outside [0, {})", v, n_classes));
  }
}

}  // namespace bh::ml
