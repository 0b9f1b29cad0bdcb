#include "brainheart/ml/cv.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "brainheart/util/error.hpp"
#include "brainheart/util/random.hpp"

namespace bh::ml {

Folds stratified_kfold(std::span<const int> y, int n_classes, int k, std::uint64_t seed) {
  if (k < 2) throw ValidationError(fmt::format("k must be >= 2, got {}", k));
  std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(n_classes));
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] < 0 || y[i] >= n_classes) throw ValidationError(fmt::format("label {} outside [0, {})", y[i], n_classes));
    by_class[static_cast<std::size_t>(y[i])].push_back(i);
  }
  Rng rng(seed);
  std::vector<std::size_t> sequence;
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& members = by_class[c];
    if (members.empty()) continue;
    if (members.size() < static_cast<std::size_t>(k)) {
      throw ValidationError(fmt::format("class {} has {} rows, fewer than k = {}", c, members.size(), k));
    }
    rng.shuffle(members.begin(), members.end());
    sequence.insert(sequence.end(), members.begin(), members.end());
  }
  Folds folds(static_cast<std::size_t>(k));
  for (std::size_t p = 0; p < sequence.size(); ++p) folds[p % folds.size()].push_back(sequence[p]);
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

Folds stratified_kfold(const FeatureTable& table, Target target, int k, std::uint64_t seed) {
  const auto d = make_dataset(table, target);
  try {
    return stratified_kfold(d.y, d.n_classes, k, seed);
  } catch (const ValidationError&) {
    const auto counts = d.class_counts();
    for (std::size_t c = 0; c < counts.size(); ++c) {
      if (counts[c] < static_cast<std::size_t>(k)) {
        throw ValidationError(fmt::format("class '{}' has {} rows, fewer than k = {}", d.class_names[c], counts[c], k));
      }
    }
    throw;
  }
}

Folds group_kfold(std::span<const std::string> groups, int k, std::uint64_t seed) {
  if (k < 2) throw ValidationError(fmt::format("k must be >= 2, got {}", k));
  std::vector<std::string> names(groups.begin(), groups.end());
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  if (names.size() < static_cast<std::size_t>(k)) {
    throw ValidationError(fmt::format("{} groups, fewer than k = {}", names.size(), k));
  }
  Rng rng(seed);
  rng.shuffle(names.begin(), names.end());
  Folds folds(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto pos = static_cast<std::size_t>(std::find(names.begin(), names.end(), groups[i]) - names.begin());
    folds[pos % folds.size()].push_back(i);
  }
  return folds;
}

std::vector<std::size_t> training_indices(const Folds& folds, std::size_t f, std::size_t n) {
  std::vector<char> test(n, 0);
  for (const auto i : folds.at(f)) test[i] = 1;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!test[i]) out.push_back(i);
  }
  return out;
}

}  // namespace bh::ml
