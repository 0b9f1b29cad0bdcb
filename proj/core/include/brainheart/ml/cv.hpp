#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "brainheart/data/feature_table.hpp"
#include "brainheart/ml/dataset.hpp"

namespace bh::ml {

/// Test-fold index lists; each index appears in exactly one fold and fold
/// indices are ascending.
using Folds = std::vector<std::vector<std::size_t>>;

/// Rows of each class are shuffled with Rng(seed), the classes are
/// concatenated, and position p goes to fold p mod k. Every fold then holds
/// floor or ceil of count/k rows of each class. Throws ValidationError when a
/// class has fewer than k rows or k < 2.
Folds stratified_kfold(std::span<const int> y, int n_classes, int k, std::uint64_t seed);
Folds stratified_kfold(const FeatureTable& table, Target target, int k, std::uint64_t seed);

/// Subject-wise folds: whole groups are dealt round-robin after a seeded
/// shuffle, so no group spans two folds. Throws ValidationError when there are
/// fewer groups than folds.
Folds group_kfold(std::span<const std::string> groups, int k, std::uint64_t seed);

/// Indices not in fold f.
std::vector<std::size_t> training_indices(const Folds& folds, std::size_t f, std::size_t n);

}  // namespace bh::ml
