#pragma once

#include <cstdint>

#include "brainheart/data/feature_table.hpp"
#include "brainheart/ml/dataset.hpp"

namespace bh::ml {

/// Oversamples every class up to the majority count. Each synthetic row is
/// x + u·(x_nb − x) with x a random row of the class, x_nb one of its k
/// nearest same-class neighbours (Euclidean, ties by row index) and u drawn
/// from (0, 1). Original rows keep their positions; synthetic rows are
/// appended class by class.
///
/// Throws ValidationError when a class that needs oversampling has fewer
/// than 2 rows or fewer than k + 1 rows.
Dataset smote(const Dataset& data, int k, std::uint64_t seed);

/// Table form. Synthetic rows copy the base row's labels, with
/// trial_index = -1, -2, ... so they can be told apart from real trials.
FeatureTable smote_oversample(const FeatureTable& table, Target target, int k, std::uint64_t seed);

}  // namespace bh::ml
