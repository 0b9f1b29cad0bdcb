#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "brainheart/ml/cv.hpp"
#include "brainheart/util/error.hpp"

TEST(Cv, SixtyFortyGivesTwelveEight) {
  std::vector<int> y(100);
  for (std::size_t i = 0; i < 100; ++i) y[i] = i % 5 < 3 ? 0 : 1;
  const auto folds = bh::ml::stratified_kfold(y, 2, 5, 42);
  ASSERT_EQ(folds.size(), 5u);
  for (const auto& f : folds) {
    const auto zeros = std::count_if(f.begin(), f.end(), [&](std::size_t i) { return y[i] == 0; });
    EXPECT_EQ(zeros, 12);
    EXPECT_EQ(f.size() - static_cast<std::size_t>(zeros), 8u);
  }
}

TEST(Cv, SmallClassIsRejected) {
  std::vector<int> y{0, 0, 0, 0, 0, 1, 1, 1};
  EXPECT_THROW(bh::ml::stratified_kfold(y, 2, 5, 1), bh::ValidationError);
  EXPECT_THROW(bh::ml::stratified_kfold(y, 2, 1, 1), bh::ValidationError);
}

TEST(Cv, FoldsPartitionAndFollowProportions) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 6);
    const int classes = 2 + static_cast<int>(rng() % 3);
    std::vector<int> y;
    std::vector<std::size_t> counts;
    for (int c = 0; c < classes; ++c) {
      const auto n = static_cast<std::size_t>(k) + rng() % 40;
      counts.push_back(n);
      y.insert(y.end(), n, c);
    }
    std::shuffle(y.begin(), y.end(), rng);
    const auto folds = bh::ml::stratified_kfold(y, classes, k, rng());
    std::set<std::size_t> seen;
    std::size_t total = 0;
    for (const auto& f : folds) {
      total += f.size();
      seen.insert(f.begin(), f.end());
      for (int c = 0; c < classes; ++c) {
        const auto in_fold = static_cast<double>(std::count_if(f.begin(), f.end(), [&](std::size_t i) { return y[i] == c; }));
        const double expected = static_cast<double>(counts[static_cast<std::size_t>(c)]) / k;
        EXPECT_LT(std::abs(in_fold - expected), 1.0);
      }
    }
    EXPECT_EQ(total, y.size());
    EXPECT_EQ(seen.size(), y.size());
  }
}

TEST(Cv, SeedControlsAssignment) {
  std::vector<int> y(40);
  for (std::size_t i = 0; i < 40; ++i) y[i] = static_cast<int>(i % 2);
  EXPECT_EQ(bh::ml::stratified_kfold(y, 2, 5, 1), bh::ml::stratified_kfold(y, 2, 5, 1));
  EXPECT_NE(bh::ml::stratified_kfold(y, 2, 5, 1), bh::ml::stratified_kfold(y, 2, 5, 2));
}

TEST(Cv, GroupFoldsKeepSubjectsTogether) {
  std::vector<std::string> g;
  for (int s = 0; s < 7; ++s) g.insert(g.end(), 3 + static_cast<std::size_t>(s), "sub" + std::to_string(s));
  const auto folds = bh::ml::group_kfold(g, 3, 42);
  std::set<std::size_t> seen;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    for (const auto i : folds[f]) {
      seen.insert(i);
      for (std::size_t other = 0; other < folds.size(); ++other) {
        if (other == f) continue;
        for (const auto j : folds[other]) EXPECT_NE(g[i], g[j]);
      }
    }
  }
  EXPECT_EQ(seen.size(), g.size());
  EXPECT_THROW(bh::ml::group_kfold(g, 8, 42), bh::ValidationError);
}

TEST(Cv, TrainingIndicesAreTheComplement) {
  const bh::ml::Folds folds{{0, 3}, {1, 4}, {2}};
  EXPECT_EQ(bh::ml::training_indices(folds, 1, 5), (std::vector<std::size_t>{0, 2, 3}));
}
