#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "brainheart/ml/gbt.hpp"
#include "brainheart/util/error.hpp"
#include "support/ml_data.hpp"

using bh::ml::GbtConfig;
using bh::ml::Objective;

TEST(Gbt, SeparatesBlobs) {
  const auto train = bh::test::blobs(20, 1);
  const auto test = bh::test::blobs(200, 2);
  const auto model = bh::ml::train_gbt(train, GbtConfig{});
  EXPECT_EQ(model.trees.size(), 1500u);
  EXPECT_GE(bh::test::accuracy(model.predict(test.x), test.y), 0.95);
}

TEST(Gbt, TrainingLossNeverIncreases) {
  const auto train = bh::test::blobs(20, 1);
  const auto model = bh::ml::train_gbt(train, GbtConfig{});
  ASSERT_EQ(model.loss_history.size(), 500u);
  EXPECT_LT(model.loss_history.back(), model.loss_history.front());
  for (std::size_t i = 1; i < model.loss_history.size(); ++i) {
    EXPECT_LE(model.loss_history[i], model.loss_history[i - 1]) << "round " << i;
  }
}

TEST(Gbt, RegressionReachesHighRSquared) {
  bh::ml::Matrix x, xt;
  std::vector<double> y, yt;
  bh::test::linear_regression_rows(500, 11, x, y);
  bh::test::linear_regression_rows(500, 12, xt, yt);
  const auto model = bh::ml::train_gbt_regression(x, y, GbtConfig{});
  EXPECT_GE(bh::ml::r_squared(yt, model.predict_values(xt)), 0.99);
  for (std::size_t i = 1; i < model.loss_history.size(); ++i) EXPECT_LE(model.loss_history[i], model.loss_history[i - 1]);
}

TEST(Gbt, SoftmaxWithOneClassIsRejected) {
  GbtConfig c;
  c.n_classes = 1;
  EXPECT_THROW(c.validate(), bh::ValidationError);
  EXPECT_THROW(bh::ml::train_gbt(bh::test::blobs(10, 1), c), bh::ValidationError);
}

TEST(Gbt, LearningRateRange) {
  GbtConfig c;
  for (const double lr : {0.0, -0.1, 1.5}) {
    c.learning_rate = lr;
    EXPECT_THROW(c.validate(), bh::ValidationError) << lr;
  }
  c.learning_rate = 1.0;
  EXPECT_NO_THROW(c.validate());
}

TEST(Gbt, SingleClassIsRejected) {
  auto d = bh::test::blobs(10, 3);
  std::fill(d.y.begin(), d.y.end(), 0);
  EXPECT_THROW(bh::ml::train_gbt(d, GbtConfig{}), bh::ValidationError);
}

TEST(Gbt, LogisticBinary) {
  auto d = bh::test::blobs(20, 5);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.y[i] < 2) keep.push_back(i);
  }
  auto two = bh::ml::take(d, keep);
  two.n_classes = 2;
  two.class_names = {"a", "b"};
  GbtConfig c;
  c.objective = Objective::logistic_binary;
  c.n_trees = 50;
  const auto model = bh::ml::train_gbt(two, c);
  EXPECT_EQ(model.trees_per_round, 1);
  EXPECT_EQ(bh::test::accuracy(model.predict(two.x), two.y), 1.0);
  const auto p = model.predict_proba(two.x.row(0));
  EXPECT_NEAR(p[0] + p[1], 1.0, 1e-15);
  EXPECT_THROW(bh::ml::train_gbt(d, c), bh::ValidationError);
}

TEST(Gbt, RowOrderDoesNotMatter) {
  const auto train = bh::test::blobs(30, 6);
  const auto test = bh::test::blobs(50, 7);
  std::vector<std::size_t> perm(train.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(3));
  GbtConfig c;
  c.n_trees = 30;
  const auto a = bh::ml::train_gbt(train, c);
  const auto b = bh::ml::train_gbt(bh::ml::take(train, perm), c);
  for (std::size_t r = 0; r < test.size(); ++r) EXPECT_EQ(a.margins(test.x.row(r)), b.margins(test.x.row(r)));
}

TEST(Gbt, MultiOutputMatchesIndependentModels) {
  bh::ml::Matrix x;
  std::vector<double> y0;
  bh::test::linear_regression_rows(120, 21, x, y0);
  bh::ml::Matrix y(x.rows, 2);
  std::vector<double> y1(x.rows);
  for (std::size_t r = 0; r < x.rows; ++r) {
    y(r, 0) = y0[r];
    y(r, 1) = y1[r] = -x(r, 1) + 3.0;
  }
  GbtConfig c;
  c.n_trees = 40;
  const auto multi = bh::ml::train_gbt_multi(x, y, c, 2);
  const auto m1 = bh::ml::train_gbt_regression(x, y1, c);
  ASSERT_EQ(multi.outputs.size(), 2u);
  const auto pred = multi.predict(x);
  for (std::size_t r = 0; r < x.rows; ++r) EXPECT_EQ(pred(r, 1), m1.predict_value(x.row(r)));
}

TEST(Gbt, RSquaredDefinition) {
  const std::vector<double> t{1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(bh::ml::r_squared(t, t), 1.0);
  const std::vector<double> mean(4, 2.5);
  EXPECT_DOUBLE_EQ(bh::ml::r_squared(t, mean), 0.0);
  EXPECT_TRUE(std::isnan(bh::ml::r_squared(mean, t)));
}

TEST(Gbt, ObjectiveNamesRoundTrip) {
  for (const auto o : {Objective::softmax_multiclass, Objective::logistic_binary, Objective::squared_error_regression}) {
    EXPECT_EQ(bh::ml::parse_objective(bh::ml::to_string(o)), o);
  }
  EXPECT_THROW(bh::ml::parse_objective("multi:softprob"), bh::ValidationError);
}
