#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "brainheart/ml/metrics.hpp"
#include "brainheart/util/error.hpp"

using bh::ml::evaluate;

TEST(Metrics, SmallExample) {
  const std::vector<int> t{0, 0, 1}, p{0, 1, 1};
  const auto m = evaluate(t, p, {"x", "y"});
  EXPECT_DOUBLE_EQ(m.accuracy, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.precision[0], 1.0);
  EXPECT_DOUBLE_EQ(m.recall[0], 0.5);
  EXPECT_DOUBLE_EQ(m.precision[1], 0.5);
  EXPECT_DOUBLE_EQ(m.recall[1], 1.0);
  EXPECT_DOUBLE_EQ(m.f1[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.macro_f1, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.weighted_recall, 2.0 / 3.0);
  EXPECT_EQ(m.confusion[0][1], 1u);
  EXPECT_EQ(m.confusion[1][0], 0u);
}

TEST(Metrics, PerfectPredictions) {
  const std::vector<int> t{0, 1, 2, 2, 1};
  const auto m = evaluate(t, t, {"a", "b", "c"});
  EXPECT_EQ(m.accuracy, 1.0);
  for (const double f : m.f1) EXPECT_EQ(f, 1.0);
}

TEST(Metrics, ClassNeverPredictedIsFlagged) {
  const std::vector<int> t{0, 1, 2}, p{0, 0, 2};
  const auto m = evaluate(t, p, {"a", "b", "c"});
  EXPECT_EQ(m.precision[1], 0.0);
  EXPECT_TRUE(m.precision_zero_division[1]);
  EXPECT_FALSE(m.recall_zero_division[1]);
  EXPECT_TRUE(m.f1_zero_division[1]);
  EXPECT_FALSE(m.precision_zero_division[0]);
}

TEST(Metrics, Errors) {
  const std::vector<int> a{0, 1}, b{0};
  EXPECT_THROW(evaluate(a, b, {"a", "b"}), bh::ValidationError);
  const std::vector<int> c{0, 2};
  EXPECT_THROW(evaluate(a, c, {"a", "b"}), bh::ValidationError);
  EXPECT_THROW(evaluate(c, a, {"a", "b"}), bh::ValidationError);
}

TEST(Metrics, AccuracyIsTraceOverTotalAndRowsAreSupport) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 60;
    const int k = 2 + static_cast<int>(rng() % 4);
    std::vector<int> t(n), p(n);
    std::size_t hits = 0;
    std::vector<std::size_t> support(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < n; ++i) {
      t[i] = static_cast<int>(rng() % static_cast<unsigned>(k));
      p[i] = static_cast<int>(rng() % static_cast<unsigned>(k));
      hits += t[i] == p[i];
      ++support[static_cast<std::size_t>(t[i])];
    }
    const auto m = evaluate(t, p, std::vector<std::string>(static_cast<std::size_t>(k), "c"));
    std::size_t trace = 0;
    for (int c = 0; c < k; ++c) trace += m.confusion[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
    EXPECT_EQ(trace, hits);
    EXPECT_DOUBLE_EQ(m.accuracy, static_cast<double>(trace) / static_cast<double>(n));
    for (int c = 0; c < k; ++c) {
      std::size_t row = 0;
      for (const auto v : m.confusion[static_cast<std::size_t>(c)]) row += v;
      EXPECT_EQ(row, support[static_cast<std::size_t>(c)]);
    }
  }
}

TEST(Metrics, JsonRoundTrip) {
  const std::vector<int> t{0, 0, 1, 2, 2}, p{0, 1, 1, 2, 0};
  const auto m = evaluate(t, p, {"Five", "Nine", "Thirteen"});
  const auto back = bh::ml::metrics_from_json(bh::ml::metrics_to_json(m));
  EXPECT_EQ(back.confusion, m.confusion);
  EXPECT_EQ(back.accuracy, m.accuracy);
  EXPECT_EQ(back.f1, m.f1);
  EXPECT_EQ(back.class_names, m.class_names);
  EXPECT_EQ(bh::ml::metrics_to_json(back), bh::ml::metrics_to_json(m));
  EXPECT_THROW(bh::ml::metrics_from_json("{}"), bh::DataError);
}

TEST(Metrics, ConfusionCsv) {
  const std::vector<int> t{0, 0, 1}, p{0, 1, 1};
  std::ostringstream s;
  bh::ml::write_confusion_csv(evaluate(t, p, {"x", "y"}), s);
  EXPECT_EQ(s.str(), "true\\predicted,x,y\nx,1,1\ny,0,1\n");
}
