#include <gtest/gtest.h>

#include "brainheart/ml/classifier.hpp"
#include "brainheart/ml/model_io.hpp"
#include "brainheart/util/error.hpp"
#include "support/ml_data.hpp"

TEST(ModelIo, ForestRoundTrip) {
  const auto d = bh::test::blobs(20, 1);
  bh::ml::ForestConfig c;
  c.n_trees = 15;
  auto m = bh::ml::train_forest(d, c);
  m.feature_names = {"x", "y"};
  const auto text = bh::ml::to_json(m);
  EXPECT_NE(text.find("\"format_version\":1"), std::string::npos);
  const auto back = bh::ml::forest_from_json(text);
  EXPECT_EQ(bh::ml::to_json(back), text);
  EXPECT_EQ(back.feature_names, m.feature_names);
  const auto test = bh::test::blobs(30, 2);
  for (std::size_t r = 0; r < test.size(); ++r) EXPECT_EQ(back.predict_proba(test.x.row(r)), m.predict_proba(test.x.row(r)));
}

TEST(ModelIo, GbtRoundTrip) {
  const auto d = bh::test::blobs(20, 1);
  bh::ml::GbtConfig c;
  c.n_trees = 10;
  const auto m = bh::ml::train_gbt(d, c);
  const auto back = bh::ml::gbt_from_json(bh::ml::to_json(m));
  for (std::size_t r = 0; r < d.size(); ++r) EXPECT_EQ(back.margins(d.x.row(r)), m.margins(d.x.row(r)));
}

TEST(ModelIo, MultiOutputRoundTrip) {
  bh::ml::Matrix x;
  std::vector<double> y;
  bh::test::linear_regression_rows(50, 3, x, y);
  bh::ml::Matrix ym(50, 1);
  for (std::size_t r = 0; r < 50; ++r) ym(r, 0) = y[r];
  bh::ml::GbtConfig c;
  c.n_trees = 5;
  auto m = bh::ml::train_gbt_multi(x, ym, c);
  m.input_names = {"a", "b"};
  m.output_names = {"out"};
  const auto back = bh::ml::multi_gbt_from_json(bh::ml::to_json(m));
  EXPECT_EQ(back.output_names, m.output_names);
  EXPECT_EQ(back.predict(x), m.predict(x));
}

TEST(ModelIo, ClassifierDispatchesOnKind) {
  const auto d = bh::test::blobs(20, 1);
  bh::ml::ClassifierConfig c;
  c.kind = bh::ml::ClassifierKind::gbt;
  c.gbt.n_trees = 5;
  const auto m = bh::ml::train_classifier(d, c);
  const auto back = bh::ml::classifier_from_json(bh::ml::to_json(m));
  EXPECT_EQ(back.kind(), bh::ml::ClassifierKind::gbt);
  EXPECT_EQ(back.predict(d.x), m.predict(d.x));
}

TEST(ModelIo, RejectsBadInput) {
  EXPECT_THROW(bh::ml::forest_from_json("not json"), bh::DataError);
  EXPECT_THROW(bh::ml::forest_from_json(R"({"kind":"forest"})"), bh::DataError);
  EXPECT_THROW(bh::ml::forest_from_json(R"({"format_version":2,"kind":"forest"})"), bh::DataError);
  EXPECT_THROW(bh::ml::forest_from_json(R"({"format_version":1,"kind":"gbt"})"), bh::DataError);
  EXPECT_THROW(bh::ml::forest_from_json(R"({"format_version":1,"kind":"forest","n_classes":2})"), bh::DataError);
  EXPECT_THROW(
      bh::ml::forest_from_json(
          R"({"format_version":1,"kind":"forest","n_classes":2,"n_features":1,"class_names":[],"feature_names":[],)"
          R"("trees":[{"n_outputs":2,"nodes":[{"feature":0,"threshold":1,"left":5,"right":6,"gain":1}]}]})"),
      bh::DataError);
}
