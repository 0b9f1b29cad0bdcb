#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "brainheart/data/feature_table.hpp"
#include "brainheart/util/error.hpp"

namespace {

bh::TrialMeta label(int i) {
  bh::TrialMeta m;
  m.subject_id = "sub-07";
  m.condition = bh::Condition::memorize;
  m.subcondition = bh::Subcondition::nine;
  m.trial_index = i;
  return m;
}

bh::FeatureTable sample_table() {
  bh::FeatureTable t;
  t.feature_names = {"a", "b"};
  t.append({0.1, 1.0 / 3.0}, label(0));
  t.append({-2.5e-300, 6.02214076e23}, label(1));
  return t;
}

}  // namespace

TEST(FeatureTable, CsvRoundTripIsExact) {
  const auto t = sample_table();
  std::stringstream io;
  bh::write_feature_csv(t, io);
  const auto text = io.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "subject_id,condition,subcondition,trial_index,a,b");
  const auto back = bh::read_feature_csv(io);
  EXPECT_EQ(back.feature_names, t.feature_names);
  EXPECT_EQ(back.rows, t.rows);
  EXPECT_EQ(back.labels, t.labels);
}

TEST(FeatureTable, ColumnLookup) {
  const auto t = sample_table();
  EXPECT_EQ(t.column("b"), 1u);
  EXPECT_THROW(t.column("c"), bh::ValidationError);
}

TEST(FeatureTable, ShapeChecks) {
  auto t = sample_table();
  t.rows[1].pop_back();
  EXPECT_THROW(t.validate(), bh::ValidationError);
}

TEST(FeatureTable, DropsNonFiniteRows) {
  auto t = sample_table();
  t.append({std::nan(""), 1.0}, label(2));
  t.append({1.0, std::numeric_limits<double>::infinity()}, label(3));
  t.append({2.0, 3.0}, label(4));
  EXPECT_EQ(bh::drop_nonfinite_rows(t), 2u);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t.labels[2].trial_index, 4);
}

TEST(FeatureTable, SelectAndTake) {
  const auto t = sample_table();
  const auto b = bh::select_columns(t, {"b"});
  EXPECT_EQ(b.width(), 1u);
  EXPECT_EQ(b.rows[0][0], 1.0 / 3.0);
  const auto swapped = bh::take_rows(t, {1, 0});
  EXPECT_EQ(swapped.labels[0].trial_index, 1);
  EXPECT_THROW(bh::take_rows(t, {2}), bh::ValidationError);
}

TEST(FeatureTable, MalformedInputNamesTheLine) {
  const auto message = [](const std::string& text) {
    std::istringstream in(text);
    try {
      bh::read_feature_csv(in);
    } catch (const bh::DataError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  const std::string header = "subject_id,condition,subcondition,trial_index,a\n";
  EXPECT_NE(message(header + "s,Memorize,Five,0,1\ns,Memorize,Five,1,x\n").find("line 3"), std::string::npos);
  EXPECT_NE(message(header + "s,Memorize,Five,0\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("a,b\n").find("header"), std::string::npos);
  EXPECT_NE(message("").find("empty"), std::string::npos);
}

TEST(FeatureTable, AcceptsCrlf) {
  std::istringstream in("subject_id,condition,subcondition,trial_index,a\r\ns,JustListen,Thirteen,4,2.5\r\n");
  const auto t = bh::read_feature_csv(in);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.rows[0][0], 2.5);
  EXPECT_EQ(t.labels[0].subcondition, bh::Subcondition::thirteen);
}
