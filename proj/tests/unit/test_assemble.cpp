#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "brainheart/features/assemble.hpp"
#include "brainheart/features/catch22.hpp"
#include "brainheart/util/error.hpp"

namespace {

std::vector<bh::TrialMeta> metas(std::size_t n) {
  std::vector<bh::TrialMeta> m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m[i].subject_id = "s01";
    m[i].trial_index = static_cast<int>(i);
  }
  return m;
}

bh::TrialSet rr_trials(std::size_t n, std::size_t beats, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 25.0);
  std::vector<std::vector<std::vector<double>>> data(n);
  for (auto& trial : data) {
    std::vector<double> ibi(beats);
    for (double& v : ibi) v = 800.0 + noise(rng);
    trial.push_back(ibi);
  }
  return {bh::SignalTensor::from_trials(data, 1.0, bh::Unit::millisecond, false), metas(n)};
}

}  // namespace

TEST(Assemble, HrvModeGivesFiveNamedColumns) {
  const auto table = bh::assemble_features(rr_trials(5, 60, 1), bh::FeatureMode::hrv);
  ASSERT_EQ(table.size(), 5u);
  ASSERT_EQ(table.width(), 5u);
  EXPECT_EQ(table.feature_names, (std::vector<std::string>{"meanNN", "SDNN", "RMSSD", "SD1", "SD2"}));
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(table.labels[i].trial_index, static_cast<int>(i));
}

TEST(Assemble, Catch22ModeGives22Columns) {
  const auto table = bh::assemble_features(rr_trials(3, 100, 2), bh::FeatureMode::catch22);
  EXPECT_EQ(table.size(), 3u);
  EXPECT_EQ(table.width(), 22u);
  EXPECT_EQ(table.feature_names[0], "DN_HistogramMode_5");
}

TEST(Assemble, EmptyTensorFails) {
  const bh::TrialSet empty{bh::SignalTensor::from_trials({}, 1.0, bh::Unit::millisecond, false), {}};
  try {
    bh::assemble_features(empty, bh::FeatureMode::hrv);
    FAIL();
  } catch (const bh::DataError& e) {
    EXPECT_NE(std::string(e.what()).find("empty tensor"), std::string::npos);
  }
}

TEST(Assemble, FailingTrialsAreDropped) {
  auto set = rr_trials(4, 60, 3);
  std::vector<std::vector<std::vector<double>>> data;
  for (std::size_t i = 0; i < 4; ++i) data.push_back({set.tensor.series(i)});
  data[2] = {{800.0, 810.0}};  // too few intervals
  set.tensor = bh::SignalTensor::from_trials(data, 1.0, bh::Unit::millisecond, false);
  const auto table = bh::assemble_features(set, bh::FeatureMode::hrv);
  ASSERT_EQ(table.size(), 3u);
  EXPECT_EQ(table.labels[2].trial_index, 3);
}

TEST(Assemble, EegCombinedConcatenatesBandPowerAndCatch22) {
  std::vector<std::vector<std::vector<double>>> data(2);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n01;
  for (auto& trial : data) {
    for (int c = 0; c < 3; ++c) {
      std::vector<double> x(500);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(2 * std::numbers::pi * 10 * i / 125.0) + 0.2 * n01(rng);
      trial.push_back(x);
    }
  }
  const bh::TrialSet set{bh::SignalTensor::from_trials(data, 125.0, bh::Unit::microvolt, true), metas(2)};
  const auto table = bh::assemble_features(set, bh::FeatureMode::eeg_combined);
  EXPECT_EQ(table.width(), 3u * 10u + 3u * 22u);
  EXPECT_EQ(table.feature_names[2], "ch0_alpha_abs");
  EXPECT_EQ(table.feature_names[30], "ch0_DN_HistogramMode_5");
  const auto bp = bh::assemble_features(set, bh::FeatureMode::bandpower);
  EXPECT_EQ(bp.width(), 30u);
  EXPECT_GT(bp.rows[0][bp.column("ch1_alpha_rel")], 0.8);
}

TEST(Assemble, ParallelMatchesSerial) {
  const auto set = rr_trials(12, 80, 6);
  const auto a = bh::assemble_features(set, bh::FeatureMode::catch22, 1);
  const auto b = bh::assemble_features(set, bh::FeatureMode::catch22, 4);
  EXPECT_EQ(a.rows, b.rows);
}

TEST(Assemble, ModeNamesRoundTrip) {
  for (const auto m : {bh::FeatureMode::hrv, bh::FeatureMode::catch22, bh::FeatureMode::bandpower,
                       bh::FeatureMode::eeg_combined}) {
    EXPECT_EQ(bh::parse_feature_mode(bh::to_string(m)), m);
  }
  EXPECT_THROW(bh::parse_feature_mode("spectral"), bh::ValidationError);
}
