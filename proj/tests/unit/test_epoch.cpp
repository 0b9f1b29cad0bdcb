#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "brainheart/preprocess/epoch.hpp"
#include "brainheart/util/error.hpp"

namespace {

bh::SignalTensor single(const std::vector<double>& x, double rate = 100.0) {
  return bh::SignalTensor::from_trials({{x}}, rate, bh::Unit::microvolt, true);
}

}  // namespace

TEST(Epoch, TwoEventsGiveEightSecondEpochs) {
  const double rate = 100.0;
  std::vector<double> rec(10000);
  for (std::size_t i = 0; i < rec.size(); ++i) rec[i] = static_cast<double>(i);
  const std::vector<double> onsets{10.0, 20.0};
  const auto r = bh::epoch_signal({rec}, onsets, bh::EpochSpec{}, rate);
  ASSERT_EQ(r.epochs.trial_count(), 2u);
  EXPECT_EQ(r.epochs.time_extent(), 800u);
  // Sample 0 sits at onset + t_min.
  EXPECT_EQ(r.epochs.series(0)[0], 700.0);
  EXPECT_EQ(r.epochs.series(1)[300], 2000.0);
  EXPECT_TRUE(r.dropped.empty());
}

TEST(Epoch, EventNearTheEdgeIsDropped) {
  const std::vector<double> rec(10000, 0.0);
  const std::vector<double> onsets{0.5, 20.0, 98.0};
  const auto r = bh::epoch_signal({rec}, onsets, bh::EpochSpec{}, 100.0);
  EXPECT_EQ(r.kept, (std::vector<std::size_t>{1}));
  EXPECT_EQ(r.dropped, (std::vector<std::size_t>{0, 2}));
}

TEST(Epoch, DescendingOnsetsAreRejected) {
  const std::vector<double> rec(10000, 0.0);
  const std::vector<double> onsets{20.0, 10.0};
  try {
    bh::epoch_signal({rec}, onsets, bh::EpochSpec{}, 100.0);
    FAIL();
  } catch (const bh::ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("event_onsets not increasing"), std::string::npos);
  }
}

TEST(Epoch, RaggedEndsUseValidLength) {
  const std::vector<double> rec(10000, 1.0);
  const std::vector<double> onsets{10.0, 30.0};
  const std::vector<double> ends{7.0, 15.0};
  const auto r = bh::epoch_signal({rec, rec}, onsets, bh::EpochSpec{}, 100.0, bh::Unit::microvolt, ends);
  EXPECT_EQ(r.epochs.time_extent(), 1800u);
  EXPECT_EQ(r.epochs.valid_length(), (std::vector<std::size_t>{1000, 1800}));
  EXPECT_EQ(r.epochs.channel_count(), 2u);
}

TEST(Baseline, ConstantEpochBecomesZero) {
  const auto out = bh::baseline_correct(single(std::vector<double>(800, 5.0)), bh::EpochSpec{});
  for (const double v : out.series(0)) EXPECT_EQ(v, 0.0);
}

TEST(Baseline, StepKeepsItsHeight) {
  std::vector<double> x(800, 2.0);
  for (std::size_t i = 300; i < 800; ++i) x[i] = 7.0;
  const auto out = bh::baseline_correct(single(x), bh::EpochSpec{});
  const auto y = out.series(0);
  EXPECT_EQ(y[0], 0.0);
  EXPECT_EQ(y[299], 0.0);
  EXPECT_EQ(y[300], 5.0);
  EXPECT_EQ(y[799], 5.0);
}

TEST(Baseline, WindowBeforeEpochIsRejected) {
  bh::EpochSpec spec;
  spec.baseline_start = -4.0;
  spec.baseline_end = -3.5;
  EXPECT_THROW(bh::baseline_correct(single(std::vector<double>(800, 1.0)), spec), bh::ValidationError);
}

TEST(Baseline, MeanOverWindowIsZeroAndIdempotent) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(40.0, 12.0);
  std::vector<double> x(800);
  for (double& v : x) v = n(rng);
  bh::EpochSpec spec;
  spec.baseline_start = -2.0;
  spec.baseline_end = -0.5;
  const auto once = bh::baseline_correct(single(x), spec);
  const auto y = once.series(0);
  double m = 0.0;
  for (std::size_t i = 100; i < 250; ++i) m += y[i];
  // Stored as float32, so the bound is relative to the sample scale.
  EXPECT_NEAR(m / 150.0, 0.0, 1e-5 * 40.0);
  const auto twice = bh::baseline_correct(once, spec);
  const auto z = twice.series(0);
  for (std::size_t i = 0; i < z.size(); ++i) EXPECT_NEAR(z[i], y[i], 1e-4);
}

TEST(Artifacts, CleanEpochsSurvive) {
  std::vector<std::vector<std::vector<double>>> trials(3, {std::vector<double>(100)});
  for (auto& t : trials) {
    for (std::size_t i = 0; i < 100; ++i) t[0][i] = 40.0 * std::sin(0.2 * static_cast<double>(i));
  }
  const auto r = bh::reject_artifacts(bh::SignalTensor::from_trials(trials, 100.0, bh::Unit::microvolt, true), 100.0);
  EXPECT_TRUE(r.rejected.empty());
  EXPECT_EQ(r.kept.trial_count(), 3u);
}

TEST(Artifacts, SpikeRejectsExactlyThatEpoch) {
  std::vector<std::vector<std::vector<double>>> trials(4, {std::vector<double>(100, 0.0), std::vector<double>(100, 0.0)});
  trials[2][1][50] = 500.0;
  const auto r = bh::reject_artifacts(bh::SignalTensor::from_trials(trials, 100.0, bh::Unit::microvolt, true), 100.0);
  EXPECT_EQ(r.rejected, (std::vector<std::size_t>{2}));
  EXPECT_EQ(r.kept_indices, (std::vector<std::size_t>{0, 1, 3}));
}

TEST(Artifacts, AllRejectedGivesEmptyTensor) {
  std::vector<std::vector<std::vector<double>>> trials(2, {std::vector<double>(10, 0.0)});
  trials[0][0][1] = 300.0;
  trials[1][0][1] = -300.0;
  const auto r = bh::reject_artifacts(bh::SignalTensor::from_trials(trials, 100.0, bh::Unit::microvolt, true), 100.0);
  EXPECT_TRUE(r.kept.empty());
  EXPECT_EQ(r.rejected.size(), 2u);
}

TEST(Artifacts, LimitMustBePositive) {
  try {
    bh::reject_artifacts(single(std::vector<double>(10, 0.0)), 0.0);
    FAIL();
  } catch (const bh::ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("limit > 0"), std::string::npos);
  }
}

TEST(ZScore, AffineExample) {
  const auto z = bh::zscore_normalize(std::vector<double>{1.0, 2.0, 3.0});
  EXPECT_DOUBLE_EQ(z[0], -1.0);
  EXPECT_DOUBLE_EQ(z[1], 0.0);
  EXPECT_DOUBLE_EQ(z[2], 1.0);
}

TEST(ZScore, ConstantInputFails) {
  try {
    bh::zscore_normalize(std::vector<double>{5.0, 5.0, 5.0});
    FAIL();
  } catch (const bh::DataError& e) {
    EXPECT_NE(std::string(e.what()).find("zero variance"), std::string::npos);
  }
}

TEST(ZScore, ArbitraryEpochHasUnitSampleSd) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> n(-3.0, 17.0);
  std::vector<double> x(1234);
  for (double& v : x) v = n(rng);
  const auto z = bh::zscore_normalize(x);
  double m = 0.0;
  for (const double v : z) m += v;
  m /= static_cast<double>(z.size());
  double ss = 0.0;
  for (const double v : z) ss += (v - m) * (v - m);
  EXPECT_LT(std::abs(m), 1e-12);
  EXPECT_LT(std::abs(std::sqrt(ss / static_cast<double>(z.size() - 1)) - 1.0), 1e-12);
}

TEST(AverageReference, RemovesTheCommonMode) {
  const auto out = bh::average_reference({{1.0, 2.0}, {3.0, 6.0}, {5.0, 1.0}});
  EXPECT_DOUBLE_EQ(out[0][0], -2.0);
  EXPECT_DOUBLE_EQ(out[1][1], 3.0);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(out[0][i] + out[1][i] + out[2][i], 0.0, 1e-12);
}
