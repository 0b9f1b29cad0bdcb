#include <gtest/gtest.h>

#include "brainheart/preprocess/rr.hpp"
#include "brainheart/util/error.hpp"

TEST(Rr, PeaksConvertToMilliseconds) {
  const std::vector<std::size_t> peaks{0, 250, 500};
  const auto rr = bh::extract_rr(peaks, 250.0);
  EXPECT_EQ(rr.intervals, (std::vector<double>{1000.0, 1000.0}));
  EXPECT_EQ(rr.beat_times, (std::vector<double>{0.0, 1.0, 2.0}));
  EXPECT_EQ(rr.diff_intervals, (std::vector<double>{0.0}));
  EXPECT_EQ(rr.implausible_count(), 0u);
}

TEST(Rr, TooFewPeaks) {
  const std::vector<std::size_t> peaks{0, 50};
  try {
    bh::extract_rr(peaks, 250.0);
    FAIL();
  } catch (const bh::ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("< 3 peaks"), std::string::npos);
  }
}

TEST(Rr, ShortIntervalIsFlaggedNotDropped) {
  const std::vector<std::size_t> peaks{0, 250, 300};
  const auto rr = bh::extract_rr(peaks, 250.0);
  ASSERT_EQ(rr.intervals.size(), 2u);
  EXPECT_DOUBLE_EQ(rr.intervals[1], 200.0);
  EXPECT_TRUE(rr.plausible[0]);
  EXPECT_FALSE(rr.plausible[1]);
  EXPECT_EQ(rr.plausible_intervals(), (std::vector<double>{1000.0}));
}

TEST(Rr, PlausibleDiffsSkipPairsTouchingAnOutlier) {
  // 800, 250 (implausible), 810, 820, 2500 (implausible), 790
  const auto rr = bh::rr_from_intervals(std::vector<double>{800, 250, 810, 820, 2500, 790});
  EXPECT_EQ(rr.implausible_count(), 2u);
  EXPECT_EQ(rr.plausible_intervals(), (std::vector<double>{800, 810, 820, 790}));
  EXPECT_EQ(rr.plausible_diffs(), (std::vector<double>{10.0}));
  EXPECT_EQ(rr.diff_intervals.size(), rr.intervals.size() - 1);
}

TEST(Rr, BoundsAreInclusive) {
  const auto rr = bh::rr_from_intervals(std::vector<double>{300.0, 2000.0, 299.0, 2001.0});
  EXPECT_EQ(rr.plausible, (std::vector<bool>{true, true, false, false}));
}

TEST(Rr, BeatTimesMustIncrease) {
  EXPECT_THROW(bh::rr_from_beat_times({0.0, 1.0, 1.0}), bh::ValidationError);
  const std::vector<std::size_t> peaks{0, 300, 200};
  EXPECT_THROW(bh::extract_rr(peaks, 250.0), bh::ValidationError);
}
