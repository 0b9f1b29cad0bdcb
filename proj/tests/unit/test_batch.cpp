#include <gtest/gtest.h>

#include <sstream>

#include "brainheart/psvsdg/batch.hpp"

namespace {

std::vector<bh::SynthTrialSpec> ten_specs() {
  std::vector<bh::SynthTrialSpec> specs;
  for (int i = 0; i < 10; ++i) {
    bh::SynthTrialSpec s;
    s.subject_id = "s0" + std::to_string(i % 3);
    s.condition = i % 2 ? bh::Condition::memorize : bh::Condition::just_listen;
    s.subcondition = static_cast<bh::Subcondition>(i % 3);
    s.trial_index = i;
    s.mu_hr = 1.0 + 0.03 * i;
    s.target_sd1_ms = 20.0 + i;
    s.target_sd2_ms = 50.0 + 2 * i;
    s.duration_s = 60.0;
    s.seed = 100 + static_cast<std::uint64_t>(i);
    specs.push_back(s);
  }
  return specs;
}

}  // namespace

TEST(SynthBatch, OneUnreachableSpecIsSkipped) {
  auto specs = ten_specs();
  specs[4].target_sd1_ms = 500.0;
  specs[4].target_sd2_ms = 500.0;
  const auto batch = bh::generate_synthetic_batch(specs);
  EXPECT_EQ(batch.trials.tensor.trial_count(), 9u);
  ASSERT_EQ(batch.skipped.size(), 1u);
  EXPECT_EQ(batch.skipped[0].meta.trial_index, 4);
  EXPECT_EQ(batch.trials.tensor.unit(), bh::Unit::millisecond);
  EXPECT_EQ(batch.trials.meta[4].trial_index, 5);
}

TEST(SynthBatch, DeterministicAndJobIndependent) {
  const auto specs = ten_specs();
  bh::BatchOptions serial;
  bh::BatchOptions parallel;
  parallel.jobs = 4;
  const auto a = bh::generate_synthetic_batch(specs, serial);
  const auto b = bh::generate_synthetic_batch(specs, serial);
  const auto c = bh::generate_synthetic_batch(specs, parallel);
  EXPECT_TRUE(a.trials.tensor == b.trials.tensor);
  EXPECT_TRUE(a.trials.tensor == c.trials.tensor);
  EXPECT_EQ(a.trials.meta, c.trials.meta);
}

TEST(SynthBatch, SpecCsvRoundTrip) {
  const auto specs = ten_specs();
  std::stringstream ss;
  bh::write_synth_specs(specs, ss);
  EXPECT_EQ(bh::read_synth_specs(ss), specs);
}

TEST(SynthBatch, SpecCsvErrorsNameTheLine) {
  std::stringstream ss(
      "subject_id,condition,subcondition,trial_index,mu_hr,target_sd1_ms,target_sd2_ms,duration_s,seed\n"
      "s1,Memorize,Five,0,1.0,20,50,60,1\n"
      "s1,Memorize,Five,1,fast,20,50,60,1\n");
  try {
    bh::read_synth_specs(ss);
    FAIL();
  } catch (const bh::DataError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(SynthBatch, InvalidSpecRejected) {
  auto specs = ten_specs();
  specs[0].target_sd1_ms = 0.0;
  EXPECT_THROW(bh::generate_synthetic_batch(specs), bh::ValidationError);
}

TEST(SynthBatch, DerivedSpecsReproduceRealStatistics) {
  // A generated trial stands in for a real one; its derived targets should be
  // the medians of its own windowed Poincaré values.
  auto specs = ten_specs();
  specs.resize(3);
  const auto batch = bh::generate_synthetic_batch(specs);
  const auto derived = bh::derive_synth_specs(batch.trials, 7);
  ASSERT_EQ(derived.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(derived[i].trial_index, specs[i].trial_index);
    EXPECT_NEAR(derived[i].mu_hr, specs[i].mu_hr, 0.02 * specs[i].mu_hr);
    EXPECT_GT(derived[i].target_sd1_ms, 0.0);
    EXPECT_NEAR(derived[i].duration_s, specs[i].duration_s, 2.0);
  }
  EXPECT_NE(derived[0].seed, derived[1].seed);
}
