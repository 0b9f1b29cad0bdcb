#include <gtest/gtest.h>

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>
#include <unistd.h>

#include "brainheart/data/bhix.hpp"
#include "brainheart/util/error.hpp"

namespace fs = std::filesystem;

namespace {

class Bhix : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("bhix_" + std::string(info->name()) + "_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

std::vector<bh::TrialMeta> metas_for(std::size_t subjects, std::size_t conds, std::size_t subs, std::size_t trials) {
  std::vector<bh::TrialMeta> out;
  for (std::size_t s = 0; s < subjects; ++s) {
    for (std::size_t c = 0; c < conds; ++c) {
      for (std::size_t l = 0; l < subs; ++l) {
        for (std::size_t t = 0; t < trials; ++t) {
          bh::TrialMeta m;
          m.subject_id = "sub-" + std::to_string(s);
          m.condition = static_cast<bh::Condition>(c);
          m.subcondition = static_cast<bh::Subcondition>(l);
          m.trial_index = static_cast<int>(t);
          m.event_onsets = {0.5 * static_cast<double>(t + 1), 0.5 * static_cast<double>(t + 1) + 0.125};
          out.push_back(m);
        }
      }
    }
  }
  return out;
}

bh::SignalTensor five_d(std::size_t time, std::vector<std::size_t> valid, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<float> n01;
  std::vector<float> samples(valid.size() * time);
  for (auto& v : samples) v = n01(rng);
  return bh::SignalTensor({{bh::Axis::subject, 1}, {bh::Axis::condition, 2}, {bh::Axis::subcondition, 3},
                           {bh::Axis::trial, valid.size() / 6}, {bh::Axis::time, time}},
                          512.0, bh::Unit::millivolt, samples, valid);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void expect_error(const fs::path& p, const std::string& fragment) {
  try {
    bh::read_tensor(p);
    FAIL() << "expected " << fragment;
  } catch (const bh::DataError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

}  // namespace

TEST_F(Bhix, FiveDimensionalRoundTripIsExact) {
  const auto t = five_d(100, std::vector<std::size_t>(24, 100), 1);
  const auto meta = metas_for(1, 2, 3, 4);
  bh::write_tensor(t, meta, dir_);
  const auto back = bh::read_tensor(dir_);
  EXPECT_EQ(back.tensor, t);
  EXPECT_EQ(back.meta, meta);
  EXPECT_EQ(back.tensor.dims(), t.dims());
  EXPECT_EQ(back.tensor.unit(), bh::Unit::millivolt);
  EXPECT_EQ(back.tensor.sampling_rate(), 512.0);
  const auto a = t.samples();
  const auto b = back.tensor.samples();
  EXPECT_EQ(std::memcmp(a.data(), b.data(), a.size() * sizeof(float)), 0);
}

TEST_F(Bhix, ValidLengthSurvivesReadBack) {
  std::vector<std::size_t> valid(6, 100);
  valid[2] = 80;
  bh::write_tensor(five_d(100, valid, 2), metas_for(1, 2, 3, 1), dir_);
  const auto back = bh::read_tensor(dir_);
  EXPECT_EQ(back.tensor.valid_length()[2], 80u);
  EXPECT_EQ(back.tensor.series(2).size(), 80u);
}

TEST_F(Bhix, IncompleteMetaIsRejected) {
  auto meta = metas_for(1, 2, 3, 1);
  meta.pop_back();
  try {
    bh::write_tensor(five_d(10, std::vector<std::size_t>(6, 10), 3), meta, dir_);
    FAIL();
  } catch (const bh::ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("meta incomplete"), std::string::npos);
  }
}

TEST_F(Bhix, BlobStartsWithMagicAndLittleEndianFloats) {
  const auto t = bh::SignalTensor::from_trials({{{1.0, -2.5}}}, 10.0, bh::Unit::microvolt, false);
  bh::write_tensor(t, metas_for(1, 1, 1, 1), dir_);
  const auto blob = slurp(dir_ / "data.bhix");
  ASSERT_EQ(blob.size(), 8u + 2 * 4u);
  EXPECT_EQ(blob.substr(0, 8), "BHIX0001");
  // 1.0f = 0x3F800000, -2.5f = 0xC0200000, little endian.
  const unsigned char want[] = {0x00, 0x00, 0x80, 0x3F, 0x00, 0x00, 0x20, 0xC0};
  EXPECT_EQ(std::memcmp(blob.data() + 8, want, sizeof want), 0);
  const auto manifest = nlohmann::json::parse(slurp(dir_ / "manifest.json"));
  EXPECT_EQ(manifest["format_version"], 1);
}

TEST_F(Bhix, TruncatedBlobIsReported) {
  bh::write_tensor(five_d(10, std::vector<std::size_t>(6, 10), 4), metas_for(1, 2, 3, 1), dir_);
  const auto size = fs::file_size(dir_ / "data.bhix");
  fs::resize_file(dir_ / "data.bhix", size - 1);
  expect_error(dir_, "truncated blob");
}

TEST_F(Bhix, DimDisagreementIsReported) {
  // Manifest says 2x2, blob carries 3x2.
  const auto big = bh::SignalTensor::from_trials({{{1, 2}}, {{3, 4}}, {{5, 6}}}, 1.0, bh::Unit::dimensionless, false);
  bh::write_tensor(big, metas_for(1, 1, 1, 3), dir_ / "big");
  const auto small = bh::SignalTensor::from_trials({{{1, 2}}, {{3, 4}}}, 1.0, bh::Unit::dimensionless, false);
  bh::write_tensor(small, metas_for(1, 1, 1, 2), dir_ / "small");
  fs::copy_file(dir_ / "big" / "data.bhix", dir_ / "small" / "data.bhix", fs::copy_options::overwrite_existing);
  expect_error(dir_ / "small", "dim disagreement");
}

TEST_F(Bhix, BadMagicAndVersionAreReported) {
  bh::write_tensor(five_d(10, std::vector<std::size_t>(6, 10), 5), metas_for(1, 2, 3, 1), dir_);
  auto blob = slurp(dir_ / "data.bhix");
  blob[4] = '9';
  std::ofstream(dir_ / "data.bhix", std::ios::binary | std::ios::trunc) << blob;
  expect_error(dir_, "bad magic");

  auto manifest = nlohmann::json::parse(slurp(dir_ / "manifest.json"));
  manifest["format_version"] = 2;
  std::ofstream(dir_ / "manifest.json", std::ios::trunc) << manifest.dump();
  expect_error(dir_, "version mismatch");
}

TEST_F(Bhix, ConcurrentWriterIsRejected) {
  const auto t = five_d(10, std::vector<std::size_t>(6, 10), 6);
  bh::write_tensor(t, metas_for(1, 2, 3, 1), dir_);
  // No lock file is left behind after a successful write.
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(dir_)) names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  EXPECT_EQ(names, (std::vector<std::string>{"data.bhix", "manifest.json"}));

  // A held lock makes a second writer fail.
  std::ofstream(dir_ / ".lock") << "";
  EXPECT_THROW(bh::write_tensor(t, metas_for(1, 2, 3, 1), dir_), bh::DataError);
}

TEST_F(Bhix, RandomShapesRoundTrip) {
  std::mt19937 rng(77);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t trials = 1 + rng() % 5;
    const std::size_t channels = 1 + rng() % 4;
    std::vector<std::vector<std::vector<double>>> data(trials);
    for (auto& trial : data) {
      const std::size_t n = 1 + rng() % 40;
      trial.assign(channels, std::vector<double>(n));
      for (auto& ch : trial) {
        for (auto& v : ch) v = std::uniform_real_distribution<double>(-1e3, 1e3)(rng);
      }
    }
    const auto t = bh::SignalTensor::from_trials(data, 1.0 + rng() % 1000, bh::Unit::microvolt, channels > 1);
    const auto meta = metas_for(1, 1, 1, trials);
    const auto dst = dir_ / std::to_string(rep);
    bh::write_tensor(t, meta, dst);
    const auto back = bh::read_tensor(dst);
    EXPECT_EQ(back.tensor, t) << "rep " << rep;
    EXPECT_EQ(back.meta, meta);
  }
}
