#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "brainheart/features/bandpower.hpp"
#include "brainheart/psvsdg/ipfm.hpp"
#include "brainheart/util/error.hpp"

namespace {

// Closed-form integral of the rate from 0 to t.
double phase(const bh::PsvSdgParams& p, double t) {
  return p.mu_hr * t + p.c_s / p.omega_s * (1.0 - std::cos(p.omega_s * t)) +
         p.c_v / p.omega_v * (1.0 - std::cos(p.omega_v * t));
}

// Beat k fires where the phase reaches k; the phase is increasing, so bisect.
std::vector<double> exact_beats(const bh::PsvSdgParams& p) {
  std::vector<double> beats;
  for (int k = 1; phase(p, p.duration) >= k; ++k) {
    double lo = 0.0, hi = p.duration;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (phase(p, mid) < k ? lo : hi) = mid;
    }
    beats.push_back(0.5 * (lo + hi));
  }
  return beats;
}

bh::PsvSdgParams params(double mu, double cs, double cv, double duration) {
  bh::PsvSdgParams p;
  p.mu_hr = mu;
  p.c_s = cs;
  p.c_v = cv;
  p.duration = duration;
  return p;
}

// Peak frequency of the RR tachogram resampled at 4 Hz.
double tachogram_peak_hz(const bh::BeatTrain& train) {
  const auto& b = train.beat_times;
  std::vector<double> t, rr;
  for (std::size_t i = 1; i < b.size(); ++i) {
    t.push_back(b[i]);
    rr.push_back(b[i] - b[i - 1]);
  }
  std::vector<double> grid;
  std::size_t j = 0;
  for (double x = t.front(); x <= t.back(); x += 0.25) {
    while (j + 2 < t.size() && t[j + 1] < x) ++j;
    const double w = (x - t[j]) / (t[j + 1] - t[j]);
    grid.push_back(rr[j] + w * (rr[j + 1] - rr[j]));
  }
  const auto psd = bh::welch_psd(grid, 4.0, 64.0);
  std::size_t best = 1;
  for (std::size_t k = 1; k < psd.power.size(); ++k) {
    if (psd.power[k] > psd.power[best]) best = k;
  }
  return static_cast<double>(best) * psd.df;
}

}  // namespace

TEST(Ipfm, ConstantRateBeatsOnTheSecond) {
  const auto train = bh::ipfm_generate(params(1.0, 0.0, 0.0, 10.0), 0);
  ASSERT_EQ(train.beat_times.size(), 10u);
  for (std::size_t k = 0; k < 10; ++k) EXPECT_NEAR(train.beat_times[k], static_cast<double>(k + 1), 1e-6);
}

TEST(Ipfm, MatchesClosedFormPhase) {
  const auto p = params(1.2, 0.15, 0.1, 60.0);
  const auto got = bh::ipfm_generate(p, 0).beat_times;
  const auto want = exact_beats(p);
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(got[k], want[k], p.mu_hr * p.dt);
}

TEST(Ipfm, VagalModulationKeepsMeanInterval) {
  const auto train = bh::ipfm_generate(params(1.2, 0.0, 0.1, 120.0), 0);
  const auto rr = train.intervals_ms();
  double mean = 0;
  for (double v : rr) mean += v;
  mean /= static_cast<double>(rr.size());
  EXPECT_NEAR(mean / 1000.0, 1.0 / 1.2, 0.01 / 1.2);
}

TEST(Ipfm, BeatCountFollowsIntegral) {
  for (const auto& p : {params(1.0, 0.2, 0.1, 37.3), params(1.4, 0.05, 0.3, 100.0), params(0.9, 0.4, 0.0, 55.5)}) {
    const auto n = static_cast<double>(bh::ipfm_generate(p, 0).beat_times.size());
    EXPECT_LE(std::abs(n - std::round(phase(p, p.duration))), 1.0);
  }
}

TEST(Ipfm, HalvingStepMovesBeatsLessThanMuDt) {
  auto p = params(1.1, 0.2, 0.15, 80.0);
  p.dt = 0.004;
  const auto a = bh::ipfm_generate(p, 0).beat_times;
  auto q = p;
  q.dt = p.dt / 2;
  const auto b = bh::ipfm_generate(q, 0).beat_times;
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_LT(std::abs(a[k] - b[k]), p.mu_hr * p.dt);
}

TEST(Ipfm, VagalPeakInHighBand) {
  const double f = tachogram_peak_hz(bh::ipfm_generate(params(1.1, 0.0, 0.1, 600.0), 0));
  EXPECT_GE(f, 0.2);
  EXPECT_LE(f, 0.3);
}

TEST(Ipfm, SympatheticPeakInLowBand) {
  const double f = tachogram_peak_hz(bh::ipfm_generate(params(1.1, 0.1, 0.0, 600.0), 0));
  EXPECT_GE(f, 0.05);
  EXPECT_LE(f, 0.15);
}

TEST(Ipfm, NonPositiveRateRejected) {
  try {
    bh::ipfm_generate(params(1.0, 0.6, 0.5, 60.0), 0);
    FAIL();
  } catch (const bh::ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("non-positive rate"), std::string::npos);
  }
}

TEST(Ipfm, ParameterValidation) {
  auto p = params(1.0, 0.0, 0.0, 60.0);
  p.dt = 0.01;
  EXPECT_THROW(bh::validate_params(p), bh::ValidationError);
  p = params(1.0, 0.0, 0.0, 5.0);
  EXPECT_THROW(bh::validate_params(p), bh::ValidationError);
  p = params(0.0, 0.0, 0.0, 60.0);
  EXPECT_THROW(bh::validate_params(p), bh::ValidationError);
}

TEST(Ipfm, NoiseIsSeededAndOptional) {
  auto p = params(1.0, 0.05, 0.05, 60.0);
  EXPECT_EQ(bh::ipfm_generate(p, 1).beat_times, bh::ipfm_generate(p, 2).beat_times);
  p.noise_sd = 0.05;
  EXPECT_EQ(bh::ipfm_generate(p, 1).beat_times, bh::ipfm_generate(p, 1).beat_times);
  EXPECT_NE(bh::ipfm_generate(p, 1).beat_times, bh::ipfm_generate(p, 2).beat_times);
}
