#include <benchmark/benchmark.h>

#include "brainheart/psvsdg/calibrate.hpp"
#include "brainheart/psvsdg/ipfm.hpp"

namespace {

void BM_IpfmGenerate(benchmark::State& state) {
  bh::PsvSdgParams p;
  p.mu_hr = 1.1;
  p.c_s = 0.08;
  p.c_v = 0.05;
  p.duration = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bh::ipfm_generate(p, 0));
}
BENCHMARK(BM_IpfmGenerate)->Arg(60)->Arg(600);

void BM_Calibrate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bh::calibrate_amplitudes(25.0, 60.0, 1.2, 120.0));
}
BENCHMARK(BM_Calibrate);

}  // namespace
