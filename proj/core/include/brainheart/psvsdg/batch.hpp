#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "brainheart/data/tensor.hpp"
#include "brainheart/psvsdg/calibrate.hpp"

namespace bh {

struct SynthTrialSpec {
  std::string subject_id;
  Condition condition = Condition::just_listen;
  Subcondition subcondition = Subcondition::five;
  int trial_index = 0;
  double mu_hr = 1.0;
  double target_sd1_ms = 0.0;
  double target_sd2_ms = 0.0;
  double duration_s = 60.0;
  std::uint64_t seed = 0;

  TrialMeta meta() const;
  bool operator==(const SynthTrialSpec&) const = default;
};

/// Throws ValidationError naming the offending field.
void validate_spec(const SynthTrialSpec& spec);

struct BatchOptions {
  int jobs = 1;
  double noise_sd = 0.0;
  CalibrationOptions calibration;
};

struct SkippedTrial {
  TrialMeta meta;
  std::string reason;
};

struct SynthBatch {
  /// (trial, time) tensor of RR intervals in ms; time is the beat index.
  TrialSet trials;
  std::vector<SkippedTrial> skipped;
};

/// Calibrates and generates one RR series per spec, in spec order. Specs whose
/// calibration fails are skipped and logged. Output depends only on the specs
/// and options, never on the job count.
SynthBatch generate_synthetic_batch(const std::vector<SynthTrialSpec>& specs, const BatchOptions& options = {});

/// Per-trial generator targets from real RR trials: median windowed SD1/SD2,
/// mu_hr = 1000/meanNN, duration = total trial time. Trials that cannot supply
/// a window are skipped with a log entry. Seeds derive from base_seed and the
/// trial position.
std::vector<SynthTrialSpec> derive_synth_specs(const TrialSet& rr_trials, std::uint64_t base_seed,
                                               std::size_t window_beats = 30);

/// CSV columns: subject_id,condition,subcondition,trial_index,mu_hr,
/// target_sd1_ms,target_sd2_ms,duration_s,seed.
std::vector<SynthTrialSpec> read_synth_specs(std::istream& in);
std::vector<SynthTrialSpec> read_synth_specs(const std::filesystem::path& path);
void write_synth_specs(const std::vector<SynthTrialSpec>& specs, std::ostream& out);
void write_synth_specs(const std::vector<SynthTrialSpec>& specs, const std::filesystem::path& path);

}  // namespace bh
