#include "brainheart/psvsdg/batch.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "brainheart/features/hrv.hpp"
#include "brainheart/util/error.hpp"
#include "brainheart/util/log.hpp"
#include "brainheart/util/parallel.hpp"
#include "brainheart/util/random.hpp"
#include "brainheart/util/stats.hpp"

namespace bh {

namespace {

constexpr std::string_view kSpecHeader =
    "subject_id,condition,subcondition,trial_index,mu_hr,target_sd1_ms,target_sd2_ms,duration_s,seed";

template <typename T>
T parse_number(std::string_view text, std::size_t line, std::string_view field) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw DataError(fmt::format("spec line {}: bad {} '{}'", line, field, text));
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

TrialMeta SynthTrialSpec::meta() const {
  TrialMeta m;
  m.subject_id = subject_id;
  m.condition = condition;
  m.subcondition = subcondition;
  m.trial_index = trial_index;
  return m;
}

void validate_spec(const SynthTrialSpec& s) {
  const std::string who = to_string(TrialKey(s.meta()));
  if (s.subject_id.empty()) throw ValidationError("spec subject_id must not be empty");
  if (!(s.mu_hr > 0.0)) throw ValidationError(fmt::format("spec {}: mu_hr must be > 0", who));
  if (!(s.target_sd1_ms > 0.0) || !(s.target_sd2_ms > 0.0)) {
    throw ValidationError(fmt::format("spec {}: targets > 0 required", who));
  }
  if (!(s.duration_s >= 10.0 / s.mu_hr)) {
    throw ValidationError(fmt::format("spec {}: duration_s must be >= 10/mu_hr", who));
  }
}

SynthBatch generate_synthetic_batch(const std::vector<SynthTrialSpec>& specs, const BatchOptions& options) {
  std::vector<TrialMeta> metas;
  for (const auto& s : specs) {
    validate_spec(s);
    metas.push_back(s.meta());
  }
  validate_meta(metas);

  std::vector<std::optional<std::vector<double>>> series(specs.size());
  std::vector<std::string> reasons(specs.size());
  parallel_for(specs.size(), options.jobs, [&](std::size_t i) {
    const auto& s = specs[i];
    try {
      const auto cal = calibrate_amplitudes(s.target_sd1_ms, s.target_sd2_ms, s.mu_hr, s.duration_s, options.calibration);
      PsvSdgParams p;
      p.mu_hr = s.mu_hr;
      p.c_s = cal.c_s;
      p.c_v = cal.c_v;
      p.duration = s.duration_s;
      p.dt = options.calibration.dt;
      p.noise_sd = options.noise_sd;
      series[i] = ipfm_generate(p, s.seed).intervals_ms();
    } catch (const DataError& e) {
      reasons[i] = e.what();
    } catch (const ValidationError& e) {
      reasons[i] = e.what();
    }
  });

  SynthBatch batch;
  std::vector<std::vector<std::vector<double>>> kept;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (series[i]) {
      kept.push_back({std::move(*series[i])});
      batch.trials.meta.push_back(metas[i]);
    } else {
      logger().warn("synthetic trial {} skipped: {}", to_string(TrialKey(metas[i])), reasons[i]);
      batch.skipped.push_back({metas[i], reasons[i]});
    }
  }
  batch.trials.tensor = SignalTensor::from_trials(kept, 1.0, Unit::millisecond, false);
  return batch;
}

std::vector<SynthTrialSpec> derive_synth_specs(const TrialSet& rr_trials, std::uint64_t base_seed,
                                               std::size_t window_beats) {
  validate_trial_set(rr_trials.tensor, rr_trials.meta);
  if (rr_trials.tensor.unit() != Unit::millisecond) {
    throw ValidationError(fmt::format("expected an RR tensor in ms, got unit {}", to_string(rr_trials.tensor.unit())));
  }
  std::vector<SynthTrialSpec> specs;
  for (std::size_t i = 0; i < rr_trials.tensor.trial_count(); ++i) {
    const auto& m = rr_trials.meta[i];
    try {
      const auto rr = rr_from_intervals(rr_trials.tensor.series(i));
      const auto w = compute_windowed_poincare(rr, window_beats);
      std::vector<double> sd1, sd2;
      for (std::size_t k = 0; k < w.sd1_t.size(); ++k) {
        if (std::isfinite(w.sd1_t[k]) && std::isfinite(w.sd2_t[k])) {
          sd1.push_back(w.sd1_t[k]);
          sd2.push_back(w.sd2_t[k]);
        }
      }
      if (sd1.empty()) throw DataError("no usable window");
      const auto plausible = rr.plausible_intervals();
      double total_ms = 0.0;
      for (const double v : rr.intervals) total_ms += v;
      SynthTrialSpec s;
      s.subject_id = m.subject_id;
      s.condition = m.condition;
      s.subcondition = m.subcondition;
      s.trial_index = m.trial_index;
      s.mu_hr = 1000.0 / stats::mean(plausible);
      s.target_sd1_ms = stats::median(sd1);
      s.target_sd2_ms = stats::median(sd2);
      s.duration_s = std::max(total_ms / 1000.0, 10.0 / s.mu_hr);
      s.seed = mix_seed(base_seed, i);
      validate_spec(s);
      specs.push_back(s);
    } catch (const std::exception& e) {
      logger().warn("trial {}: no generator targets: {}", to_string(TrialKey(m)), e.what());
    }
  }
  return specs;
}

std::vector<SynthTrialSpec> read_synth_specs(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("spec file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kSpecHeader) throw DataError(fmt::format("spec header mismatch: expected '{}'", kSpecHeader));
  std::vector<SynthTrialSpec> specs;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 9) throw DataError(fmt::format("spec line {}: expected 9 fields, got {}", lineno, f.size()));
    SynthTrialSpec s;
    s.subject_id = std::string(f[0]);
    try {
      s.condition = parse_condition(f[1]);
      s.subcondition = parse_subcondition(f[2]);
    } catch (const ValidationError& e) {
      throw DataError(fmt::format("spec line {}: {}", lineno, e.what()));
    }
    s.trial_index = parse_number<int>(f[3], lineno, "trial_index");
    s.mu_hr = parse_number<double>(f[4], lineno, "mu_hr");
    s.target_sd1_ms = parse_number<double>(f[5], lineno, "target_sd1_ms");
    s.target_sd2_ms = parse_number<double>(f[6], lineno, "target_sd2_ms");
    s.duration_s = parse_number<double>(f[7], lineno, "duration_s");
    s.seed = parse_number<std::uint64_t>(f[8], lineno, "seed");
    specs.push_back(s);
  }
  return specs;
}

std::vector<SynthTrialSpec> read_synth_specs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open spec file {}", path.string()));
  return read_synth_specs(in);
}

void write_synth_specs(const std::vector<SynthTrialSpec>& specs, std::ostream& out) {
  out << kSpecHeader << '\n';
  for (const auto& s : specs) {
    out << fmt::format("{},{},{},{},{},{},{},{},{}\n", s.subject_id, to_string(s.condition), to_string(s.subcondition),
                       s.trial_index, s.mu_hr, s.target_sd1_ms, s.target_sd2_ms, s.duration_s, s.seed);
  }
}

void write_synth_specs(const std::vector<SynthTrialSpec>& specs, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError(fmt::format("cannot write spec file {}", path.string()));
  write_synth_specs(specs, out);
}

}  // namespace bh
