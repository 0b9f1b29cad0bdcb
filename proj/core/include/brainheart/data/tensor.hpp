#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bh {

enum class Axis { subject, condition, subcondition, trial, channel, time };
enum class Condition { just_listen, memorize };
enum class Subcondition { five, nine, thirteen };
enum class Unit { microvolt, millivolt, millisecond, dimensionless };

std::string_view to_string(Axis axis);
std::string_view to_string(Condition condition);
std::string_view to_string(Subcondition subcondition);
std::string_view to_string(Unit unit);

// Parsers throw ValidationError naming the offending text.
Axis parse_axis(std::string_view text);
Condition parse_condition(std::string_view text);
Subcondition parse_subcondition(std::string_view text);
Unit parse_unit(std::string_view text);

/// Pad value for samples beyond a trial's valid length.
inline constexpr float kPadValue = std::numeric_limits<float>::quiet_NaN();

struct TrialMeta {
  std::string subject_id;
  Condition condition = Condition::just_listen;
  Subcondition subcondition = Subcondition::five;
  int trial_index = 0;
  /// Seconds relative to recording start, strictly increasing.
  std::vector<double> event_onsets;

  bool operator==(const TrialMeta&) const = default;
};

/// (subject, condition, subcondition, trial) identity of a trial.
struct TrialKey {
  std::string subject_id;
  Condition condition;
  Subcondition subcondition;
  int trial_index;

  explicit TrialKey(const TrialMeta& meta)
      : subject_id(meta.subject_id),
        condition(meta.condition),
        subcondition(meta.subcondition),
        trial_index(meta.trial_index) {}

  auto operator<=>(const TrialKey&) const = default;
  bool operator==(const TrialKey&) const = default;
};

std::string to_string(const TrialKey& key);

/// Checks onsets are strictly increasing and that keys are unique.
void validate_meta(std::span<const TrialMeta> meta);

/// Trial-organised sample array. Axes follow the canonical order
/// subject, condition, subcondition, trial, channel, time (any subset, time
/// mandatory and last). Every combination of the axes before channel/time is a
/// trial cell with its own valid length; samples past it hold kPadValue.
/// Immutable after construction.
class SignalTensor {
 public:
  struct Dim {
    Axis axis;
    std::size_t extent;
    bool operator==(const Dim&) const = default;
  };

  SignalTensor() = default;

  /// Throws ValidationError on any invariant violation. Samples past each
  /// trial's valid length are overwritten with kPadValue.
  SignalTensor(std::vector<Dim> dims, double sampling_rate, Unit unit, std::vector<float> samples,
               std::vector<std::size_t> valid_length);

  /// Builds a (trial[, channel], time) tensor from ragged per-trial data:
  /// trials[t][c] is the sample sequence of channel c of trial t.
  static SignalTensor from_trials(const std::vector<std::vector<std::vector<double>>>& trials,
                                  double sampling_rate, Unit unit, bool channel_axis);

  const std::vector<Dim>& dims() const { return dims_; }
  double sampling_rate() const { return sampling_rate_; }
  Unit unit() const { return unit_; }
  std::span<const float> samples() const { return samples_; }
  const std::vector<std::size_t>& valid_length() const { return valid_length_; }

  std::size_t trial_count() const { return trial_count_; }
  std::size_t channel_count() const { return channel_count_; }
  std::size_t time_extent() const { return time_extent_; }
  bool has_axis(Axis axis) const;
  bool empty() const { return trial_count_ == 0; }

  /// Full time extent (padding included) of one channel of one trial.
  std::span<const float> row(std::size_t trial, std::size_t channel = 0) const;
  /// Valid samples of one channel of one trial, widened to double.
  std::vector<double> series(std::size_t trial, std::size_t channel = 0) const;
  /// All channels of one trial, valid samples only.
  std::vector<std::vector<double>> trial(std::size_t trial) const;

  bool operator==(const SignalTensor& other) const;

 private:
  std::vector<Dim> dims_;
  double sampling_rate_ = 1.0;
  Unit unit_ = Unit::dimensionless;
  std::vector<float> samples_;
  std::vector<std::size_t> valid_length_;
  std::size_t trial_count_ = 0;
  std::size_t channel_count_ = 1;
  std::size_t time_extent_ = 0;
};

struct TrialSet {
  SignalTensor tensor;
  std::vector<TrialMeta> meta;
};

/// Checks meta has exactly one entry per trial cell and is itself valid.
void validate_trial_set(const SignalTensor& tensor, std::span<const TrialMeta> meta);

/// Keeps the trials whose meta satisfies `predicate`. The leading axes collapse
/// into a single trial axis; channel and time axes are preserved. An empty
/// selection yields a tensor with zero trials.
TrialSet select_trials(const SignalTensor& tensor, std::span<const TrialMeta> meta,
                       const std::function<bool(const TrialMeta&)>& predicate);

/// Trials at the given indices, in order, as a (trial[, channel], time) tensor.
SignalTensor subset_trials(const SignalTensor& tensor, std::span<const std::size_t> indices);

/// Keeps the trials at the given indices, in the given order.
TrialSet take_trials(const SignalTensor& tensor, std::span<const TrialMeta> meta,
                     std::span<const std::size_t> indices);

}  // namespace bh
