#pragma once

#include <cstdint>
#include <vector>

#include "brainheart/psvsdg/batch.hpp"

namespace bh::acceptance {

/// Memorize trials for Five/Nine/Thirteen with class-dependent sd1/sd2 targets.
std::vector<SynthTrialSpec> three_class_specs(std::size_t per_class, std::uint64_t seed);

}  // namespace bh::acceptance
