#pragma once

#include <span>
#include <vector>

namespace bh::stats {

double mean(std::span<const double> x);

/// Sample variance (divisor n - 1); NaN for fewer than two values.
double variance(std::span<const double> x);
double sd(std::span<const double> x);

/// Median of a copy; NaN when empty.
double median(std::span<const double> x);

/// Successive differences x[i+1] - x[i].
std::vector<double> diff(std::span<const double> x);

/// Returns (x - mean) / sd with the sample sd.
std::vector<double> zscore(std::span<const double> x);

}  // namespace bh::stats
