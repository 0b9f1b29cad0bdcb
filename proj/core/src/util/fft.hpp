#pragma once

#include <complex>
#include <span>
#include <vector>

namespace bh::detail {

/// Real-to-complex DFT of x zero-padded (or truncated) to length n; returns
/// the n/2 + 1 non-negative frequency bins, unnormalised.
std::vector<std::complex<double>> rfft(std::span<const double> x, std::size_t n);

/// Inverse of rfft for an even length n, unnormalised (no 1/n factor).
std::vector<double> irfft(std::span<const std::complex<double>> spectrum, std::size_t n);

}  // namespace bh::detail
