#include "brainheart/util/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bh::stats {

double mean(std::span<const double> x) {
  if (x.empty()) return std::nan("");
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  if (x.size() < 2) return std::nan("");
  const double m = mean(x);
  double ss = 0.0;
  for (const double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size() - 1);
}

double sd(std::span<const double> x) { return std::sqrt(variance(x)); }

double median(std::span<const double> x) {
  if (x.empty()) return std::nan("");
  std::vector<double> v(x.begin(), x.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<double> diff(std::span<const double> x) {
  std::vector<double> d;
  if (x.size() < 2) return d;
  d.reserve(x.size() - 1);
  for (std::size_t i = 1; i < x.size(); ++i) d.push_back(x[i] - x[i - 1]);
  return d;
}

std::vector<double> zscore(std::span<const double> x) {
  const double m = mean(x);
  const double s = sd(x);
  std::vector<double> z(x.size());
  std::transform(x.begin(), x.end(), z.begin(), [m, s](double v) { return (v - m) / s; });
  return z;
}

}  // namespace bh::stats
