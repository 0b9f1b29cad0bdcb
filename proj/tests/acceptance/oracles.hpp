#pragma once

#include <cmath>
#include <vector>

namespace bh::acceptance {

// Textbook formulas evaluated in long double, two passes, sample sd.
struct DirectHrv {
  long double mean, sdnn, rmssd, sd1, sd2;
};

inline DirectHrv direct_hrv(const std::vector<double>& ibi) {
  const std::size_t n = ibi.size();
  long double s = 0;
  for (double v : ibi) s += v;
  const long double m = s / n;
  long double ss = 0;
  for (double v : ibi) ss += (v - m) * (v - m);
  const long double var = ss / (n - 1);

  std::vector<long double> d;
  for (std::size_t i = 1; i < n; ++i) d.push_back(static_cast<long double>(ibi[i]) - ibi[i - 1]);
  long double dm = 0, sq = 0;
  for (auto v : d) {
    dm += v;
    sq += v * v;
  }
  dm /= d.size();
  long double dss = 0;
  for (auto v : d) dss += (v - dm) * (v - dm);
  const long double dvar = dss / (d.size() - 1);
  return {m, std::sqrt(var), std::sqrt(sq / d.size()), std::sqrt(dvar / 2), std::sqrt(2 * var - dvar / 2)};
}

}  // namespace bh::acceptance
