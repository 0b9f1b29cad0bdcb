#include "brainheart/features/catch22.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "brainheart/util/error.hpp"
#include "../util/fft.hpp"

namespace bh {

namespace {

using Vec = std::vector<double>;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double mean(std::span<const double> a) {
  double s = 0.0;
  for (const double v : a) s += v;
  return s / static_cast<double>(a.size());
}

double stddev(std::span<const double> a) {
  const double m = mean(a);
  double s = 0.0;
  for (const double v : a) s += (v - m) * (v - m);
  return std::sqrt(s / static_cast<double>(a.size() - 1));
}

double median(Vec a) {
  std::sort(a.begin(), a.end());
  const std::size_t n = a.size();
  if (n % 2 == 1) return a[n / 2];
  return (a[n / 2] + a[n / 2 - 1]) / 2.0;
}

double corr(std::span<const double> x, std::span<const double> y) {
  const double mx = mean(x);
  const double my = mean(y);
  double nom = 0.0, dx = 0.0, dy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    nom += (x[i] - mx) * (y[i] - my);
    dx += (x[i] - mx) * (x[i] - mx);
    dy += (y[i] - my) * (y[i] - my);
  }
  return nom / std::sqrt(dx * dy);
}

double cov3(const double* x, const double* y) {
  const double mx = (x[0] + x[1] + x[2]) / 3.0;
  const double my = (y[0] + y[1] + y[2]) / 3.0;
  double c = 0.0;
  for (int i = 0; i < 3; ++i) c += (x[i] - mx) * (y[i] - my);
  return c / 2.0;
}

// Ordinary least squares line; m = b = 0 when x is degenerate.
void linreg(std::span<const double> x, std::span<const double> y, double& m, double& b) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sx2 = 0.0, sxy = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sx2 += x[i] * x[i];
    sxy += x[i] * y[i];
    sy += y[i];
  }
  const double denom = n * sx2 - sx * sx;
  if (denom == 0.0) {
    m = b = 0.0;
    return;
  }
  m = (n * sxy - sx * sy) / denom;
  b = (sy * sx2 - sx * sxy) / denom;
}

std::size_t nextpow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Autocorrelation at every lag via zero-padded FFT, normalised to lag 0.
Vec autocorrs(std::span<const double> y) {
  const double m = mean(y);
  Vec c(y.begin(), y.end());
  for (double& v : c) v -= m;
  const std::size_t nfft = nextpow2(y.size()) * 2;
  auto spec = detail::rfft(c, nfft);
  for (auto& z : spec) z = std::norm(z);
  Vec ac = detail::irfft(spec, nfft);
  const double a0 = ac[0];
  for (double& v : ac) v /= a0;
  return ac;
}

std::size_t first_zero(std::span<const double> y, std::size_t maxtau) {
  const Vec ac = autocorrs(y);
  std::size_t i = 0;
  while (ac[i] > 0 && i < maxtau) ++i;
  return i;
}

double quantile(Vec sorted, double q) {
  const std::size_t n = sorted.size();
  const double lim = 0.5 / static_cast<double>(n);
  if (q < lim) return sorted.front();
  if (q > 1.0 - lim) return sorted.back();
  const double idx = static_cast<double>(n) * q - 0.5;
  const auto l = static_cast<std::size_t>(std::floor(idx));
  const auto r = static_cast<std::size_t>(std::ceil(idx));
  if (l == r) return sorted[l];
  return sorted[l] + (idx - static_cast<double>(l)) * (sorted[r] - sorted[l]) / static_cast<double>(r - l);
}

// Labels 1..groups by quantile thresholds.
std::vector<int> coarse_grain(std::span<const double> y, int groups) {
  Vec sorted(y.begin(), y.end());
  std::sort(sorted.begin(), sorted.end());
  Vec th(static_cast<std::size_t>(groups) + 1);
  double ls = 0.0;
  const double step = 1.0 / groups;
  for (int i = 0; i <= groups; ++i) {
    th[static_cast<std::size_t>(i)] = quantile(sorted, ls);
    ls += step;
  }
  th[0] -= 1.0;
  std::vector<int> labels(y.size(), 0);
  for (int i = 0; i < groups; ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j] > th[static_cast<std::size_t>(i)] && y[j] <= th[static_cast<std::size_t>(i) + 1]) labels[j] = i + 1;
    }
  }
  return labels;
}

struct Histogram {
  std::vector<int> counts;
  Vec edges;
};

Histogram histcounts(std::span<const double> y, int nbins) {
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  const double mn = *lo;
  const double step = (*hi - mn) / nbins;
  Histogram h;
  h.counts.assign(static_cast<std::size_t>(nbins), 0);
  for (const double v : y) {
    int k = static_cast<int>((v - mn) / step);
    k = std::clamp(k, 0, nbins - 1);
    ++h.counts[static_cast<std::size_t>(k)];
  }
  h.edges.resize(static_cast<std::size_t>(nbins) + 1);
  for (int i = 0; i <= nbins; ++i) h.edges[static_cast<std::size_t>(i)] = i * step + mn;
  return h;
}

double histogram_mode(std::span<const double> y, int nbins) {
  const auto h = histcounts(y, nbins);
  double max_count = 0.0;
  int num_maxs = 1;
  double out = 0.0;
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const double centre = (h.edges[i] + h.edges[i + 1]) * 0.5;
    if (h.counts[i] > max_count) {
      max_count = h.counts[i];
      num_maxs = 1;
      out = centre;
    } else if (h.counts[i] == max_count) {
      ++num_maxs;
      out += centre;
    }
  }
  return out / num_maxs;
}

double f1ecac(const Vec& ac, std::size_t n) {
  const double thresh = 1.0 / std::exp(1.0);
  for (std::size_t i = 0; i + 2 < n; ++i) {
    if (ac[i + 1] < thresh) return static_cast<double>(i) + (thresh - ac[i]) / (ac[i + 1] - ac[i]);
  }
  return static_cast<double>(n);
}

double first_min_ac(const Vec& ac, std::size_t n) {
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (ac[i] < ac[i - 1] && ac[i] < ac[i + 1]) return static_cast<double>(i);
  }
  return static_cast<double>(n);
}

double histogram_ami_even_2_5(std::span<const double> y) {
  constexpr int tau = 2;
  constexpr int nb = 5;
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  const double step = (*hi - *lo + 0.2) / nb;
  double edges[nb + 1];
  for (int i = 0; i <= nb; ++i) edges[i] = *lo + step * i - 0.1;
  auto assign = [&](double v) {
    for (int j = 0; j <= nb; ++j) {
      if (v < edges[j]) return j;
    }
    return 0;
  };
  const std::size_t m = y.size() - tau;
  double joint[nb][nb] = {};
  int total = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const int a = assign(y[i]);
    const int b = assign(y[i + tau]);
    if (a >= 1 && b >= 1) {
      joint[a - 1][b - 1] += 1.0;
      ++total;
    }
  }
  double pa[nb] = {}, pb[nb] = {};
  for (int i = 0; i < nb; ++i) {
    for (int j = 0; j < nb; ++j) {
      joint[i][j] /= total;
      pa[i] += joint[i][j];
      pb[j] += joint[i][j];
    }
  }
  double ami = 0.0;
  for (int i = 0; i < nb; ++i) {
    for (int j = 0; j < nb; ++j) {
      if (joint[i][j] > 0) ami += joint[i][j] * std::log(joint[i][j] / (pa[i] * pb[j]));
    }
  }
  return ami;
}

double trev_1_num(std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < y.size(); ++i) s += std::pow(y[i + 1] - y[i], 3);
  return s / static_cast<double>(y.size() - 1);
}

double pnn40(std::span<const double> y) {
  double c = 0.0;
  for (std::size_t i = 0; i + 1 < y.size(); ++i) {
    if (std::fabs(y[i + 1] - y[i]) * 1000 > 40) c += 1.0;
  }
  return c / static_cast<double>(y.size() - 1);
}

// Longest stretch between consecutive "break" symbols over the first n-1 entries.
template <class IsBreak>
double longest_stretch(std::size_t n, IsBreak is_break) {
  long best = 0;
  long last = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (is_break(i) || i == n - 2) {
      const long stretch = static_cast<long>(i) - last;
      best = std::max(best, stretch);
      last = static_cast<long>(i);
    }
  }
  return static_cast<double>(best);
}

double transition_matrix_3ac_sumdiagcov(std::span<const double> y) {
  if (std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; })) return kNaN;
  const std::size_t n = y.size();
  const std::size_t tau = first_zero(y, n);
  const std::size_t n_down = (n - 1) / tau + 1;
  Vec down(n_down);
  for (std::size_t i = 0; i < n_down; ++i) down[i] = y[i * tau];
  const auto cg = coarse_grain(down, 3);
  double T[3][3] = {};
  for (std::size_t j = 0; j + 1 < n_down; ++j) T[cg[j] - 1][cg[j + 1] - 1] += 1.0;
  for (auto& row : T) {
    for (double& v : row) v /= static_cast<double>(n_down - 1);
  }
  double out = 0.0;
  for (int c = 0; c < 3; ++c) {
    const double col[3] = {T[0][c], T[1][c], T[2][c]};
    out += cov3(col, col);
  }
  return out;
}

// Least-squares cubic spline, C2 at a single interior break.
Vec spline_fit(std::span<const double> y) {
  const std::size_t n = y.size();
  const double span = static_cast<double>(n - 1);
  const double brk = static_cast<double>(n / 2 - 1) / span;
  Eigen::MatrixXd A(static_cast<Eigen::Index>(n), 5);
  Eigen::VectorXd b(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / span;
    const double k = std::max(0.0, t - brk);
    const auto r = static_cast<Eigen::Index>(i);
    A(r, 0) = 1.0;
    A(r, 1) = t;
    A(r, 2) = t * t;
    A(r, 3) = t * t * t;
    A(r, 4) = k * k * k;
    b(r) = y[i];
  }
  const Eigen::VectorXd coef = A.colPivHouseholderQr().solve(b);
  const Eigen::VectorXd fit = A * coef;
  return Vec(fit.data(), fit.data() + fit.size());
}

double periodicity_wang(std::span<const double> y) {
  const std::size_t n = y.size();
  const Vec spline = spline_fit(y);
  Vec sub(n);
  for (std::size_t i = 0; i < n; ++i) sub[i] = y[i] - spline[i];
  const auto acmax = static_cast<std::size_t>(std::ceil(static_cast<double>(n) / 3.0));
  Vec acf(acmax);
  for (std::size_t tau = 1; tau <= acmax; ++tau) {
    double acc = 0.0;
    for (std::size_t i = 0; i + tau < n; ++i) acc += sub[i] * sub[i + tau];
    acf[tau - 1] = acc / static_cast<double>(n - tau);
  }
  long last_trough = -1;
  for (std::size_t i = 1; i + 2 <= acmax; ++i) {
    const double in = acf[i] - acf[i - 1];
    const double out = acf[i + 1] - acf[i];
    if (in < 0 && out > 0) {
      last_trough = static_cast<long>(i);
    } else if (in > 0 && out < 0) {
      if (last_trough < 0) continue;
      const double peak = acf[i];
      if (peak - acf[static_cast<std::size_t>(last_trough)] < 0.01) continue;
      if (peak < 0) continue;
      return static_cast<double>(i);
    }
  }
  return 0.0;
}

double embed2_dist_expfit_meandiff(std::span<const double> y) {
  const std::size_t n = y.size();
  std::size_t tau = first_zero(y, n);
  if (static_cast<double>(tau) > static_cast<double>(n) / 10.0) tau = n / 10;
  const std::size_t m = n - tau - 1;
  Vec d(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double a = y[i + 1] - y[i];
    const double b = y[i + tau] - y[i + tau + 1];
    d[i] = std::sqrt(a * a + b * b);
  }
  const double l = mean(d);
  const double sd = stddev(d);
  if (sd < 0.001) return 0.0;
  const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
  const int nbins = static_cast<int>(std::ceil((*hi - *lo) / (3.5 * sd / std::pow(static_cast<double>(m), 1 / 3.))));
  if (nbins == 0) return 0.0;
  const auto h = histcounts(d, nbins);
  double acc = 0.0;
  for (int i = 0; i < nbins; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double p = static_cast<double>(h.counts[k]) / static_cast<double>(m);
    const double expf = std::max(0.0, std::exp(-(h.edges[k] + h.edges[k + 1]) * 0.5 / l) / l);
    acc += std::fabs(p - expf);
  }
  return acc / nbins;
}

double auto_mutual_info_fmmi(std::span<const double> y) {
  const long n = static_cast<long>(y.size());
  const long tau = std::min<long>(40, (n + 1) / 2);
  if (tau < 3) return static_cast<double>(tau);
  auto ami = [&](long lag) {
    const auto k = static_cast<std::size_t>(lag);
    const double r = corr(y.first(y.size() - k), y.subspan(k));
    return -0.5 * std::log(1.0 - r * r);
  };
  double prev = ami(1);
  double curr = ami(2);
  for (long i = 1; i < tau - 1; ++i) {
    const double next = ami(i + 2);
    if (curr < prev && curr < next) return static_cast<double>(i);
    prev = curr;
    curr = next;
  }
  return static_cast<double>(tau);
}

double local_simple_mean1_tauresrat(std::span<const double> y) {
  const std::size_t n = y.size() - 1;
  Vec res(n);
  for (std::size_t i = 0; i < n; ++i) res[i] = y[i + 1] - y[i];
  return static_cast<double>(first_zero(res, n)) / static_cast<double>(first_zero(y, y.size()));
}

double local_simple_mean3_stderr(std::span<const double> y) {
  const std::size_t n = y.size() - 3;
  Vec res(n);
  for (std::size_t i = 0; i < n; ++i) res[i] = y[i + 3] - (y[i] + y[i + 1] + y[i + 2]) / 3.0;
  return stddev(res);
}

double outlier_include_mdrmd(std::span<const double> y, double sign) {
  const std::size_t n = y.size();
  if (std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; })) return 0.0;
  constexpr double inc = 0.01;
  Vec w(n);
  int tot = 0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = sign * y[i];
    if (w[i] >= 0) ++tot;
  }
  const double mx = *std::max_element(w.begin(), w.end());
  if (mx < inc) return 0.0;
  const int n_thresh = static_cast<int>(mx / inc + 1);

  // Highest threshold index each sample satisfies, via the same >= j*inc test.
  std::vector<int> level(n);
  std::vector<int> count_at(static_cast<std::size_t>(n_thresh), 0);
  for (std::size_t i = 0; i < n; ++i) {
    const double q = w[i] / inc;
    int j = q >= n_thresh - 1 ? n_thresh - 1 : (q < 0 ? -1 : static_cast<int>(q));
    while (j + 1 < n_thresh && w[i] >= (j + 1) * inc) ++j;
    while (j >= 0 && w[i] < j * inc) --j;
    level[i] = j;
    if (j >= 0) ++count_at[static_cast<std::size_t>(j)];
  }
  std::vector<int> C(static_cast<std::size_t>(n_thresh));
  int run = 0;
  for (int j = n_thresh - 1; j >= 0; --j) {
    run += count_at[static_cast<std::size_t>(j)];
    C[static_cast<std::size_t>(j)] = run;
  }
  int mj = 0;
  int fbi = n_thresh - 1;
  for (int j = 0; j < n_thresh; ++j) {
    if ((C[static_cast<std::size_t>(j)] - 1) * 100.0 / tot > 2) mj = j;
  }
  for (int j = n_thresh - 1; j >= 0; --j) {
    if (C[static_cast<std::size_t>(j)] == 1) fbi = j;
  }
  const int trim = std::min(mj, fbi);

  const double half = static_cast<double>(n) / 2.0;
  Vec ms(static_cast<std::size_t>(trim) + 1);
  Vec idx;
  idx.reserve(n);
  for (int j = 0; j <= trim; ++j) {
    idx.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (level[i] >= j) idx.push_back(static_cast<double>(i + 1));
    }
    ms[static_cast<std::size_t>(j)] = median(idx) / half - 1.0;
  }
  return median(ms);
}

struct WelchRect {
  double area_5_1 = 0.0;
  double centroid = 0.0;
};

WelchRect welch_rect(std::span<const double> y) {
  const std::size_t n = y.size();
  const std::size_t nfft = nextpow2(n);
  const double m = mean(y);
  Vec c(y.begin(), y.end());
  for (double& v : c) v -= m;
  const auto F = detail::rfft(c, nfft);
  const std::size_t nw = nfft / 2 + 1;
  constexpr double pi = 3.14159265359;
  Vec w(nw), sw(nw);
  for (std::size_t i = 0; i < nw; ++i) {
    double s = std::norm(F[i]) / static_cast<double>(n);
    if (i > 0 && i < nw - 1) s *= 2.0;
    w[i] = 2 * pi * (static_cast<double>(i) / static_cast<double>(nfft));
    sw[i] = s / (2 * pi);
    if (std::isinf(sw[i])) return {};
  }
  WelchRect out;
  const double dw = w[1] - w[0];
  for (std::size_t i = 0; i < nw / 5; ++i) out.area_5_1 += sw[i];
  out.area_5_1 *= dw;
  Vec cs(nw);
  std::partial_sum(sw.begin(), sw.end(), cs.begin());
  const double half = cs.back() * 0.5;
  for (std::size_t i = 0; i < nw; ++i) {
    if (cs[i] > half) {
      out.centroid = w[i];
      break;
    }
  }
  return out;
}

double motif_three_hh(std::span<const double> y) {
  const std::size_t n = y.size();
  const auto yt = coarse_grain(y, 3);
  double hh = 0.0;
  for (int a = 1; a <= 3; ++a) {
    double counts[3] = {};
    for (std::size_t p = 0; p + 1 < n; ++p) {
      if (yt[p] != a) continue;
      const int b = yt[p + 1];
      if (b >= 1 && b <= 3) counts[b - 1] += 1.0;
    }
    for (const double c : counts) {
      const double p = c / (static_cast<double>(n) - 1.0);
      if (p > 0) hh -= p * std::log(p);
    }
  }
  return hh;
}

double fluct_anal(std::span<const double> y, int lag, bool dfa) {
  const int size = static_cast<int>(y.size());
  const double lin_low = std::log(5.0);
  const double lin_high = std::log(static_cast<double>(size / 2));
  constexpr int steps = 50;
  const double step = (lin_high - lin_low) / (steps - 1);
  int tau[steps];
  for (int i = 0; i < steps; ++i) tau[i] = static_cast<int>(std::round(std::exp(lin_low + i * step)));
  // Duplicate removal mirrors the reference, including its stale tail.
  int n_tau = steps;
  for (int i = 0; i < steps - 1; ++i) {
    while (tau[i] == tau[i + 1] && i < n_tau - 1) {
      for (int j = i + 1; j < steps - 1; ++j) tau[j] = tau[j + 1];
      --n_tau;
    }
  }
  if (n_tau < 12) return 0.0;

  const int size_cs = size / lag;
  Vec ycs(static_cast<std::size_t>(size_cs));
  ycs[0] = y[0];
  for (int i = 0; i + 1 < size_cs; ++i) ycs[static_cast<std::size_t>(i) + 1] = ycs[static_cast<std::size_t>(i)] + y[static_cast<std::size_t>((i + 1) * lag)];

  Vec F(static_cast<std::size_t>(n_tau));
  for (int i = 0; i < n_tau; ++i) {
    const int t = tau[i];
    const int n_buf = size_cs / t;
    double sx = 0.0, sx2 = 0.0;
    for (int k = 0; k < t; ++k) {
      sx += k + 1;
      sx2 += static_cast<double>(k + 1) * (k + 1);
    }
    const double denom = t * sx2 - sx * sx;
    double acc = 0.0;
    for (int j = 0; j < n_buf; ++j) {
      const double* win = ycs.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(t);
      double sxy = 0.0, sy = 0.0;
      for (int k = 0; k < t; ++k) {
        sxy += (k + 1) * win[k];
        sy += win[k];
      }
      double m = 0.0, b = 0.0;
      if (denom != 0.0) {
        m = (t * sxy - sx * sy) / denom;
        b = (sy * sx2 - sx * sxy) / denom;
      }
      if (dfa) {
        for (int k = 0; k < t; ++k) {
          const double r = win[k] - (m * (k + 1) + b);
          acc += r * r;
        }
      } else {
        double r = win[0] - (m + b);
        double mx = r, mn = r;
        for (int k = 1; k < t; ++k) {
          r = win[k] - (m * (k + 1) + b);
          mx = std::max(mx, r);
          mn = std::min(mn, r);
        }
        acc += (mx - mn) * (mx - mn);
      }
    }
    F[static_cast<std::size_t>(i)] = dfa ? std::sqrt(acc / (n_buf * t)) : std::sqrt(acc / n_buf);
  }

  const int ntt = n_tau;
  Vec logt(static_cast<std::size_t>(ntt)), logf(static_cast<std::size_t>(ntt));
  for (int i = 0; i < ntt; ++i) {
    logt[static_cast<std::size_t>(i)] = std::log(static_cast<double>(tau[i]));
    logf[static_cast<std::size_t>(i)] = std::log(F[static_cast<std::size_t>(i)]);
  }
  constexpr int min_points = 6;
  Vec sserr;
  auto resid_norm = [&](std::size_t start, std::size_t len) {
    double m = 0.0, b = 0.0;
    const std::span<const double> xs(logt.data() + start, len);
    const std::span<const double> ys(logf.data() + start, len);
    linreg(xs, ys, m, b);
    double s = 0.0;
    for (std::size_t j = 0; j < len; ++j) {
      const double r = xs[j] * m + b - ys[j];
      s += r * r;
    }
    return std::sqrt(s);
  };
  for (int i = min_points; i < ntt - min_points + 1; ++i) {
    sserr.push_back(resid_norm(0, static_cast<std::size_t>(i)) +
                    resid_norm(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(ntt - i + 1)));
  }
  const auto first_min = std::min_element(sserr.begin(), sserr.end()) - sserr.begin();
  const double ind = static_cast<double>(first_min + min_points - 1);
  return (ind + 1) / ntt;
}

}  // namespace

Catch22Vector catch22_degenerate() {
  Catch22Vector v;
  v.fill(kNaN);
  v[2] = 0.0;  // CO_f1ecac
  v[3] = 0.0;  // CO_FirstMin_ac
  v[9] = 0.0;  // PD_PeriodicityWang_th0_01
  return v;
}

Catch22Vector compute_catch22(std::span<const double> x) {
  if (x.size() < kCatch22MinLength) {
    throw ValidationError(fmt::format("series too short for catch22: {} < {}", x.size(), kCatch22MinLength));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) throw ValidationError(fmt::format("non-finite value at index {}", i));
  }
  const double m = mean(x);
  const double sd = stddev(x);
  if (!(sd >= 1e-12)) return catch22_degenerate();

  Vec y(x.begin(), x.end());
  for (double& v : y) v = (v - m) / sd;
  const std::size_t n = y.size();
  const Vec ac = autocorrs(y);
  const double ymean = mean(y);
  const auto welch = welch_rect(y);

  Catch22Vector out;
  out[0] = histogram_mode(y, 5);
  out[1] = histogram_mode(y, 10);
  out[2] = f1ecac(ac, n);
  out[3] = first_min_ac(ac, n);
  out[4] = histogram_ami_even_2_5(y);
  out[5] = trev_1_num(y);
  out[6] = pnn40(y);
  out[7] = longest_stretch(n, [&](std::size_t i) { return y[i] - ymean <= 0; });
  out[8] = transition_matrix_3ac_sumdiagcov(y);
  out[9] = periodicity_wang(y);
  out[10] = embed2_dist_expfit_meandiff(y);
  out[11] = auto_mutual_info_fmmi(y);
  out[12] = local_simple_mean1_tauresrat(y);
  out[13] = outlier_include_mdrmd(y, 1.0);
  out[14] = outlier_include_mdrmd(y, -1.0);
  out[15] = welch.area_5_1;
  out[16] = longest_stretch(n, [&](std::size_t i) { return y[i + 1] - y[i] >= 0; });
  out[17] = motif_three_hh(y);
  out[18] = fluct_anal(y, 1, false);
  out[19] = fluct_anal(y, 2, true);
  out[20] = welch.centroid;
  out[21] = local_simple_mean3_stderr(y);
  return out;
}

}  // namespace bh
