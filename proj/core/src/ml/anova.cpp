#include "brainheart/ml/anova.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include "brainheart/util/error.hpp"

namespace bh::ml {

namespace {

void check_groups(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw ValidationError(fmt::format("ANOVA needs at least 2 groups, got {}", groups.size()));
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].size() < 2) throw ValidationError(fmt::format("group {} has {} values; at least 2 required", g, groups[g].size()));
    for (const double v : groups[g]) {
      if (!std::isfinite(v)) throw ValidationError(fmt::format("group {} holds a non-finite value", g));
    }
  }
}

double mean_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

double sum_sq_dev(const std::vector<double>& v, double m) {
  double s = 0.0;
  for (const double x : v) s += (x - m) * (x - m);
  return s;
}

}  // namespace

AnovaResult anova_oneway(const std::vector<std::vector<double>>& groups) {
  check_groups(groups);
  std::size_t n = 0;
  double grand = 0.0;
  for (const auto& g : groups) {
    n += g.size();
    grand += std::accumulate(g.begin(), g.end(), 0.0);
  }
  grand /= static_cast<double>(n);

  double ss_between = 0.0, ss_within = 0.0;
  for (const auto& g : groups) {
    const double m = mean_of(g);
    ss_between += static_cast<double>(g.size()) * (m - grand) * (m - grand);
    ss_within += sum_sq_dev(g, m);
  }
  AnovaResult r;
  r.df_between = static_cast<int>(groups.size()) - 1;
  r.df_within = static_cast<int>(n - groups.size());

  // Rounding leaves residue of order eps·scale; treat it as exact zero.
  double scale = 0.0;
  for (const auto& g : groups) {
    for (const double v : g) scale = std::max(scale, std::abs(v - grand));
  }
  const double tiny = 1e-24 * std::max(scale * scale, std::numeric_limits<double>::min()) * static_cast<double>(n);
  if (ss_between <= tiny) ss_between = 0.0;
  if (ss_within <= tiny) ss_within = 0.0;

  if (ss_between == 0.0) {
    r.f_stat = 0.0;
    r.p_value = 1.0;
    return r;
  }
  if (ss_within == 0.0) {
    r.f_stat = std::numeric_limits<double>::infinity();
    r.p_value = 0.0;
    return r;
  }
  r.f_stat = (ss_between / r.df_between) / (ss_within / r.df_within);
  const boost::math::fisher_f dist(r.df_between, r.df_within);
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.f_stat));
  return r;
}

std::vector<PairwiseComparison> pairwise_welch_holm(const std::vector<std::vector<double>>& groups) {
  check_groups(groups);
  std::vector<PairwiseComparison> out;
  for (std::size_t a = 0; a < groups.size(); ++a) {
    for (std::size_t b = a + 1; b < groups.size(); ++b) {
      const auto& ga = groups[a];
      const auto& gb = groups[b];
      const double na = static_cast<double>(ga.size());
      const double nb = static_cast<double>(gb.size());
      const double ma = mean_of(ga), mb = mean_of(gb);
      const double va = sum_sq_dev(ga, ma) / (na - 1.0) / na;
      const double vb = sum_sq_dev(gb, mb) / (nb - 1.0) / nb;
      PairwiseComparison c;
      c.a = a;
      c.b = b;
      c.mean_difference = ma - mb;
      const double se2 = va + vb;
      if (se2 == 0.0) {
        c.df = na + nb - 2.0;
        if (ma == mb) {
          c.t_stat = 0.0;
          c.p_value = 1.0;
        } else {
          c.t_stat = std::copysign(std::numeric_limits<double>::infinity(), c.mean_difference);
          c.p_value = 0.0;
        }
      } else {
        c.t_stat = c.mean_difference / std::sqrt(se2);
        c.df = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
        const boost::math::students_t dist(c.df);
        c.p_value = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(c.t_stat))));
      }
      out.push_back(c);
    }
  }
  // Holm: sort ascending, scale by (m - rank), enforce monotonicity, cap at 1.
  std::vector<std::size_t> order(out.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return out[i].p_value < out[j].p_value; });
  double running = 0.0;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const double adj = std::min(1.0, static_cast<double>(order.size() - rank) * out[order[rank]].p_value);
    running = std::max(running, adj);
    out[order[rank]].p_holm = running;
  }
  return out;
}

}  // namespace bh::ml
