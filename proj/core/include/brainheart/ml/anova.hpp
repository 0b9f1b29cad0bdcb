#pragma once

#include <string>
#include <vector>

namespace bh::ml {

struct AnovaResult {
  double f_stat = 0.0;
  int df_between = 0;
  int df_within = 0;
  double p_value = 1.0;
};

/// One-way ANOVA, p from the upper tail of F(df_between, df_within).
/// Needs >= 2 groups of >= 2 values each (ValidationError otherwise). With no
/// within-group variance, F is 0 (p = 1) when the means agree and +inf
/// (p = 0) when they differ.
AnovaResult anova_oneway(const std::vector<std::vector<double>>& groups);

struct PairwiseComparison {
  std::size_t a = 0;
  std::size_t b = 0;
  double mean_difference = 0.0;  // mean(a) - mean(b)
  double t_stat = 0.0;
  double df = 0.0;
  double p_value = 1.0;
  double p_holm = 1.0;
};

/// Welch t-tests between every pair of groups (a < b), two-sided, with
/// Holm step-down adjustment across all pairs.
std::vector<PairwiseComparison> pairwise_welch_holm(const std::vector<std::vector<double>>& groups);

}  // namespace bh::ml
