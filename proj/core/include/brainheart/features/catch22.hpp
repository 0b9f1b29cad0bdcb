#pragma once

#include <array>
#include <span>
#include <string_view>

namespace bh {

inline constexpr std::size_t kCatch22Count = 22;

inline constexpr std::array<std::string_view, kCatch22Count> kCatch22Names{
    "DN_HistogramMode_5",
    "DN_HistogramMode_10",
    "CO_f1ecac",
    "CO_FirstMin_ac",
    "CO_HistogramAMI_even_2_5",
    "CO_trev_1_num",
    "MD_hrv_classic_pnn40",
    "SB_BinaryStats_mean_longstretch1",
    "SB_TransitionMatrix_3ac_sumdiagcov",
    "PD_PeriodicityWang_th0_01",
    "CO_Embed2_Dist_tau_d_expfit_meandiff",
    "IN_AutoMutualInfoStats_40_gaussian_fmmi",
    "FC_LocalSimple_mean1_tauresrat",
    "DN_OutlierInclude_p_001_mdrmd",
    "DN_OutlierInclude_n_001_mdrmd",
    "SP_Summaries_welch_rect_area_5_1",
    "SB_BinaryStats_diff_longstretch0",
    "SB_MotifThree_quantile_hh",
    "SC_FluctAnal_2_rsrangefit_50_1_logi_prop_r1",
    "SC_FluctAnal_2_dfa_50_1_2_logi_prop_r1",
    "SP_Summaries_welch_rect_centroid",
    "FC_LocalSimple_mean3_stderr",
};

using Catch22Vector = std::array<double, kCatch22Count>;

inline constexpr std::size_t kCatch22MinLength = 30;

/// Every feature is evaluated on the z-scored input (sample sd), as in the
/// reference implementation.
///
/// Degenerate input (sd < 1e-12 after centring) yields NaN everywhere except
/// CO_f1ecac, CO_FirstMin_ac and PD_PeriodicityWang_th0_01, which are 0.
/// Throws ValidationError for fewer than 30 samples ("too short") or
/// non-finite values.
Catch22Vector compute_catch22(std::span<const double> x);

/// The degenerate-input vector described above.
Catch22Vector catch22_degenerate();

}  // namespace bh
