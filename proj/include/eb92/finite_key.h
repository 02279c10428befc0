// Copyright 2026 The eb92 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "eb92/channel.h"
#include "eb92/entropy_bound.h"

namespace eb92 {

/// Security and failure budgets. Defaults are the fixed evaluation setting
/// eps = 1e-9, eps_EC = 1e-10, eps_bar = 8e-10, eps_PE = 7e-10.
struct SecurityEpsilons {
    double eps = 1e-9;
    double eps_ec = 1e-10;
    double eps_bar = 8e-10;
    double eps_pe = 7e-10;

    /// Requires every value in (0, 1) and eps - eps_ec > eps_bar > eps_pe.
    void validate() const;
};

/// Number of independently estimated statistics entering xi().
inline constexpr int kEstimatedStatistics = 6;

enum class SearchProfile {
    /// Center and the 64 corners of the confidence box. A corner that no
    /// physical channel can produce is replaced by points on the segment from
    /// the center to the boundary of the physical region along that diagonal.
    kFast,
    /// Everything in kFast plus a full grid_per_axis^6 lattice over the box.
    kThorough,
};

struct SearchConfig {
    SearchProfile profile = SearchProfile::kFast;
    int grid_per_axis = 5;
    int free_var_grid = kDefaultFreeVariableGrid;
    /// Worker threads for the box search; 0 means the OpenMP default.
    int jobs = 0;

    static SearchConfig fast() {
        return {};
    }
    static SearchConfig thorough() {
        SearchConfig c;
        c.profile = SearchProfile::kThorough;
        return c;
    }
};

/// Which pair of mismatched statistics is subtracted in the acceptance
/// probability of the QBER bound.
enum class QberVariant {
    /// p_acc = e + 2 - (P0a + Pa0): the total probability of the four
    /// conclusive outcomes, so the bound tracks the actual raw-key error rate.
    kConclusive,
    /// p_acc = e + 2 - (P0a + Pa1). On a depolarizing channel P0a + Pa1 = 1,
    /// which pins the bound near 2q regardless of alpha.
    kPrinted,
};

struct KeyRateOptions {
    SearchConfig search;
    bool asymptotic = false;
    double ec_efficiency = 1.2;
    QberVariant qber_variant = QberVariant::kConclusive;
};

/// Every intermediate quantity of one key-rate evaluation.
struct KeyRateReport {
    double alpha = 0;
    double p_enc = 0;
    double n_signals = 0;
    bool asymptotic = false;

    double s_xi = 0;
    double qber = 0;
    double leak_per_bit = 0;
    double delta_bits = 0;
    double n_raw = 0;
    double r_prime = 0;
    double r_effective = 0;

    double optimal_free_var = 0;
    ChannelStatistics worst_stats;
    double infeasible_fraction = 0;
    std::size_t box_points = 0;
};

/// Hoeffding deviation sqrt(ln(2 / (1 - (1 - eps_pe)^(1/k))) / (2m)).
double xi(double m, int k, double eps_pe);

/// Per-statistic deviations xi(C_ij) in Statistic order.
std::array<double, kNumStatistics> confidence_widths(const SampleCounts &counts, double eps_pe);

struct WorstCaseEntropy {
    double s_xi = 0;
    double re_e1e2 = 0;
    ChannelStatistics stats;
    double infeasible_fraction = 0;
    std::size_t points = 0;
};

/// Candidate perturbed statistics for the box search, in evaluation order.
std::vector<ChannelStatistics> confidence_box_points(const ChannelStatistics &stats,
                                                     const std::array<double, kNumStatistics> &widths,
                                                     double alpha, const SearchConfig &search);

/// min of the entropy bound over statistics within +-xi(C_ij) of the
/// observed ones (clipped to [0, 1]) and over the free variable. The search
/// is numerical (see SearchProfile), not a certified global minimum.
/// OpenMP-parallel over box points; the result does not depend on the thread
/// count.
WorstCaseEntropy worst_case_entropy(const ChannelStatistics &stats, const SampleCounts &counts,
                                    double alpha, double eps_pe, const SearchConfig &search);

/// Single-threaded reference for worst_case_entropy.
WorstCaseEntropy worst_case_entropy_serial(const ChannelStatistics &stats,
                                           const SampleCounts &counts, double alpha,
                                           double eps_pe, const SearchConfig &search);

/// Upper bound on the raw-key error rate, clamped to [0, 0.5]. Cx1 is taken
/// equal to Cx0.
double qber_bound(const ChannelStatistics &stats, const SampleCounts &counts, int k, double eps_pe,
                  QberVariant variant = QberVariant::kConclusive);

/// qber_bound with every deviation set to 0.
double qber_bound_asymptotic(const ChannelStatistics &stats,
                             QberVariant variant = QberVariant::kConclusive);

/// Bits disclosed by error correction of n raw bits: n * efficiency * h(qber).
double leak_ec(double qber, double n, double efficiency = 1.2);

/// Finite-size penalty in bits:
/// 2 log2(1 / (eps - eps_bar - eps_EC)) + 7 sqrt(n log2(2 / (eps_bar - eps_EC))).
double delta_correction(double n, const SecurityEpsilons &eps);

/// r' = S_xi - (leakEC + Delta) / n and r = r' n / N. In asymptotic mode
/// xi = 0 and Delta = 0.
KeyRateReport key_rate(const ProtocolParams &params, const ChannelStatistics &stats,
                       const SampleCounts &counts, const SecurityEpsilons &eps,
                       const KeyRateOptions &options);

/// key_rate on the depolarizing channel with expected counts.
KeyRateReport symmetric_key_rate(double q, const ProtocolParams &params,
                                 const SecurityEpsilons &eps, const KeyRateOptions &options);

}  // namespace eb92
