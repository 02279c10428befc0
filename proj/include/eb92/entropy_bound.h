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
#include <optional>

#include "eb92/channel.h"
#include "eb92/estimation.h"

namespace eb92 {

/// Norms and overlaps of Eve's conditional states as seen through the
/// statistics: e0 = {<g0^0|g0^0>, <g0^1|g0^1>}, e1 = {<g1^0|g1^0>, <g1^1|g1^1>},
/// lambda = {Re<g0^0|g1^0>, Re<g0^1|g1^1>}.
struct BoundArrays {
    std::array<double, 2> e0{};
    std::array<double, 2> e1{};
    std::array<double, 2> lambda{};
    double m_norm = 0;

    /// |lambda[i]| <= sqrt(e0[i] e1[i]) + slack for both i.
    bool is_physical(double slack = 1e-9) const;
};

/// How lambda_i enters the largest-eigenvalue term.
enum class LambdaForm {
    /// 1/2 + sqrt((E0 - E1)^2 + 4 Lambda^2) / (2 (E0 + E1)); the largest
    /// eigenvalue of the normalized pair of projectors.
    kDifference,
    /// Same with (E0 + E1)^2 under the root. Always >= 1, so it is clamped to
    /// 1; kept only so the validation suite can demonstrate that it is unsound.
    kPrintedSum,
};

/// Arrays at one value of the free variable Re<e1|e2>; nullopt when
/// Re<e0|e3> cannot be resolved within Cauchy-Schwarz.
std::optional<BoundArrays> build_arrays(const ChannelStatistics &stats,
                                        const EstimatedOverlaps &overlaps, double re_e1e2,
                                        double alpha);

/// Lower bound on S(A|E) in bits, clamped below at 0. Throws ComputationError
/// when lambda_i exceeds 1 + 1e-9 in the difference form.
double entropy_lower_bound(const BoundArrays &arrays,
                           LambdaForm form = LambdaForm::kDifference);

/// The bound as a function of Re<e1|e2> for fixed statistics, with every
/// x-independent term precomputed. This is the hot inner loop of the
/// finite-key search.
class FreeVariableObjective {
   public:
    FreeVariableObjective(const ChannelStatistics &stats, double alpha);

    /// Values of Re<e1|e2> for which the statistics describe a physical
    /// attack: Cauchy-Schwarz for <e1|e2> and <e0|e3>, |Lambda_i| <=
    /// sqrt(E0[i] E1[i]), and consistent single overlaps. nullopt if empty.
    std::optional<FreeVariableInterval> feasible_interval() const {
        return feasible_;
    }

    /// Bound at x, assuming x lies in feasible_interval(); lambda is clamped
    /// to [1/2, 1] instead of being checked.
    double operator()(double x) const;

   private:
    std::array<double, 2> weight_{};
    std::array<double, 2> h_split_{};
    std::array<double, 2> diff_sq_{};
    std::array<double, 2> inv_two_sum_{};
    std::array<bool, 2> active_{};
    double base_ = 0;
    double beta_sq_ = 0;
    double sum_e0e3_e1e2_ = 0;
    std::optional<FreeVariableInterval> feasible_;
};

struct FreeVariableMinimum {
    double value = 0;
    double re_e1e2 = 0;
};

inline constexpr int kDefaultFreeVariableGrid = 33;

/// Grid over the feasible part of the Cauchy-Schwarz interval (endpoints
/// included) followed by golden-section refinement around the best grid
/// point, to 1e-6 in the variable. nullopt when no value is feasible.
std::optional<FreeVariableMinimum> minimize_free_variable(const FreeVariableObjective &objective,
                                                          int grid = kDefaultFreeVariableGrid);

/// Worst-case bound for exactly known statistics; 0 if no physical attack
/// matches them.
double min_entropy_over_free_variable(const ChannelStatistics &stats, double alpha,
                                      int grid = kDefaultFreeVariableGrid);

}  // namespace eb92
