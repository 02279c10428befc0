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

namespace eb92 {

/// Real parts of Eve's ancilla overlaps recovered from observable statistics.
/// Values are not clamped to their Cauchy-Schwarz ranges; see is_consistent().
struct EstimatedOverlaps {
    double re_e0e1 = 0;
    double re_e2e3 = 0;
    double re_e0e2 = 0;
    double re_e1e3 = 0;
    /// Re(<e0|e3> + <e1|e2>)
    double sum_e0e3_e1e2 = 0;
    /// <e_i|e_i> = (P00, P01, P10, P11)
    std::array<double, 4> norms{};

    /// True when each single overlap fits inside its Cauchy-Schwarz bound
    /// sqrt(<e_i|e_i><e_j|e_j>) + slack. Statistics failing this cannot come
    /// from any attack.
    bool is_consistent(double slack = 1e-12) const;
};

/// Cauchy-Schwarz range for the unobservable Re<e1|e2>.
struct FreeVariableInterval {
    double lo = 0;
    double hi = 0;
};

/// Inverts the mismatched-basis identities at fixed alpha. Throws
/// ComputationError when 2 alpha beta < 1e-9.
EstimatedOverlaps estimate_overlaps(const ChannelStatistics &stats, double alpha);

FreeVariableInterval free_variable_interval(const ChannelStatistics &stats);

/// Re<e0|e3> = sum_e0e3_e1e2 - re_e1e2, or nullopt when the result breaks
/// |Re<e0|e3>| <= sqrt(P00 P11) by more than 1e-12.
std::optional<double> resolve_e0e3(const EstimatedOverlaps &overlaps, double re_e1e2);

}  // namespace eb92
