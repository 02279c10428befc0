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

#include "eb92/estimation.h"

#include <cmath>
#include <string>

#include "eb92/error.h"

namespace eb92 {

namespace {

double cs_bound(double a, double b) {
    return std::sqrt(std::max(0.0, a) * std::max(0.0, b));
}

}  // namespace

bool EstimatedOverlaps::is_consistent(double slack) const {
    const auto &n = norms;
    return std::abs(re_e0e1) <= cs_bound(n[0], n[1]) + slack &&
           std::abs(re_e2e3) <= cs_bound(n[2], n[3]) + slack &&
           std::abs(re_e0e2) <= cs_bound(n[0], n[2]) + slack &&
           std::abs(re_e1e3) <= cs_bound(n[1], n[3]) + slack;
}

EstimatedOverlaps estimate_overlaps(const ChannelStatistics &stats, double alpha) {
    if (!(alpha > 0 && alpha < 1)) {
        throw InvalidArgument("alpha must be in (0, 1), got " + std::to_string(alpha));
    }
    double beta = std::sqrt(1 - alpha * alpha);
    double ab2 = 2 * alpha * beta;
    if (ab2 < 1e-9) {
        throw ComputationError("degenerate basis; identities singular");
    }
    double a2 = alpha * alpha;
    double b2 = beta * beta;
    double p00 = stats.p00();
    double p01 = stats.p01;
    double p10 = stats.p10;
    double p11 = stats.p11();

    EstimatedOverlaps o;
    o.norms = {p00, p01, p10, p11};
    o.re_e0e1 = (stats.p0a - a2 * p00 - b2 * p01) / ab2;
    o.re_e2e3 = (stats.p1a - a2 * p10 - b2 * p11) / ab2;
    o.re_e0e2 = (stats.pa0 - a2 * p00 - b2 * p10) / ab2;
    o.re_e1e3 = (stats.pa1() - a2 * p01 - b2 * p11) / ab2;
    double a3b = a2 * alpha * beta;
    double ab3 = alpha * beta * b2;
    o.sum_e0e3_e1e2 = (a2 * b2 * (p00 + p11) + b2 * b2 * p10 + a2 * a2 * p01 +
                       2 * a3b * (o.re_e1e3 - o.re_e0e1) + 2 * ab3 * (o.re_e0e2 - o.re_e2e3) -
                       stats.pa_abar) /
                      (2 * a2 * b2);
    return o;
}

FreeVariableInterval free_variable_interval(const ChannelStatistics &stats) {
    double r = cs_bound(stats.p01, stats.p10);
    return {-r, r};
}

std::optional<double> resolve_e0e3(const EstimatedOverlaps &overlaps, double re_e1e2) {
    double re_e0e3 = overlaps.sum_e0e3_e1e2 - re_e1e2;
    if (std::abs(re_e0e3) > cs_bound(overlaps.norms[0], overlaps.norms[3]) + 1e-12) {
        return std::nullopt;
    }
    return re_e0e3;
}

}  // namespace eb92
