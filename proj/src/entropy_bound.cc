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

#include "eb92/entropy_bound.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "eb92/error.h"
#include "eb92/linalg.h"

namespace eb92 {

namespace {

constexpr double kEmptyWeight = 1e-12;
// Absolute slack on the Cauchy-Schwarz style constraints when building the
// feasible interval; absorbs rounding in the estimation identities. Half of
// the slack resolve_e0e3 allows, so that interval endpoints always resolve.
constexpr double kFeasibilitySlack = 5e-13;

double lambda_value(double e0, double e1, double overlap, LambdaForm form) {
    double sum = e0 + e1;
    double d = form == LambdaForm::kDifference ? e0 - e1 : sum;
    return 0.5 + std::sqrt(d * d + 4 * overlap * overlap) / (2 * sum);
}

void intersect(double &lo, double &hi, double a, double b) {
    lo = std::max(lo, a);
    hi = std::min(hi, b);
}

}  // namespace

bool BoundArrays::is_physical(double slack) const {
    for (int i = 0; i < 2; ++i) {
        if (std::abs(lambda[i]) > std::sqrt(std::max(0.0, e0[i] * e1[i])) + slack) {
            return false;
        }
    }
    return true;
}

std::optional<BoundArrays> build_arrays(const ChannelStatistics &stats,
                                        const EstimatedOverlaps &overlaps, double re_e1e2,
                                        double alpha) {
    std::optional<double> re_e0e3 = resolve_e0e3(overlaps, re_e1e2);
    if (!re_e0e3) {
        return std::nullopt;
    }
    double a2 = alpha * alpha;
    double b2 = 1 - a2;
    double ab = alpha * std::sqrt(b2);
    // Re<g0^i|g1^i> share the prefix ab Re(<e0|e1> - <e1|e3>) - a^2 <e1|e1>.
    double base = ab * (overlaps.re_e0e1 - overlaps.re_e1e3) - a2 * stats.p01;
    BoundArrays arr;
    arr.e0 = {stats.p01, 1 - stats.p0a};
    arr.e1 = {stats.pa_abar, 1 - stats.pa0};
    arr.lambda = {base + b2 * re_e1e2, base + b2 * *re_e0e3};
    arr.m_norm = arr.e0[0] + arr.e0[1] + arr.e1[0] + arr.e1[1];
    return arr;
}

double entropy_lower_bound(const BoundArrays &arrays, LambdaForm form) {
    double total = 0;
    for (int i = 0; i < 2; ++i) {
        double e0 = arrays.e0[i];
        double e1 = arrays.e1[i];
        double sum = e0 + e1;
        if (sum < kEmptyWeight || !(e0 > 0 && e1 > 0)) {
            continue;
        }
        double lam = lambda_value(e0, e1, arrays.lambda[i], form);
        if (lam > 1) {
            if (form == LambdaForm::kDifference && lam > 1 + 1e-9) {
                throw ComputationError(
                    "non-physical bound arrays (lambda = " + std::to_string(lam) +
                    "); check feasibility filtering");
            }
            lam = 1;
        }
        total += sum / arrays.m_norm * (binary_entropy(e0 / sum) - binary_entropy(lam));
    }
    return std::max(0.0, total);
}

FreeVariableObjective::FreeVariableObjective(const ChannelStatistics &stats, double alpha) {
    EstimatedOverlaps ov = estimate_overlaps(stats, alpha);
    double a2 = alpha * alpha;
    beta_sq_ = 1 - a2;
    double ab = alpha * std::sqrt(beta_sq_);
    base_ = ab * (ov.re_e0e1 - ov.re_e1e3) - a2 * stats.p01;
    sum_e0e3_e1e2_ = ov.sum_e0e3_e1e2;

    std::array<double, 2> e0 = {stats.p01, 1 - stats.p0a};
    std::array<double, 2> e1 = {stats.pa_abar, 1 - stats.pa0};
    double m = e0[0] + e0[1] + e1[0] + e1[1];
    for (int i = 0; i < 2; ++i) {
        double sum = e0[i] + e1[i];
        active_[i] = sum >= kEmptyWeight && e0[i] > 0 && e1[i] > 0;
        if (active_[i]) {
            weight_[i] = sum / m;
            h_split_[i] = binary_entropy(e0[i] / sum);
            diff_sq_[i] = (e0[i] - e1[i]) * (e0[i] - e1[i]);
            inv_two_sum_[i] = 1 / (2 * sum);
        }
    }

    if (!ov.is_consistent(kFeasibilitySlack)) {
        return;
    }
    FreeVariableInterval cs = free_variable_interval(stats);
    double lo = cs.lo;
    double hi = cs.hi;
    double c03 = std::sqrt(std::max(0.0, ov.norms[0] * ov.norms[3])) + kFeasibilitySlack;
    intersect(lo, hi, sum_e0e3_e1e2_ - c03, sum_e0e3_e1e2_ + c03);
    double k0 = std::sqrt(std::max(0.0, e0[0] * e1[0])) + kFeasibilitySlack;
    double k1 = std::sqrt(std::max(0.0, e0[1] * e1[1])) + kFeasibilitySlack;
    // Lambda0 = base + b^2 x, Lambda1 = base + b^2 (S - x).
    intersect(lo, hi, (-k0 - base_) / beta_sq_, (k0 - base_) / beta_sq_);
    intersect(lo, hi, sum_e0e3_e1e2_ - (k1 - base_) / beta_sq_,
              sum_e0e3_e1e2_ + (k1 + base_) / beta_sq_);
    if (lo <= hi) {
        feasible_ = FreeVariableInterval{lo, hi};
    }
}

double FreeVariableObjective::operator()(double x) const {
    std::array<double, 2> overlap = {base_ + beta_sq_ * x,
                                     base_ + beta_sq_ * (sum_e0e3_e1e2_ - x)};
    double total = 0;
    for (int i = 0; i < 2; ++i) {
        if (!active_[i]) {
            continue;
        }
        double lam = 0.5 + std::sqrt(diff_sq_[i] + 4 * overlap[i] * overlap[i]) * inv_two_sum_[i];
        lam = std::min(lam, 1.0);
        double h = lam < 1 ? -lam * std::log2(lam) - (1 - lam) * std::log2(1 - lam) : 0.0;
        total += weight_[i] * (h_split_[i] - h);
    }
    return std::max(0.0, total);
}

std::optional<FreeVariableMinimum> minimize_free_variable(const FreeVariableObjective &objective,
                                                          int grid) {
    if (grid < 3) {
        throw InvalidArgument("free-variable grid must have at least 3 points");
    }
    std::optional<FreeVariableInterval> iv = objective.feasible_interval();
    if (!iv) {
        return std::nullopt;
    }
    double lo = iv->lo;
    double hi = iv->hi;
    if (hi - lo <= 0) {
        return FreeVariableMinimum{objective(lo), lo};
    }
    double step = (hi - lo) / (grid - 1);
    int best_i = 0;
    double best = objective(lo);
    for (int i = 1; i < grid; ++i) {
        double x = i == grid - 1 ? hi : lo + step * i;
        double v = objective(x);
        if (v < best) {
            best = v;
            best_i = i;
        }
    }
    FreeVariableMinimum result{best, best_i == grid - 1 ? hi : lo + step * best_i};

    // Golden-section search on the bracket of grid neighbours.
    constexpr double kInvPhi = 0.6180339887498949;
    constexpr double kTolerance = 1e-6;
    double a = std::max(lo, result.re_e1e2 - step);
    double b = std::min(hi, result.re_e1e2 + step);
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    while (b - a > kTolerance) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = objective(d);
        }
    }
    for (auto [x, v] : {std::pair{c, fc}, std::pair{d, fd}}) {
        if (v < result.value) {
            result = {v, x};
        }
    }
    return result;
}

double min_entropy_over_free_variable(const ChannelStatistics &stats, double alpha, int grid) {
    FreeVariableObjective objective(stats, alpha);
    std::optional<FreeVariableMinimum> m = minimize_free_variable(objective, grid);
    return m ? m->value : 0.0;
}

}  // namespace eb92
