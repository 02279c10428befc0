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

#include "eb92/finite_key.h"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "eb92/error.h"
#include "eb92/linalg.h"

namespace eb92 {

namespace {

constexpr double kMaxInfeasibleFraction = 0.99;
constexpr int kBoundaryBisections = 40;
constexpr std::array<double, 4> kRayFractions = {0.25, 0.5, 0.75, 1.0};

using Offsets = std::array<double, kNumStatistics>;

ChannelStatistics perturbed(const ChannelStatistics &stats, const Offsets &widths,
                            const Offsets &direction, double scale) {
    Offsets base = to_array(stats);
    Offsets out;
    for (int i = 0; i < kNumStatistics; ++i) {
        out[i] = std::clamp(base[i] + scale * direction[i] * widths[i], 0.0, 1.0);
    }
    return from_array(out);
}

bool is_feasible(const ChannelStatistics &stats, double alpha) {
    return FreeVariableObjective(stats, alpha).feasible_interval().has_value();
}

std::optional<FreeVariableMinimum> evaluate_point(const ChannelStatistics &stats, double alpha,
                                                  int free_var_grid) {
    return minimize_free_variable(FreeVariableObjective(stats, alpha), free_var_grid);
}

void check_search(const SearchConfig &search) {
    if (search.grid_per_axis < 2) {
        throw InvalidArgument("grid_per_axis must be >= 2");
    }
    if (search.free_var_grid < 3) {
        throw InvalidArgument("free_var_grid must be >= 3");
    }
}

WorstCaseEntropy reduce(const std::vector<ChannelStatistics> &points,
                        const std::vector<std::optional<FreeVariableMinimum>> &values) {
    WorstCaseEntropy out;
    out.points = points.size();
    out.s_xi = std::numeric_limits<double>::infinity();
    std::size_t infeasible = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!values[i]) {
            ++infeasible;
            continue;
        }
        if (values[i]->value < out.s_xi) {
            out.s_xi = values[i]->value;
            out.re_e1e2 = values[i]->re_e1e2;
            out.stats = points[i];
        }
    }
    out.infeasible_fraction = static_cast<double>(infeasible) / static_cast<double>(points.size());
    if (infeasible == points.size()) {
        throw ComputationError("confidence region contains no physical channel");
    }
    if (out.infeasible_fraction > kMaxInfeasibleFraction) {
        throw ComputationError(
            "confidence region is " + std::to_string(100 * out.infeasible_fraction) +
            "% unphysical; inputs look inconsistent");
    }
    return out;
}

void check_box_inputs(const ChannelStatistics &stats, const SampleCounts &counts) {
    stats.validate();
    Offsets c = to_array(counts);
    for (int i = 0; i < kNumStatistics; ++i) {
        if (!(c[i] >= 1)) {
            throw InvalidArgument(
                "sample count for " + std::string(statistic_name(static_cast<Statistic>(i))) +
                " must be >= 1, got " + std::to_string(c[i]));
        }
    }
}

double binary_entropy_clamped(double qber) {
    return binary_entropy(std::clamp(qber, 0.0, 0.5));
}

}  // namespace

void SecurityEpsilons::validate() const {
    for (double v : {eps, eps_ec, eps_bar, eps_pe}) {
        if (!(v > 0 && v < 1)) {
            throw InvalidArgument("security parameters must lie in (0, 1)");
        }
    }
    if (!(eps - eps_ec > eps_bar && eps_bar > eps_pe)) {
        throw InvalidArgument("security parameters must satisfy eps - eps_ec > eps_bar > eps_pe");
    }
}

double xi(double m, int k, double eps_pe) {
    if (!(m >= 1)) {
        throw InvalidArgument("xi: sample count must be >= 1, got " + std::to_string(m));
    }
    if (k < 1) {
        throw InvalidArgument("xi: number of statistics must be >= 1");
    }
    if (!(eps_pe > 0 && eps_pe < 1)) {
        throw InvalidArgument("xi: eps_pe must be in (0, 1)");
    }
    // 1 - (1 - eps)^(1/k) without cancellation for eps ~ 1e-10.
    double per_stat = -std::expm1(std::log1p(-eps_pe) / k);
    return std::sqrt(std::log(2 / per_stat) / (2 * m));
}

std::array<double, kNumStatistics> confidence_widths(const SampleCounts &counts, double eps_pe) {
    Offsets c = to_array(counts);
    Offsets w;
    for (int i = 0; i < kNumStatistics; ++i) {
        w[i] = xi(c[i], kEstimatedStatistics, eps_pe);
    }
    return w;
}

std::vector<ChannelStatistics> confidence_box_points(const ChannelStatistics &stats,
                                                     const Offsets &widths, double alpha,
                                                     const SearchConfig &search) {
    check_search(search);
    std::vector<ChannelStatistics> points;
    points.push_back(stats);
    bool center_ok = is_feasible(stats, alpha);

    for (int mask = 0; mask < (1 << kNumStatistics); ++mask) {
        Offsets dir;
        for (int i = 0; i < kNumStatistics; ++i) {
            dir[i] = (mask >> i) & 1 ? 1.0 : -1.0;
        }
        ChannelStatistics corner = perturbed(stats, widths, dir, 1.0);
        points.push_back(corner);
        if (!center_ok || is_feasible(corner, alpha)) {
            continue;
        }
        // The physical region is convex in the statistics, so along the
        // diagonal it is an interval starting at the center.
        double lo = 0;
        double hi = 1;
        for (int it = 0; it < kBoundaryBisections; ++it) {
            double mid = 0.5 * (lo + hi);
            if (is_feasible(perturbed(stats, widths, dir, mid), alpha)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        for (double f : kRayFractions) {
            points.push_back(perturbed(stats, widths, dir, lo * f));
        }
    }

    if (search.profile == SearchProfile::kThorough) {
        int g = search.grid_per_axis;
        std::size_t total = 1;
        for (int i = 0; i < kNumStatistics; ++i) {
            total *= static_cast<std::size_t>(g);
        }
        points.reserve(points.size() + total);
        for (std::size_t idx = 0; idx < total; ++idx) {
            Offsets dir;
            std::size_t rest = idx;
            for (int i = 0; i < kNumStatistics; ++i) {
                int step = static_cast<int>(rest % g);
                rest /= g;
                dir[i] = -1.0 + 2.0 * step / (g - 1);
            }
            points.push_back(perturbed(stats, widths, dir, 1.0));
        }
    }
    return points;
}

WorstCaseEntropy worst_case_entropy(const ChannelStatistics &stats, const SampleCounts &counts,
                                    double alpha, double eps_pe, const SearchConfig &search) {
    check_box_inputs(stats, counts);
    std::vector<ChannelStatistics> points =
        confidence_box_points(stats, confidence_widths(counts, eps_pe), alpha, search);
    std::vector<std::optional<FreeVariableMinimum>> values(points.size());
    int threads = search.jobs > 0 ? search.jobs : omp_get_max_threads();
    const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        values[i] = evaluate_point(points[i], alpha, search.free_var_grid);
    }
    return reduce(points, values);
}

WorstCaseEntropy worst_case_entropy_serial(const ChannelStatistics &stats,
                                           const SampleCounts &counts, double alpha,
                                           double eps_pe, const SearchConfig &search) {
    check_box_inputs(stats, counts);
    std::vector<ChannelStatistics> points =
        confidence_box_points(stats, confidence_widths(counts, eps_pe), alpha, search);
    std::vector<std::optional<FreeVariableMinimum>> values;
    values.reserve(points.size());
    for (const auto &p : points) {
        values.push_back(evaluate_point(p, alpha, search.free_var_grid));
    }
    return reduce(points, values);
}

namespace {

double qber_from(const ChannelStatistics &stats, const Offsets &w, QberVariant variant) {
    auto at = [&](Statistic s) { return w[static_cast<int>(s)]; };
    double numerator = stats.p01 + at(Statistic::k01) + stats.pa_abar + at(Statistic::kaAbar);
    double mismatched = variant == QberVariant::kConclusive ? stats.pa0 : stats.pa1();
    double p_acc = numerator + 2 -
                   (stats.p0a + at(Statistic::k0a) + mismatched + at(Statistic::ka0));
    if (p_acc <= 1e-12) {
        throw ComputationError("QBER bound: acceptance probability is not positive");
    }
    return std::clamp(numerator / p_acc, 0.0, 0.5);
}

}  // namespace

double qber_bound(const ChannelStatistics &stats, const SampleCounts &counts, int k, double eps_pe,
                  QberVariant variant) {
    stats.validate();
    Offsets c = to_array(counts);
    Offsets w;
    for (int i = 0; i < kNumStatistics; ++i) {
        w[i] = xi(c[i], k, eps_pe);
    }
    return qber_from(stats, w, variant);
}

double qber_bound_asymptotic(const ChannelStatistics &stats, QberVariant variant) {
    stats.validate();
    return qber_from(stats, Offsets{}, variant);
}

double leak_ec(double qber, double n, double efficiency) {
    if (!(qber >= 0 && qber <= 0.5)) {
        throw InvalidArgument("leak_ec: qber must be in [0, 0.5]");
    }
    if (!(n >= 0) || !(efficiency >= 1)) {
        throw InvalidArgument("leak_ec: need n >= 0 and efficiency >= 1");
    }
    return n * efficiency * binary_entropy(qber);
}

double delta_correction(double n, const SecurityEpsilons &eps) {
    if (!(n >= 1)) {
        throw InvalidArgument("delta_correction: n must be >= 1");
    }
    double smoothing_gap = eps.eps - eps.eps_bar - eps.eps_ec;
    // The second error-correction parameter is identified with eps_ec.
    double ec_gap = eps.eps_bar - eps.eps_ec;
    if (!(smoothing_gap > 0) || !(ec_gap > 0)) {
        throw InvalidArgument("delta_correction: eps - eps_bar - eps_ec and eps_bar - eps_ec must be positive");
    }
    return 2 * std::log2(1 / smoothing_gap) + 7 * std::sqrt(n * std::log2(2 / ec_gap));
}

KeyRateReport key_rate(const ProtocolParams &params, const ChannelStatistics &stats,
                       const SampleCounts &counts, const SecurityEpsilons &eps,
                       const KeyRateOptions &options) {
    eps.validate();
    stats.validate();
    if (!(options.ec_efficiency >= 1)) {
        throw InvalidArgument("error-correction efficiency must be >= 1");
    }
    KeyRateReport report;
    report.alpha = params.alpha();
    report.p_enc = params.p_enc();
    report.n_signals = params.n_signals();
    report.asymptotic = options.asymptotic;
    report.n_raw = counts.c_k;

    if (options.asymptotic) {
        FreeVariableObjective objective(stats, params.alpha());
        std::optional<FreeVariableMinimum> m =
            minimize_free_variable(objective, options.search.free_var_grid);
        if (!m) {
            throw ComputationError("observed statistics match no physical attack");
        }
        report.s_xi = m->value;
        report.optimal_free_var = m->re_e1e2;
        report.worst_stats = stats;
        report.box_points = 1;
        report.qber = qber_bound_asymptotic(stats, options.qber_variant);
        report.leak_per_bit = options.ec_efficiency * binary_entropy_clamped(report.qber);
        report.delta_bits = 0;
        report.r_prime = report.s_xi - report.leak_per_bit;
    } else {
        if (!(counts.c_k >= 1)) {
            throw InvalidArgument("raw key length must be >= 1 in finite mode");
        }
        WorstCaseEntropy wc =
            worst_case_entropy(stats, counts, params.alpha(), eps.eps_pe, options.search);
        report.s_xi = wc.s_xi;
        report.optimal_free_var = wc.re_e1e2;
        report.worst_stats = wc.stats;
        report.infeasible_fraction = wc.infeasible_fraction;
        report.box_points = wc.points;
        report.qber =
            qber_bound(stats, counts, kEstimatedStatistics, eps.eps_pe, options.qber_variant);
        double n = counts.c_k;
        double leak = leak_ec(report.qber, n, options.ec_efficiency);
        report.leak_per_bit = leak / n;
        report.delta_bits = delta_correction(n, eps);
        report.r_prime = report.s_xi - (leak + report.delta_bits) / n;
    }
    report.r_effective = report.r_prime * report.n_raw / report.n_signals;
    return report;
}

KeyRateReport symmetric_key_rate(double q, const ProtocolParams &params,
                                 const SecurityEpsilons &eps, const KeyRateOptions &options) {
    return key_rate(params, symmetric_statistics(q, params.alpha()), expected_counts(params, q),
                    eps, options);
}

}  // namespace eb92
