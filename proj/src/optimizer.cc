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

#include "eb92/optimizer.h"

#include <omp.h>

#include <cmath>
#include <limits>
#include <set>
#include <utility>

#include "eb92/error.h"

namespace eb92 {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Candidate {
    double alpha;
    double p_enc;
};

struct Evaluated {
    Candidate at;
    double r = kNegInf;
    std::optional<KeyRateReport> report;
};

std::vector<double> axis(double lo, double hi, double step) {
    std::vector<double> out;
    int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
    for (int i = 0; i <= n; ++i) {
        out.push_back(lo + i * step);
    }
    return out;
}

bool better(const Evaluated &a, const Evaluated &b) {
    if (a.r != b.r) {
        return a.r > b.r;
    }
    if (a.at.alpha != b.at.alpha) {
        return a.at.alpha < b.at.alpha;
    }
    return a.at.p_enc > b.at.p_enc;
}

std::pair<long long, long long> key_of(const Candidate &c) {
    return {std::llround(c.alpha * 1e9), std::llround(c.p_enc * 1e9)};
}

std::vector<Evaluated> evaluate_all(const std::vector<Candidate> &candidates, double q,
                                    double n_signals, const SecurityEpsilons &eps,
                                    const KeyRateOptions &options, Objective objective, int jobs) {
    std::vector<Evaluated> out(candidates.size());
    int threads = jobs > 0 ? jobs : omp_get_max_threads();
    const auto n = static_cast<std::ptrdiff_t>(candidates.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        Evaluated e;
        e.at = candidates[i];
        try {
            KeyRateReport rep = symmetric_key_rate(
                q, ProtocolParams(e.at.alpha, e.at.p_enc, n_signals), eps, options);
            e.r = objective == Objective::kEffectiveRate ? rep.r_effective : rep.r_prime;
            e.report = rep;
        } catch (const std::exception &) {
            e.r = kNegInf;
        }
        out[i] = std::move(e);
    }
    return out;
}

}  // namespace

OptimizationResult optimize(double q, double n_signals, const SecurityEpsilons &eps,
                            const KeyRateOptions &options, const OptimizerConfig &config) {
    if (!(q >= 0 && q < 0.5)) {
        throw InvalidArgument("optimize: q must be in [0, 0.5)");
    }
    if (!(n_signals >= 1)) {
        throw InvalidArgument("optimize: n_signals must be >= 1");
    }
    if (!(config.alpha_step > 0 && config.penc_step > 0) || config.refine_factor < 1) {
        throw InvalidArgument("optimize: grid steps must be positive");
    }
    if (!(config.alpha_lo > 0 && config.alpha_lo <= config.alpha_hi && config.alpha_hi < 1) ||
        !(config.penc_lo > 0 && config.penc_lo <= config.penc_hi && config.penc_hi < 1)) {
        throw InvalidArgument("optimize: search ranges must satisfy 0 < lo <= hi < 1");
    }

    OptimizationResult result;
    std::set<std::pair<long long, long long>> seen;
    std::optional<Evaluated> best;

    auto run = [&](const std::vector<Candidate> &batch) {
        std::vector<Evaluated> evals =
            evaluate_all(batch, q, n_signals, eps, options, config.objective, config.jobs);
        for (auto &e : evals) {
            result.evaluations++;
            if (config.record_trace) {
                result.trace.push_back({e.at.alpha, e.at.p_enc, e.r});
            }
            if (e.report && (!best || better(e, *best))) {
                best = std::move(e);
            }
        }
    };

    std::vector<Candidate> coarse;
    for (double a : axis(config.alpha_lo, config.alpha_hi, config.alpha_step)) {
        for (double p : axis(config.penc_lo, config.penc_hi, config.penc_step)) {
            coarse.push_back({a, p});
            seen.insert(key_of(coarse.back()));
        }
    }
    run(coarse);
    if (!best) {
        throw ComputationError("optimize: every grid point failed to evaluate");
    }

    double astep = config.alpha_step;
    double pstep = config.penc_step;
    for (int round = 0; round < config.refine_rounds; ++round) {
        astep /= config.refine_factor;
        pstep /= config.refine_factor;
        std::vector<Candidate> local;
        Candidate center = best->at;
        for (int i = -config.refine_radius; i <= config.refine_radius; ++i) {
            for (int j = -config.refine_radius; j <= config.refine_radius; ++j) {
                Candidate c{center.alpha + i * astep, center.p_enc + j * pstep};
                if (c.alpha < config.alpha_lo - 1e-12 || c.alpha > config.alpha_hi + 1e-12 ||
                    c.p_enc < config.penc_lo - 1e-12 || c.p_enc > config.penc_hi + 1e-12) {
                    continue;
                }
                if (seen.insert(key_of(c)).second) {
                    local.push_back(c);
                }
            }
        }
        run(local);
    }

    result.best_alpha = best->at.alpha;
    result.best_penc = best->at.p_enc;
    result.best_report = *best->report;
    return result;
}

std::vector<SweepPoint> sweep_alpha(double q, double p_enc, double n_signals,
                                    const std::vector<double> &alphas, const SecurityEpsilons &eps,
                                    const KeyRateOptions &options, int jobs) {
    std::vector<SweepPoint> out(alphas.size());
    int threads = jobs > 0 ? jobs : omp_get_max_threads();
    const auto n = static_cast<std::ptrdiff_t>(alphas.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[i].alpha = alphas[i];
        try {
            out[i].report =
                symmetric_key_rate(q, ProtocolParams(alphas[i], p_enc, n_signals), eps, options);
        } catch (const std::exception &ex) {
            out[i].error = ex.what();
        }
    }
    return out;
}

NoiseToleranceResult noise_tolerance(double n_signals, const SecurityEpsilons &eps,
                                     const KeyRateOptions &options,
                                     const OptimizerConfig &opt_config,
                                     const ToleranceConfig &config) {
    if (!(config.resolution >= 1e-4)) {
        throw InvalidArgument("noise_tolerance: resolution must be >= 1e-4");
    }
    OptimizerConfig oc = opt_config;
    oc.record_trace = false;
    auto best_rate = [&](double q) {
        try {
            return optimize(q, n_signals, eps, options, oc).best_report.r_effective;
        } catch (const ComputationError &) {
            return kNegInf;
        }
    };

    NoiseToleranceResult result;
    int steps = static_cast<int>(std::floor(config.q_max / config.scan_step + 1e-9));
    for (int i = 1; i <= steps; ++i) {
        double q = i * config.scan_step;
        result.scan.emplace_back(q, best_rate(q));
    }

    // q = 0 counts as positive.
    bool prev = true;
    double last_positive = 0;
    std::optional<std::size_t> first_negative;
    for (std::size_t i = 0; i < result.scan.size(); ++i) {
        bool positive = result.scan[i].second > 0;
        if (positive != prev) {
            result.sign_changes++;
            if (!positive && !first_negative) {
                first_negative = i;
            }
        }
        if (positive && !first_negative) {
            last_positive = result.scan[i].first;
        }
        prev = positive;
    }

    if (!first_negative) {
        result.tolerance = result.scan.empty() ? 0 : result.scan.back().first;
        return result;
    }
    result.tolerance = last_positive;
    if (result.sign_changes != 1) {
        return result;
    }
    double lo = last_positive;
    double hi = result.scan[*first_negative].first;
    while (hi - lo > config.resolution) {
        double mid = 0.5 * (lo + hi);
        if (best_rate(mid) > 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    result.bisected = true;
    result.tolerance = lo;
    return result;
}

}  // namespace eb92
