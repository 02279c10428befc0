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

#include "eb92/validation.h"

#include <cmath>
#include <functional>
#include <limits>

#include "eb92/attack.h"
#include "eb92/attack_io.h"
#include "eb92/estimation.h"
#include "eb92/rng.h"
#include "json.hpp"

namespace eb92 {

namespace {

struct Trial {
    AttackVectors attack;
    double alpha;
};

// Same shape as attack_to_json plus the alpha of the trial, so the text can
// be fed back to attack_from_json directly.
std::string describe(const Trial &t) {
    nlohmann::json j = nlohmann::json::parse(attack_to_json(t.attack));
    j["alpha"] = t.alpha;
    return j.dump();
}

// Applies `measure` to every trial and records the largest value.
SuiteResult run_suite(const std::string &name, double limit, const std::vector<Trial> &trials,
                      const std::function<double(const Trial &)> &measure) {
    SuiteResult r;
    r.name = name;
    r.limit = limit;
    r.worst = -std::numeric_limits<double>::infinity();
    const Trial *worst_trial = nullptr;
    for (const auto &t : trials) {
        double v = measure(t);
        r.trials++;
        if (v > r.worst) {
            r.worst = v;
            worst_trial = &t;
        }
    }
    r.passed = r.worst <= limit;
    if (!r.passed && worst_trial) {
        r.counterexample = describe(*worst_trial);
    }
    return r;
}

double overlap_roundtrip_error(const Trial &t) {
    ChannelStatistics stats = induced_statistics(t.attack, t.alpha);
    EstimatedOverlaps est = estimate_overlaps(stats, t.alpha);
    const auto &a = t.attack;
    double e01 = inner_product(a.e0(), a.e1()).real();
    double e23 = inner_product(a.e2(), a.e3()).real();
    double e02 = inner_product(a.e0(), a.e2()).real();
    double e13 = inner_product(a.e1(), a.e3()).real();
    double sum = (inner_product(a.e0(), a.e3()) + inner_product(a.e1(), a.e2())).real();
    return std::max({std::abs(est.re_e0e1 - e01), std::abs(est.re_e2e3 - e23),
                     std::abs(est.re_e0e2 - e02), std::abs(est.re_e1e3 - e13),
                     std::abs(est.sum_e0e3_e1e2 - sum)});
}

double g_identity_error(const Trial &t) {
    double beta = std::sqrt(1 - t.alpha * t.alpha);
    GVectors g = g_vectors(t.attack, t.alpha);
    ComplexVector direct = t.alpha * t.attack.e1() + beta * t.attack.e3();
    return std::sqrt((g.g[1][1] - direct).norm_squared());
}

std::optional<BoundArrays> true_arrays(const Trial &t) {
    ChannelStatistics stats = induced_statistics(t.attack, t.alpha);
    EstimatedOverlaps est = estimate_overlaps(stats, t.alpha);
    double re_e1e2 = inner_product(t.attack.e1(), t.attack.e2()).real();
    return build_arrays(stats, est, re_e1e2, t.alpha);
}

double arrays_error(const Trial &t) {
    std::optional<BoundArrays> arr = true_arrays(t);
    if (!arr) {
        return std::numeric_limits<double>::infinity();
    }
    GVectors g = g_vectors(t.attack, t.alpha);
    double err = 0;
    for (int i = 0; i < 2; ++i) {
        err = std::max(err, std::abs(arr->e0[i] - g.g[0][i].norm_squared()));
        err = std::max(err, std::abs(arr->e1[i] - g.g[1][i].norm_squared()));
        err = std::max(err, std::abs(arr->lambda[i] - inner_product(g.g[0][i], g.g[1][i]).real()));
    }
    return err;
}

}  // namespace

bool ValidationReport::passed() const {
    for (const auto &s : suites) {
        if (!s.passed) {
            return false;
        }
    }
    return true;
}

ValidationReport run_validation(const ValidationConfig &config) {
    Xoshiro256 rng(config.seed);
    std::vector<Trial> trials;
    trials.reserve(config.trials);
    for (int i = 0; i < config.trials; ++i) {
        double alpha = 0.05 + 0.9 * rng.uniform();
        trials.push_back({AttackVectors::random(rng), alpha});
    }

    ValidationReport report;
    report.suites.push_back(run_suite("unitarity", AttackVectors::kUnitarityTolerance, trials,
                                      [](const Trial &t) { return t.attack.unitarity_residual(); }));
    report.suites.push_back(run_suite("complement_statistics", 1e-10, trials, [](const Trial &t) {
        const auto &a = t.attack;
        return std::max(std::abs(a.e0().norm_squared() + a.e1().norm_squared() - 1),
                        std::abs(a.e2().norm_squared() + a.e3().norm_squared() - 1));
    }));
    report.suites.push_back(
        run_suite("estimation_roundtrip", 1e-9, trials, overlap_roundtrip_error));
    report.suites.push_back(run_suite("g_vector_identity", 1e-10, trials, g_identity_error));
    report.suites.push_back(run_suite("bound_arrays_vs_inner_products", 1e-9, trials, arrays_error));

    LambdaForm form = config.lambda_form;
    report.suites.push_back(run_suite("bound_soundness", 1e-9, trials, [form](const Trial &t) {
        std::optional<BoundArrays> arr = true_arrays(t);
        if (!arr) {
            return std::numeric_limits<double>::infinity();
        }
        return entropy_lower_bound(*arr, form) - exact_conditional_entropy(t.attack, t.alpha);
    }));
    report.suites.push_back(
        run_suite("minimized_bound_soundness", 1e-9, trials, [](const Trial &t) {
            ChannelStatistics stats = induced_statistics(t.attack, t.alpha);
            double bound = min_entropy_over_free_variable(stats, t.alpha);
            return bound - exact_conditional_entropy(t.attack, t.alpha);
        }));

    std::vector<Trial> tight;
    for (double alpha : {0.2, 0.5, 0.8}) {
        tight.push_back({AttackVectors::identity(), alpha});
        tight.push_back({AttackVectors::depolarizing(0.0), alpha});
    }
    report.suites.push_back(run_suite("tightness_noiseless", 1e-6, tight, [form](const Trial &t) {
        std::optional<BoundArrays> arr = true_arrays(t);
        if (!arr) {
            return std::numeric_limits<double>::infinity();
        }
        return std::abs(entropy_lower_bound(*arr, form) -
                        exact_conditional_entropy(t.attack, t.alpha));
    }));
    return report;
}

}  // namespace eb92
