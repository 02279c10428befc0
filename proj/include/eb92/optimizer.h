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

#include <optional>
#include <string>
#include <vector>

#include "eb92/finite_key.h"

namespace eb92 {

enum class Objective {
    /// r = r' n / N
    kEffectiveRate,
    /// r'
    kRawKeyRate,
};

struct OptimizerConfig {
    double alpha_lo = 0.05;
    double alpha_hi = 0.95;
    double alpha_step = 0.05;
    double penc_lo = 0.05;
    double penc_hi = 0.95;
    double penc_step = 0.05;
    /// Each round divides the step by refine_factor and scans
    /// (2 refine_radius + 1)^2 points around the incumbent.
    int refine_rounds = 2;
    int refine_factor = 5;
    int refine_radius = 2;
    Objective objective = Objective::kEffectiveRate;
    bool record_trace = true;
    /// Worker threads for the parameter grid; 0 means the OpenMP default.
    int jobs = 0;
};

struct TracePoint {
    double alpha = 0;
    double p_enc = 0;
    /// Objective value; -inf when the evaluation failed.
    double r = 0;
};

struct OptimizationResult {
    double best_alpha = 0;
    double best_penc = 0;
    KeyRateReport best_report;
    int evaluations = 0;
    std::vector<TracePoint> trace;
};

/// Coarse grid over (alpha, P_enc) followed by local refinement on the
/// depolarizing channel with noise q. Points whose evaluation throws are
/// skipped; ComputationError if every point fails. Ties are broken towards
/// lower alpha, then higher P_enc, so the result is independent of the
/// worker count.
OptimizationResult optimize(double q, double n_signals, const SecurityEpsilons &eps,
                            const KeyRateOptions &options, const OptimizerConfig &config = {});

struct SweepPoint {
    double alpha = 0;
    std::optional<KeyRateReport> report;
    std::string error;
};

/// One key_rate evaluation per alpha at fixed (q, P_enc, N), in input order.
std::vector<SweepPoint> sweep_alpha(double q, double p_enc, double n_signals,
                                    const std::vector<double> &alphas, const SecurityEpsilons &eps,
                                    const KeyRateOptions &options, int jobs = 0);

struct ToleranceConfig {
    double resolution = 1e-3;
    double q_max = 0.2;
    double scan_step = 0.02;
};

struct NoiseToleranceResult {
    double tolerance = 0;
    /// (q, best r) on the coarse scan.
    std::vector<std::pair<double, double>> scan;
    int sign_changes = 0;
    bool bisected = false;
};

/// Largest q in (0, q_max] with a positive optimized effective rate. A coarse
/// scan checks that the sign of r changes once; bisection then narrows the
/// crossing to `resolution`. With several sign changes the scan answer (last
/// positive point before the first change) is returned without bisection.
/// q = 0 is taken as positive without evaluation, since finite statistics
/// with no observed errors carry no samples.
NoiseToleranceResult noise_tolerance(double n_signals, const SecurityEpsilons &eps,
                                     const KeyRateOptions &options,
                                     const OptimizerConfig &opt_config = {},
                                     const ToleranceConfig &config = {});

}  // namespace eb92
