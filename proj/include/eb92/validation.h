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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eb92/entropy_bound.h"

namespace eb92 {

/// One oracle property checked over the random attack set. `worst` is the
/// largest observed violation measure (e.g. bound - exact entropy), `limit`
/// the tolerance it must not exceed.
struct SuiteResult {
    std::string name;
    bool passed = true;
    double worst = 0;
    double limit = 0;
    int trials = 0;
    /// Serialized attack and alpha of the worst trial when the suite failed.
    std::string counterexample;
};

struct ValidationReport {
    std::vector<SuiteResult> suites;
    bool passed() const;
};

struct ValidationConfig {
    int trials = 1000;
    std::uint64_t seed = 1;
    LambdaForm lambda_form = LambdaForm::kDifference;
};

/// Runs the oracle suites over seeded Haar-random attacks on a 4-dim ancilla
/// (alpha uniform in [0.05, 0.95] per trial):
///   unitarity, estimation round-trip, g-vector identity, bound arrays versus
///   direct inner products, entropy-bound soundness against the exact S(A|E),
///   and tightness on the identity and noiseless depolarizing attacks.
ValidationReport run_validation(const ValidationConfig &config);

}  // namespace eb92
