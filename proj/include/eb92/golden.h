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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eb92/finite_key.h"

namespace eb92 {

enum class Provenance {
    /// A published threshold; only the `expect` condition is checked and the
    /// stored outputs are never rewritten.
    kPublished,
    /// Closed-form value.
    kClosedForm,
    /// Frozen output of this implementation.
    kComputed,
};

/// One scenario of the regression data. In "point" mode alpha and penc are
/// inputs; in "optimize" mode they are the optimum found. An infinite
/// n_signals means asymptotic mode.
struct GoldenRecord {
    std::string id;
    Provenance tag = Provenance::kComputed;
    SearchProfile profile = SearchProfile::kThorough;
    bool optimize = false;
    double q = 0;
    double n_signals = 0;
    double alpha = 0;
    double p_enc = 0;
    /// "r_eff>0", "r_eff<=0" or empty.
    std::string expect;
    /// Outputs; nullopt while the record has never been computed.
    std::optional<double> r_prime;
    std::optional<double> r_eff;
    std::optional<double> s_xi;
    std::optional<double> qber;

    bool asymptotic() const;
};

const char *provenance_name(Provenance p);
const char *profile_name(SearchProfile p);
SearchProfile parse_profile(const std::string &name);

/// Tab-separated, '#' lines are comments, first non-comment line is the
/// header. Throws InvalidArgument on malformed rows or duplicate ids.
std::vector<GoldenRecord> read_goldens(std::istream &in);

/// Writes the documented header and the records sorted by id. Outputs use
/// shortest round-trip decimals so that a read-back is exact.
void write_goldens(std::ostream &out, std::vector<GoldenRecord> records);

/// Recomputes the outputs (and, in optimize mode, alpha and penc) of a
/// record with the given search profile and default security parameters.
GoldenRecord evaluate_golden(const GoldenRecord &record, SearchProfile profile, int jobs = 0);

/// Whether `record` satisfies its expect condition (true when it has none).
/// Throws InvalidArgument on an unknown condition.
bool meets_expectation(const GoldenRecord &record);

struct GoldenDiff {
    std::string id;
    std::string field;
    std::optional<double> before;
    std::optional<double> after;
};

/// Output fields of `after` that differ from `before` by more than
/// rel_tol * max(1, |before|).
std::vector<GoldenDiff> diff_goldens(const GoldenRecord &before, const GoldenRecord &after,
                                     double rel_tol = 1e-9);

}  // namespace eb92
