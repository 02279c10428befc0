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
#include <string_view>
#include <vector>

#include "eb92/finite_key.h"

namespace eb92 {

/// Shortest general-format rendering with `digits` significant digits.
/// Independent of the global locale; infinities print as "inf"/"-inf".
std::string format_number(double value, int digits = 10);

/// Shortest text that parses back to exactly `value`.
std::string format_exact(double value);

/// Parses a number written by format_number (or any plain decimal/exponent
/// form, "inf" included). Throws InvalidArgument on trailing garbage.
double parse_number(std::string_view text);

/// Column order of the key-rate CSV:
/// q,n,alpha,penc,s_xi,qber,leak_per_bit,delta_bits,r_prime,r_eff,reason
const std::vector<std::string> &key_rate_columns();

/// Joins fields with `sep`; no quoting (fields never contain separators).
std::string join_row(const std::vector<std::string> &fields, char sep);

/// One CSV row for a report; n is written as "inf" in asymptotic mode.
std::vector<std::string> key_rate_fields(double q, const KeyRateReport &report);

/// Row for a point that failed: inputs filled where known, values empty.
std::vector<std::string> failed_fields(double q, std::optional<double> n, std::optional<double> alpha,
                                       std::optional<double> p_enc, const std::string &reason);

}  // namespace eb92
