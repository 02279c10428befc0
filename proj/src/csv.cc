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

#include "eb92/csv.h"

#include <charconv>
#include <cmath>
#include <limits>

#include "eb92/error.h"

namespace eb92 {

std::string format_number(double value, int digits) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    if (value == 0) {
        value = 0;  // drop the sign of -0
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, digits);
    return std::string(buf, res.ptr);
}

std::string format_exact(double value) {
    if (std::isnan(value) || std::isinf(value)) {
        return format_number(value);
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

double parse_number(std::string_view text) {
    if (text == "inf" || text == "+inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (text == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    double v = 0;
    const char *begin = text.data();
    if (!text.empty() && text.front() == '+') {
        ++begin;
    }
    auto res = std::from_chars(begin, text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw InvalidArgument("not a number: '" + std::string(text) + "'");
    }
    return v;
}

const std::vector<std::string> &key_rate_columns() {
    static const std::vector<std::string> columns = {
        "q",    "n",            "alpha",      "penc",    "s_xi", "qber",
        "leak_per_bit", "delta_bits", "r_prime", "r_eff", "reason"};
    return columns;
}

std::string join_row(const std::vector<std::string> &fields, char sep) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            out += sep;
        }
        out += fields[i];
    }
    return out;
}

std::vector<std::string> key_rate_fields(double q, const KeyRateReport &report) {
    return {format_number(q),
            report.asymptotic ? "inf" : format_number(report.n_signals),
            format_number(report.alpha),
            format_number(report.p_enc),
            format_number(report.s_xi),
            format_number(report.qber),
            format_number(report.leak_per_bit),
            format_number(report.delta_bits),
            format_number(report.r_prime),
            format_number(report.r_effective),
            ""};
}

std::vector<std::string> failed_fields(double q, std::optional<double> n, std::optional<double> alpha,
                                       std::optional<double> p_enc, const std::string &reason) {
    auto opt = [](std::optional<double> v) { return v ? format_number(*v) : std::string(); };
    std::vector<std::string> row(key_rate_columns().size());
    row[0] = format_number(q);
    row[1] = opt(n);
    row[2] = opt(alpha);
    row[3] = opt(p_enc);
    // Keep the reason a single field.
    std::string clean = reason;
    for (char &c : clean) {
        if (c == ',' || c == '\n' || c == '\t') {
            c = ' ';
        }
    }
    row.back() = clean;
    return row;
}

}  // namespace eb92
