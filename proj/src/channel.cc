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

#include "eb92/channel.h"

#include <string>

#include "eb92/error.h"

namespace eb92 {

namespace {

void check_noise(double q) {
    if (!(q >= 0 && q <= 0.5)) {
        throw InvalidArgument("noise q must be in [0, 0.5], got " + std::to_string(q));
    }
}

void check_alpha(double alpha) {
    if (!(alpha > 0 && alpha < 1)) {
        throw InvalidArgument("alpha must be in (0, 1), got " + std::to_string(alpha));
    }
}

}  // namespace

void ChannelStatistics::validate() const {
    for (int i = 0; i < kNumStatistics; ++i) {
        double v = to_array(*this)[i];
        if (!(v >= 0 && v <= 1)) {
            throw InvalidArgument(
                "statistic " + std::string(statistic_name(static_cast<Statistic>(i))) +
                " outside [0, 1]: " + std::to_string(v));
        }
    }
}

std::string_view statistic_name(Statistic s) {
    switch (s) {
        case Statistic::k01:
            return "p01";
        case Statistic::k10:
            return "p10";
        case Statistic::k0a:
            return "p0a";
        case Statistic::k1a:
            return "p1a";
        case Statistic::ka0:
            return "pa0";
        case Statistic::kaAbar:
            return "pa_abar";
    }
    return "?";
}

std::array<double, kNumStatistics> to_array(const ChannelStatistics &s) {
    return {s.p01, s.p10, s.p0a, s.p1a, s.pa0, s.pa_abar};
}

ChannelStatistics from_array(const std::array<double, kNumStatistics> &a) {
    return ChannelStatistics{a[0], a[1], a[2], a[3], a[4], a[5]};
}

std::array<double, kNumStatistics> to_array(const SampleCounts &c) {
    return {c.c01, c.c10, c.c0a, c.c1a, c.ca0, c.ca_abar};
}

ProtocolParams::ProtocolParams(double alpha, double p_enc, double n_signals)
    : alpha_(alpha), p_enc_(p_enc), n_signals_(n_signals) {
    check_alpha(alpha);
    if (!(p_enc > 0 && p_enc < 1)) {
        throw InvalidArgument("p_enc must be in (0, 1), got " + std::to_string(p_enc));
    }
    if (!(n_signals >= 1)) {
        throw InvalidArgument("n_signals must be >= 1, got " + std::to_string(n_signals));
    }
}

ChannelStatistics symmetric_statistics(double q, double alpha) {
    check_noise(q);
    check_alpha(alpha);
    double a2 = alpha * alpha;
    double to_alpha = q + (1 - 2 * q) * a2;
    ChannelStatistics s;
    s.p01 = q;
    s.p10 = q;
    s.pa_abar = q;
    s.p0a = to_alpha;
    s.pa0 = to_alpha;
    s.p1a = q + (1 - 2 * q) * (1 - a2);
    return s;
}

SampleCounts expected_counts(const ProtocolParams &params, double q) {
    check_noise(q);
    double a2 = params.alpha() * params.alpha();
    double pe = params.p_enc();
    double n = params.n_signals();
    SampleCounts c;
    c.c01 = pe * q / 4 * n;
    c.ca_abar = c.c01;
    c.c10 = (1 - pe) * q / 2 * n;
    c.c0a = pe * (q + (1 - 2 * q) * a2) / 4 * n;
    c.ca0 = c.c0a;
    c.c1a = (1 - pe) * (q + (1 - 2 * q) * (1 - a2)) / 2 * n;
    c.c_k = pe * (q + (1 - 2 * q) * (1 - a2)) / 2 * n;
    return c;
}

double expected_conclusive_rounds(const ProtocolParams &params, double q) {
    check_noise(q);
    double a2 = params.alpha() * params.alpha();
    return params.p_enc() * (2 * q + (1 - 2 * q) * (1 - a2)) / 2 * params.n_signals();
}

}  // namespace eb92
