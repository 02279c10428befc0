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

#include <array>
#include <cmath>
#include <string_view>

namespace eb92 {

/// The six independently estimated conditional probabilities P_ij
/// (probability that Bob observes j given Alice prepared i, with i, j drawn
/// from {0, 1, a, abar} where a is |alpha>). The complementary statistics
/// P_00, P_11 and P_a1 are derived, never stored.
struct ChannelStatistics {
    double p01 = 0;
    double p10 = 0;
    double p0a = 0;
    double p1a = 0;
    double pa0 = 0;
    double pa_abar = 0;

    double p00() const {
        return 1 - p01;
    }
    double p11() const {
        return 1 - p10;
    }
    double pa1() const {
        return 1 - pa0;
    }

    /// Throws InvalidArgument unless every field is in [0, 1].
    void validate() const;

    friend bool operator==(const ChannelStatistics &, const ChannelStatistics &) = default;
};

/// Index order used wherever the six statistics are handled as an array
/// (confidence boxes, CSV dumps, simulation buckets).
enum class Statistic : int { k01 = 0, k10, k0a, k1a, ka0, kaAbar };
inline constexpr int kNumStatistics = 6;

std::string_view statistic_name(Statistic s);

std::array<double, kNumStatistics> to_array(const ChannelStatistics &s);
ChannelStatistics from_array(const std::array<double, kNumStatistics> &a);

/// Expected (or observed) sample counts behind each statistic, plus the raw
/// key length n.
struct SampleCounts {
    double c01 = 0;
    double c10 = 0;
    double c0a = 0;
    double c1a = 0;
    double ca0 = 0;
    double ca_abar = 0;
    double c_k = 0;
};

std::array<double, kNumStatistics> to_array(const SampleCounts &c);

/// User-tunable protocol knobs. beta is derived from alpha on demand.
class ProtocolParams {
   public:
    /// Throws InvalidArgument unless 0 < alpha < 1, 0 < p_enc < 1 and
    /// n_signals >= 1.
    ProtocolParams(double alpha, double p_enc, double n_signals);

    double alpha() const {
        return alpha_;
    }
    double beta() const {
        return std::sqrt(1 - alpha_ * alpha_);
    }
    double p_enc() const {
        return p_enc_;
    }
    double n_signals() const {
        return n_signals_;
    }

   private:
    double alpha_;
    double p_enc_;
    double n_signals_;
};

/// Statistics of the depolarizing channel rho -> (1 - 2q) rho + q I.
ChannelStatistics symmetric_statistics(double q, double alpha);

/// Expected per-statistic sample counts over n_signals rounds through the
/// depolarizing channel. c_k follows the raw-key count convention
/// P_enc (q + (1 - 2q)(1 - alpha^2)) N / 2.
SampleCounts expected_counts(const ProtocolParams &params, double q);

/// Expected number of conclusive key rounds obtained by summing the four
/// conclusive outcomes: P_enc (2q + (1 - 2q)(1 - alpha^2)) N / 2. Differs from
/// expected_counts().c_k by P_enc q N / 2; the simulator measures this one.
double expected_conclusive_rounds(const ProtocolParams &params, double q);

}  // namespace eb92
