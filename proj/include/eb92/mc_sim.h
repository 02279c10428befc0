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
#include <cstdint>
#include <optional>

#include "eb92/attack.h"
#include "eb92/channel.h"

namespace eb92 {

/// Either the depolarizing channel with noise q or an explicit attack.
class SimChannel {
   public:
    static SimChannel depolarizing(double q);
    static SimChannel attack(AttackVectors attack);

    bool is_depolarizing() const {
        return !attack_.has_value();
    }
    double q() const {
        return q_;
    }
    const std::optional<AttackVectors> &attack_vectors() const {
        return attack_;
    }

   private:
    double q_ = 0;
    std::optional<AttackVectors> attack_;
};

/// Counters from a simulation run. `events[s]` counts rounds whose outcome
/// contributes to statistic s (e.g. Alice sent |0>, Bob measured Z and saw
/// |1> for p01); `trials[s]` counts rounds with the matching preparation and
/// measurement basis, so events[s] / trials[s] estimates the statistic.
struct SimulationOutcome {
    std::uint64_t rounds = 0;
    std::uint64_t seed = 0;
    std::uint64_t key_rounds = 0;
    std::uint64_t nonkey_rounds = 0;
    std::uint64_t conclusive_key_rounds = 0;
    std::uint64_t raw_key_errors = 0;
    std::array<std::uint64_t, kNumStatistics> events{};
    std::array<std::uint64_t, kNumStatistics> trials{};

    ChannelStatistics empirical_stats() const;
    /// events as SampleCounts with c_k = conclusive key rounds.
    SampleCounts observed_counts() const;

    friend bool operator==(const SimulationOutcome &, const SimulationOutcome &) = default;
};

/// Rounds per independently seeded shard. Fixed so that results do not depend
/// on the number of workers.
inline constexpr std::uint64_t kShardRounds = 1 << 16;

/// Round-by-round protocol simulation, OpenMP-parallel over shards. Shard k
/// draws from Xoshiro256::for_stream(seed, k); per round the draws are, in
/// order: key round (P_enc), Alice's state (1/2, key rounds only), channel
/// mixing (2q, depolarizing only), Bob's basis (1/2), Bob's outcome.
SimulationOutcome simulate(const ProtocolParams &params, const SimChannel &channel,
                           std::uint64_t rounds, std::uint64_t seed, int jobs = 0);

/// Single-threaded reference for simulate(); identical output.
SimulationOutcome simulate_serial(const ProtocolParams &params, const SimChannel &channel,
                                  std::uint64_t rounds, std::uint64_t seed);

/// raw_key_errors / conclusive_key_rounds; ComputationError if no conclusive
/// round occurred.
double empirical_qber(const SimulationOutcome &outcome);

/// Expected events per statistic for `rounds` rounds of a channel with the
/// given statistics (N P_enc P_ij / 4 for key-round statistics, N (1 - P_enc)
/// P_1j / 2 for the others).
SampleCounts expected_events(const ProtocolParams &params, const ChannelStatistics &stats,
                             double rounds);

/// Expected conclusive key rounds for a channel with the given statistics.
double expected_conclusive(const ProtocolParams &params, const ChannelStatistics &stats,
                           double rounds);

/// Statistics the simulated channel induces.
ChannelStatistics channel_statistics(const SimChannel &channel, double alpha);

}  // namespace eb92
