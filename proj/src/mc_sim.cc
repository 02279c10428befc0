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

#include "eb92/mc_sim.h"

#include <omp.h>

#include <string>
#include <vector>

#include "eb92/error.h"
#include "eb92/rng.h"

namespace eb92 {

namespace {

enum Prep { kPrepZero = 0, kPrepAlpha = 1, kPrepOne = 2 };
enum Basis { kBasisZ = 0, kBasisA = 1 };

// Probability that Bob's outcome is the first element of his basis (|0> for
// Z, |alpha> for A), indexed [prep][basis].
using OutcomeTable = std::array<std::array<double, 2>, 3>;

OutcomeTable ideal_table(double alpha) {
    double a2 = alpha * alpha;
    return {{{1.0, a2}, {a2, 1.0}, {0.0, 1 - a2}}};
}

OutcomeTable attack_table(const ChannelStatistics &s) {
    return {{{s.p00(), s.p0a}, {s.pa0, 1 - s.pa_abar}, {s.p10, s.p1a}}};
}

struct Kernel {
    double p_enc;
    double mix;  // probability of replacing the state by I/2
    OutcomeTable table;
};

Kernel make_kernel(const ProtocolParams &params, const SimChannel &channel) {
    Kernel k;
    k.p_enc = params.p_enc();
    if (channel.is_depolarizing()) {
        k.mix = 2 * channel.q();
        k.table = ideal_table(params.alpha());
    } else {
        k.mix = 0;
        k.table = attack_table(induced_statistics(*channel.attack_vectors(), params.alpha()));
    }
    return k;
}

void run_shard(const Kernel &k, std::uint64_t seed, std::uint64_t shard, std::uint64_t rounds,
               SimulationOutcome &acc) {
    Xoshiro256 rng = Xoshiro256::for_stream(seed, shard);
    for (std::uint64_t r = 0; r < rounds; ++r) {
        bool key = rng.bernoulli(k.p_enc);
        Prep prep = kPrepOne;
        if (key) {
            prep = rng.uniform() < 0.5 ? kPrepZero : kPrepAlpha;
        }
        bool mixed = k.mix > 0 && rng.bernoulli(k.mix);
        Basis basis = rng.uniform() < 0.5 ? kBasisZ : kBasisA;
        double p_first = mixed ? 0.5 : k.table[prep][basis];
        bool first = rng.uniform() < p_first;

        if (!key) {
            acc.nonkey_rounds++;
            int stat = static_cast<int>(basis == kBasisZ ? Statistic::k10 : Statistic::k1a);
            acc.trials[stat]++;
            if (first) {
                acc.events[stat]++;
            }
            continue;
        }
        acc.key_rounds++;
        // Conclusive outcomes are the second basis elements, |1> and |abar>.
        bool conclusive = !first;
        if (conclusive) {
            acc.conclusive_key_rounds++;
        }
        Statistic stat;
        bool hit;
        if (prep == kPrepZero) {
            stat = basis == kBasisZ ? Statistic::k01 : Statistic::k0a;
            hit = basis == kBasisZ ? !first : first;
        } else {
            stat = basis == kBasisZ ? Statistic::ka0 : Statistic::kaAbar;
            hit = basis == kBasisZ ? first : !first;
        }
        acc.trials[static_cast<int>(stat)]++;
        if (hit) {
            acc.events[static_cast<int>(stat)]++;
        }
        // Alice's bit is 0 for |0>, Bob's is 0 for |abar>: errors are
        // (|0>, saw |1>) and (|alpha>, saw |abar>).
        if (conclusive && (stat == Statistic::k01 || stat == Statistic::kaAbar)) {
            acc.raw_key_errors++;
        }
    }
}

void merge(SimulationOutcome &into, const SimulationOutcome &part) {
    into.key_rounds += part.key_rounds;
    into.nonkey_rounds += part.nonkey_rounds;
    into.conclusive_key_rounds += part.conclusive_key_rounds;
    into.raw_key_errors += part.raw_key_errors;
    for (int i = 0; i < kNumStatistics; ++i) {
        into.events[i] += part.events[i];
        into.trials[i] += part.trials[i];
    }
}

std::uint64_t shard_count(std::uint64_t rounds) {
    return (rounds + kShardRounds - 1) / kShardRounds;
}

std::uint64_t shard_rounds(std::uint64_t rounds, std::uint64_t shard) {
    std::uint64_t begin = shard * kShardRounds;
    return std::min(kShardRounds, rounds - begin);
}

}  // namespace

SimChannel SimChannel::depolarizing(double q) {
    if (!(q >= 0 && q <= 0.5)) {
        throw InvalidArgument("noise q must be in [0, 0.5], got " + std::to_string(q));
    }
    SimChannel c;
    c.q_ = q;
    return c;
}

SimChannel SimChannel::attack(AttackVectors attack) {
    SimChannel c;
    c.attack_ = std::move(attack);
    return c;
}

ChannelStatistics SimulationOutcome::empirical_stats() const {
    std::array<double, kNumStatistics> p{};
    for (int i = 0; i < kNumStatistics; ++i) {
        p[i] = trials[i] == 0 ? 0.0 : static_cast<double>(events[i]) / static_cast<double>(trials[i]);
    }
    return from_array(p);
}

SampleCounts SimulationOutcome::observed_counts() const {
    SampleCounts c;
    c.c01 = static_cast<double>(events[0]);
    c.c10 = static_cast<double>(events[1]);
    c.c0a = static_cast<double>(events[2]);
    c.c1a = static_cast<double>(events[3]);
    c.ca0 = static_cast<double>(events[4]);
    c.ca_abar = static_cast<double>(events[5]);
    c.c_k = static_cast<double>(conclusive_key_rounds);
    return c;
}

SimulationOutcome simulate(const ProtocolParams &params, const SimChannel &channel,
                           std::uint64_t rounds, std::uint64_t seed, int jobs) {
    if (rounds < 1) {
        throw InvalidArgument("simulate: rounds must be >= 1");
    }
    Kernel kernel = make_kernel(params, channel);
    std::uint64_t shards = shard_count(rounds);
    std::vector<SimulationOutcome> parts(shards);
    int threads = jobs > 0 ? jobs : omp_get_max_threads();
    const auto n = static_cast<std::int64_t>(shards);
#pragma omp parallel for schedule(static) num_threads(threads)
    for (std::int64_t s = 0; s < n; ++s) {
        auto shard = static_cast<std::uint64_t>(s);
        run_shard(kernel, seed, shard, shard_rounds(rounds, shard), parts[shard]);
    }
    SimulationOutcome out;
    out.rounds = rounds;
    out.seed = seed;
    for (const auto &p : parts) {
        merge(out, p);
    }
    return out;
}

SimulationOutcome simulate_serial(const ProtocolParams &params, const SimChannel &channel,
                                  std::uint64_t rounds, std::uint64_t seed) {
    if (rounds < 1) {
        throw InvalidArgument("simulate: rounds must be >= 1");
    }
    Kernel kernel = make_kernel(params, channel);
    SimulationOutcome out;
    out.rounds = rounds;
    out.seed = seed;
    for (std::uint64_t s = 0; s < shard_count(rounds); ++s) {
        run_shard(kernel, seed, s, shard_rounds(rounds, s), out);
    }
    return out;
}

double empirical_qber(const SimulationOutcome &outcome) {
    if (outcome.conclusive_key_rounds == 0) {
        throw ComputationError("no conclusive key rounds; QBER undefined");
    }
    return static_cast<double>(outcome.raw_key_errors) /
           static_cast<double>(outcome.conclusive_key_rounds);
}

SampleCounts expected_events(const ProtocolParams &params, const ChannelStatistics &stats,
                             double rounds) {
    double key = params.p_enc() * rounds / 4;
    double nonkey = (1 - params.p_enc()) * rounds / 2;
    SampleCounts c;
    c.c01 = key * stats.p01;
    c.c0a = key * stats.p0a;
    c.ca0 = key * stats.pa0;
    c.ca_abar = key * stats.pa_abar;
    c.c10 = nonkey * stats.p10;
    c.c1a = nonkey * stats.p1a;
    c.c_k = expected_conclusive(params, stats, rounds);
    return c;
}

double expected_conclusive(const ProtocolParams &params, const ChannelStatistics &stats,
                           double rounds) {
    double per_round = (stats.p01 + (1 - stats.p0a) + stats.pa1() + stats.pa_abar) / 4;
    return params.p_enc() * per_round * rounds;
}

ChannelStatistics channel_statistics(const SimChannel &channel, double alpha) {
    if (channel.is_depolarizing()) {
        return symmetric_statistics(channel.q(), alpha);
    }
    return induced_statistics(*channel.attack_vectors(), alpha);
}

}  // namespace eb92
