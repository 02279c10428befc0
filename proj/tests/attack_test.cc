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

#include "eb92/attack.h"

#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "eb92/attack_io.h"
#include "eb92/error.h"
#include "eb92/rng.h"

namespace eb92 {
namespace {

constexpr double kAlpha = 0.6;
constexpr double kBeta = 0.8;

void expect_vector_near(const ComplexVector &a, const ComplexVector &b, double tol) {
    ASSERT_EQ(a.dim(), b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        EXPECT_NEAR(std::abs(a[i] - b[i]), 0, tol) << "entry " << i;
    }
}

ComplexVector chi() {
    ComplexVector v(AttackVectors::kAncillaDim);
    v[0] = 1;
    return v;
}

// (<b| (x) I) U (|s> (x) |chi>) for real single-qubit vectors s and b.
ComplexVector eve_branch(const AttackVectors &a, std::array<double, 2> s, std::array<double, 2> b) {
    ComplexVector on0 = s[0] * a.e0() + s[1] * a.e2();
    ComplexVector on1 = s[0] * a.e1() + s[1] * a.e3();
    return b[0] * on0 + b[1] * on1;
}

double entropy_bits(const Eigen::MatrixXcd &rho) {
    Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(rho).eigenvalues();
    double s = 0;
    for (double v : ev) {
        if (v > 1e-15) {
            s -= v * std::log2(v);
        }
    }
    return s;
}

// S(A|E) built from the protocol description: Alice sends |0> (bit 0) or
// |alpha> (bit 1), Bob keeps the conclusive outcomes |1> and |abar>, and
// Bob's register is traced out.
double oracle_conditional_entropy(const AttackVectors &a, double alpha) {
    double beta = std::sqrt(1 - alpha * alpha);
    std::array<std::array<double, 2>, 2> sent = {{{1, 0}, {alpha, beta}}};
    std::array<std::array<double, 2>, 2> kept = {{{0, 1}, {beta, -alpha}}};
    std::size_t d = a.ancilla_dim();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
    for (int bit = 0; bit < 2; ++bit) {
        for (const auto &b : kept) {
            ComplexVector v = eve_branch(a, sent[bit], b);
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < d; ++j) {
                    rho(bit * d + i, bit * d + j) += v[i] * std::conj(v[j]);
                }
            }
        }
    }
    rho /= rho.trace().real();
    Eigen::MatrixXcd rho_e = rho.topLeftCorner(d, d) + rho.bottomRightCorner(d, d);
    return entropy_bits(rho) - entropy_bits(rho_e);
}

TEST(AttackVectors, RejectsNonUnitary) {
    ComplexVector z(4);
    EXPECT_THROW(AttackVectors(chi(), chi(), z, chi()), InvalidArgument);
    EXPECT_THROW(AttackVectors(chi(), z, z, z), InvalidArgument);
    EXPECT_THROW(AttackVectors(chi(), z, z, ComplexVector(3)), InvalidArgument);
}

TEST(AttackVectors, ConstructorsAreUnitary) {
    EXPECT_LT(AttackVectors::identity().unitarity_residual(), 1e-15);
    EXPECT_LT(AttackVectors::bit_flip().unitarity_residual(), 1e-15);
    for (double q : {0.0, 0.05, 0.3, 0.5}) {
        EXPECT_LT(AttackVectors::depolarizing(q).unitarity_residual(), 1e-14);
    }
    Xoshiro256 rng(9);
    for (int i = 0; i < 200; ++i) {
        EXPECT_LT(AttackVectors::random(rng).unitarity_residual(), 1e-12);
    }
}

TEST(AttackVectors, RandomAttackHasHaarMarginals) {
    // A Haar-random column in dimension 8 puts on average half its weight on
    // any 4 coordinates.
    Xoshiro256 rng(21);
    double sum = 0;
    const int n = 4000;
    for (int i = 0; i < n; ++i) {
        sum += AttackVectors::random(rng).e0().norm_squared();
    }
    // variance of a Beta(4,4) variable is 1/36
    EXPECT_NEAR(sum / n, 0.5, 4 * std::sqrt(1.0 / 36 / n));
}

TEST(FVectors, Examples) {
    FVectors id = f_vectors(AttackVectors::identity(), kAlpha);
    expect_vector_near(id.f0, chi(), 1e-15);
    EXPECT_NEAR(id.f1.norm_squared(), 0, 1e-30);

    FVectors flip = f_vectors(AttackVectors::bit_flip(), kAlpha);
    expect_vector_near(flip.f0, 0.96 * chi(), 1e-15);
    expect_vector_near(flip.f1, 0.28 * chi(), 1e-15);

    Xoshiro256 rng(4);
    for (int i = 0; i < 50; ++i) {
        FVectors f = f_vectors(AttackVectors::random(rng), 0.37);
        EXPECT_NEAR(f.f0.norm_squared() + f.f1.norm_squared(), 1, 1e-10);
    }
}

TEST(GVectors, Examples) {
    GVectors id = g_vectors(AttackVectors::identity(), kAlpha);
    EXPECT_NEAR(id.g[0][0].norm_squared(), 0, 1e-30);
    expect_vector_near(id.g[0][1], kBeta * chi(), 1e-15);
    EXPECT_NEAR(id.g[1][0].norm_squared(), 0, 1e-30);
    expect_vector_near(id.g[1][1], kBeta * chi(), 1e-15);

    GVectors flip = g_vectors(AttackVectors::bit_flip(), kAlpha);
    expect_vector_near(flip.g[0][0], chi(), 1e-15);
    expect_vector_near(flip.g[0][1], -kAlpha * chi(), 1e-15);
}

TEST(GVectors, MatchProjectionsOfTheAttack) {
    Xoshiro256 rng(8);
    for (int i = 0; i < 50; ++i) {
        AttackVectors a = AttackVectors::random(rng);
        double alpha = 0.05 + 0.9 * rng.uniform();
        double beta = std::sqrt(1 - alpha * alpha);
        GVectors g = g_vectors(a, alpha);
        expect_vector_near(g.g[0][0], eve_branch(a, {1, 0}, {0, 1}), 1e-12);
        expect_vector_near(g.g[0][1], eve_branch(a, {1, 0}, {beta, -alpha}), 1e-12);
        // for Alice's |alpha> the error is Bob seeing |abar>
        expect_vector_near(g.g[1][0], eve_branch(a, {alpha, beta}, {beta, -alpha}), 1e-12);
        expect_vector_near(g.g[1][1], eve_branch(a, {alpha, beta}, {0, 1}), 1e-12);
        double expansion = alpha * alpha * a.e1().norm_squared() +
                           beta * beta * a.e3().norm_squared() +
                           2 * alpha * beta * inner_product(a.e1(), a.e3()).real();
        EXPECT_NEAR(g.g[1][1].norm_squared(), expansion, 1e-12);
    }
}

TEST(InducedStatistics, Examples) {
    ChannelStatistics id = induced_statistics(AttackVectors::identity(), kAlpha);
    EXPECT_NEAR(id.p01, 0, 1e-15);
    EXPECT_NEAR(id.p0a, 0.36, 1e-15);
    EXPECT_NEAR(id.pa_abar, 0, 1e-15);

    ChannelStatistics flip = induced_statistics(AttackVectors::bit_flip(), kAlpha);
    EXPECT_NEAR(flip.p01, 1, 1e-15);
    EXPECT_NEAR(flip.pa_abar, 0.0784, 1e-15);
}

TEST(InducedStatistics, DepolarizingAttackMatchesChannel) {
    for (double q : {0.0, 0.02, 0.05, 0.11, 0.5}) {
        for (double alpha : {0.1, 0.6, 0.9}) {
            ChannelStatistics got = induced_statistics(AttackVectors::depolarizing(q), alpha);
            ChannelStatistics want = symmetric_statistics(q, alpha);
            auto g = to_array(got), w = to_array(want);
            for (int i = 0; i < kNumStatistics; ++i) {
                EXPECT_NEAR(g[i], w[i], 1e-9) << "q=" << q << " alpha=" << alpha << " i=" << i;
            }
        }
    }
}

TEST(InducedStatistics, MatchProjectionProbabilities) {
    Xoshiro256 rng(12);
    for (int i = 0; i < 50; ++i) {
        AttackVectors a = AttackVectors::random(rng);
        double alpha = 0.05 + 0.9 * rng.uniform();
        double beta = std::sqrt(1 - alpha * alpha);
        ChannelStatistics s = induced_statistics(a, alpha);
        EXPECT_NEAR(s.p01, eve_branch(a, {1, 0}, {0, 1}).norm_squared(), 1e-12);
        EXPECT_NEAR(s.p10, eve_branch(a, {0, 1}, {1, 0}).norm_squared(), 1e-12);
        EXPECT_NEAR(s.p0a, eve_branch(a, {1, 0}, {alpha, beta}).norm_squared(), 1e-12);
        EXPECT_NEAR(s.p1a, eve_branch(a, {0, 1}, {alpha, beta}).norm_squared(), 1e-12);
        EXPECT_NEAR(s.pa0, eve_branch(a, {alpha, beta}, {1, 0}).norm_squared(), 1e-12);
        EXPECT_NEAR(s.pa_abar, eve_branch(a, {alpha, beta}, {beta, -alpha}).norm_squared(),
                    1e-12);
    }
}

TEST(ExactConditionalEntropy, IdentityIsOneBit) {
    for (double alpha : {0.2, 0.6, 0.9}) {
        EXPECT_NEAR(exact_conditional_entropy(AttackVectors::identity(), alpha), 1, 1e-10);
    }
}

TEST(ExactConditionalEntropy, MatchesIndependentConstruction) {
    Xoshiro256 rng(31);
    for (int i = 0; i < 100; ++i) {
        AttackVectors a = AttackVectors::random(rng);
        double alpha = 0.05 + 0.9 * rng.uniform();
        EXPECT_NEAR(exact_conditional_entropy(a, alpha), oracle_conditional_entropy(a, alpha),
                    1e-9);
    }
}

TEST(ExactConditionalEntropy, BoundedByKeyEntropy) {
    Xoshiro256 rng(32);
    for (int i = 0; i < 100; ++i) {
        AttackVectors a = AttackVectors::random(rng);
        double alpha = 0.05 + 0.9 * rng.uniform();
        GVectors g = g_vectors(a, alpha);
        double m0 = g.g[0][0].norm_squared() + g.g[0][1].norm_squared();
        double m = m0 + g.g[1][0].norm_squared() + g.g[1][1].norm_squared();
        EXPECT_LE(exact_conditional_entropy(a, alpha), binary_entropy(m0 / m) + 1e-12);
    }
}

TEST(AttackIo, JsonRoundTrip) {
    Xoshiro256 rng(2);
    AttackVectors a = AttackVectors::random(rng);
    AttackVectors b = attack_from_json(attack_to_json(a));
    for (int k = 0; k < 4; ++k) {
        expect_vector_near(a.e(k), b.e(k), 0);
    }
    EXPECT_THROW(attack_from_json("{\"e0\": []}"), InvalidArgument);
    EXPECT_THROW(attack_from_json("not json"), InvalidArgument);
}

}  // namespace
}  // namespace eb92
