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

#include <cmath>
#include <string>
#include <vector>

#include "eb92/error.h"
#include "eb92/rng.h"

namespace eb92 {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0 && alpha < 1)) {
        throw InvalidArgument("alpha must be in (0, 1), got " + std::to_string(alpha));
    }
}

ComplexVector basis(std::size_t dim, std::size_t index) {
    ComplexVector v(dim);
    v[index] = 1;
    return v;
}

// Splits a vector on qubit (x) ancilla (qubit index major) into the two
// ancilla blocks.
std::array<ComplexVector, 2> split(const std::vector<Complex> &column, std::size_t d) {
    std::vector<Complex> lo(column.begin(), column.begin() + d);
    std::vector<Complex> hi(column.begin() + d, column.end());
    return {ComplexVector(std::move(lo)), ComplexVector(std::move(hi))};
}

double clamp_probability(double p, const char *name) {
    constexpr double kSlack = 1e-10;
    if (p < -kSlack || p > 1 + kSlack) {
        throw ComputationError(
            std::string("induced statistic ") + name + " = " + std::to_string(p) +
            " outside [0, 1]; attack violates unitarity");
    }
    return std::min(1.0, std::max(0.0, p));
}

}  // namespace

AttackVectors::AttackVectors(ComplexVector e0, ComplexVector e1, ComplexVector e2, ComplexVector e3)
    : e_{std::move(e0), std::move(e1), std::move(e2), std::move(e3)} {
    for (const auto &v : e_) {
        if (v.dim() != e_[0].dim()) {
            throw InvalidArgument("attack vectors must share one ancilla dimension");
        }
    }
    double residual = unitarity_residual();
    if (residual > kUnitarityTolerance) {
        throw InvalidArgument(
            "attack vectors violate unitarity by " + std::to_string(residual));
    }
}

double AttackVectors::unitarity_residual() const {
    double row0 = std::abs(e_[0].norm_squared() + e_[1].norm_squared() - 1);
    double row1 = std::abs(e_[2].norm_squared() + e_[3].norm_squared() - 1);
    double cross = std::abs(inner_product(e_[0], e_[2]) + inner_product(e_[1], e_[3]));
    return std::max({row0, row1, cross});
}

AttackVectors AttackVectors::identity() {
    ComplexVector chi = basis(kAncillaDim, 0);
    ComplexVector zero(kAncillaDim);
    return AttackVectors(chi, zero, zero, chi);
}

AttackVectors AttackVectors::bit_flip() {
    ComplexVector chi = basis(kAncillaDim, 0);
    ComplexVector zero(kAncillaDim);
    return AttackVectors(zero, chi, chi, zero);
}

AttackVectors AttackVectors::depolarizing(double q) {
    if (!(q >= 0 && q <= 0.5)) {
        throw InvalidArgument("noise q must be in [0, 0.5], got " + std::to_string(q));
    }
    double c0 = std::sqrt(1 - 1.5 * q);
    double c1 = std::sqrt(q / 2);
    const Complex i(0, 1);
    // Ancilla index k labels the Kraus operator {I, X, Y, Z}.
    ComplexVector e0{c0, 0, 0, c1};
    ComplexVector e1{0, c1, i * c1, 0};
    ComplexVector e2{0, c1, -i * c1, 0};
    ComplexVector e3{c0, 0, 0, -c1};
    return AttackVectors(e0, e1, e2, e3);
}

AttackVectors AttackVectors::random(Xoshiro256 &rng) {
    // The first two columns of a Haar unitary are distributed as Gram-Schmidt
    // applied to two iid complex Gaussian vectors.
    constexpr std::size_t n = 2 * kAncillaDim;
    auto gaussian = [&] {
        std::vector<Complex> v(n);
        for (auto &x : v) {
            double re = rng.normal();
            double im = rng.normal();
            x = Complex(re, im);
        }
        return v;
    };
    auto normalize = [](std::vector<Complex> &v) {
        double s = 0;
        for (const auto &x : v) {
            s += std::norm(x);
        }
        s = std::sqrt(s);
        for (auto &x : v) {
            x /= s;
        }
    };
    std::vector<Complex> u = gaussian();
    normalize(u);
    std::vector<Complex> w = gaussian();
    // Two Gram-Schmidt passes keep the cross term at rounding level.
    for (int pass = 0; pass < 2; ++pass) {
        Complex proj = 0;
        for (std::size_t k = 0; k < n; ++k) {
            proj += std::conj(u[k]) * w[k];
        }
        for (std::size_t k = 0; k < n; ++k) {
            w[k] -= proj * u[k];
        }
    }
    normalize(w);
    auto [e0, e1] = split(u, kAncillaDim);
    auto [e2, e3] = split(w, kAncillaDim);
    return AttackVectors(e0, e1, e2, e3);
}

FVectors f_vectors(const AttackVectors &attack, double alpha) {
    check_alpha(alpha);
    double beta = std::sqrt(1 - alpha * alpha);
    const auto &e0 = attack.e0();
    const auto &e1 = attack.e1();
    const auto &e2 = attack.e2();
    const auto &e3 = attack.e3();
    ComplexVector f0 = alpha * alpha * e0 + alpha * beta * e2 + alpha * beta * e1 + beta * beta * e3;
    ComplexVector f1 = alpha * beta * e0 + beta * beta * e2 - alpha * alpha * e1 - alpha * beta * e3;
    return {std::move(f0), std::move(f1)};
}

GVectors g_vectors(const AttackVectors &attack, double alpha) {
    check_alpha(alpha);
    double beta = std::sqrt(1 - alpha * alpha);
    FVectors f = f_vectors(attack, alpha);
    GVectors g{{{
        {attack.e1(), beta * attack.e0() - alpha * attack.e1()},
        {f.f1, beta * f.f0 - alpha * f.f1},
    }}};
    return g;
}

ChannelStatistics induced_statistics(const AttackVectors &attack, double alpha) {
    check_alpha(alpha);
    double beta = std::sqrt(1 - alpha * alpha);
    double a2 = alpha * alpha;
    double b2 = beta * beta;
    double ab = alpha * beta;
    double n0 = attack.e0().norm_squared();
    double n1 = attack.e1().norm_squared();
    double n2 = attack.e2().norm_squared();
    double n3 = attack.e3().norm_squared();
    double re01 = inner_product(attack.e0(), attack.e1()).real();
    double re23 = inner_product(attack.e2(), attack.e3()).real();

    ChannelStatistics s;
    s.p01 = clamp_probability(n1, "p01");
    s.p10 = clamp_probability(n2, "p10");
    s.p0a = clamp_probability(a2 * n0 + b2 * n1 + 2 * ab * re01, "p0a");
    s.p1a = clamp_probability(a2 * n2 + b2 * n3 + 2 * ab * re23, "p1a");
    s.pa0 = clamp_probability((alpha * attack.e0() + beta * attack.e2()).norm_squared(), "pa0");
    s.pa_abar = clamp_probability(f_vectors(attack, alpha).f1.norm_squared(), "pa_abar");
    return s;
}

PostSelectedState post_selected_state(const AttackVectors &attack, double alpha) {
    GVectors g = g_vectors(attack, alpha);
    std::size_t d = attack.ancilla_dim();
    double m = 0;
    for (const auto &branch : g.g) {
        for (const auto &v : branch) {
            m += v.norm_squared();
        }
    }
    if (m <= 1e-12) {
        throw ComputationError("no conclusive events; entropy undefined");
    }
    std::vector<Complex> entries(4 * d * d);
    std::size_t n = 2 * d;
    for (std::size_t a = 0; a < 2; ++a) {
        HermitianMatrix block = HermitianMatrix::projector(g.g[a][0]) +
                                HermitianMatrix::projector(g.g[a][1]);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                entries[(a * d + i) * n + (a * d + j)] = block(i, j) / m;
            }
        }
    }
    return {HermitianMatrix(n, std::move(entries)), m};
}

double exact_conditional_entropy(const AttackVectors &attack, double alpha) {
    PostSelectedState state = post_selected_state(attack, alpha);
    std::size_t d = attack.ancilla_dim();
    std::vector<Complex> eve(d * d);
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                eve[i * d + j] += state.rho_ae(a * d + i, a * d + j);
            }
        }
    }
    HermitianMatrix rho_e(d, std::move(eve));
    return von_neumann_entropy(state.rho_ae) - von_neumann_entropy(rho_e);
}

}  // namespace eb92
