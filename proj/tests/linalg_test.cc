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

#include "eb92/linalg.h"

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "eb92/error.h"
#include "eb92/rng.h"

namespace eb92 {
namespace {

using namespace std::complex_literals;

HermitianMatrix random_hermitian(Xoshiro256 &rng, std::size_t dim) {
    std::vector<Complex> a(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = r; c < dim; ++c) {
            Complex z(rng.normal(), r == c ? 0.0 : rng.normal());
            a[r * dim + c] = z;
            a[c * dim + r] = std::conj(z);
        }
    }
    return HermitianMatrix(dim, a);
}

// Random density matrix: G G^dagger / tr.
HermitianMatrix random_density(Xoshiro256 &rng, std::size_t dim) {
    std::vector<Complex> g(dim * dim);
    for (auto &z : g) {
        z = Complex(rng.normal(), rng.normal());
    }
    std::vector<Complex> rho(dim * dim);
    double tr = 0;
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            Complex s = 0;
            for (std::size_t k = 0; k < dim; ++k) {
                s += g[r * dim + k] * std::conj(g[c * dim + k]);
            }
            rho[r * dim + c] = s;
        }
        tr += rho[r * dim + r].real();
    }
    for (auto &z : rho) {
        z /= tr;
    }
    return HermitianMatrix(dim, rho);
}

std::vector<Complex> random_unitary(Xoshiro256 &rng, std::size_t dim) {
    Eigen::MatrixXcd g(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            g(r, c) = Complex(rng.normal(), rng.normal());
        }
    }
    Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ();
    std::vector<Complex> u(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            u[r * dim + c] = q(r, c);
        }
    }
    return u;
}

TEST(InnerProduct, Examples) {
    EXPECT_EQ(inner_product({1, 0}, {1, 0}), Complex(1, 0));
    EXPECT_EQ(inner_product({1, 0}, {0, 1}), Complex(0, 0));
    double s = 1 / std::sqrt(2.0);
    Complex v = inner_product({s, s * 1i}, {s, s});
    EXPECT_NEAR(v.real(), 0.5, 1e-15);
    EXPECT_NEAR(v.imag(), -0.5, 1e-15);
}

TEST(InnerProduct, RejectsDimensionMismatch) {
    EXPECT_THROW(inner_product({1, 0}, {1, 0, 0}), InvalidArgument);
}

TEST(HermitianMatrix, RejectsNonHermitian) {
    EXPECT_THROW(HermitianMatrix(2, {1, 1, 0, 1}), InvalidArgument);
    EXPECT_THROW(HermitianMatrix(2, {1, 1i, 1i, 1}), InvalidArgument);
}

TEST(Eigenvalues, Examples) {
    auto id = hermitian_eigenvalues(HermitianMatrix::identity(2));
    EXPECT_NEAR(id[0], 1, 1e-15);
    EXPECT_NEAR(id[1], 1, 1e-15);
    std::vector<double> d = {0.3, 0.7};
    auto diag = hermitian_eigenvalues(HermitianMatrix::diagonal(d));
    EXPECT_NEAR(diag[0], 0.7, 1e-15);
    EXPECT_NEAR(diag[1], 0.3, 1e-15);
    auto x = hermitian_eigenvalues(HermitianMatrix(2, {0, 1, 1, 0}));
    EXPECT_NEAR(x[0], 1, 1e-14);
    EXPECT_NEAR(x[1], -1, 1e-14);
}

TEST(Eigenvalues, MatchEigenOnRandomMatrices) {
    Xoshiro256 rng(11);
    for (std::size_t dim : {1u, 2u, 3u, 4u, 8u, 16u}) {
        for (int rep = 0; rep < 20; ++rep) {
            HermitianMatrix m = random_hermitian(rng, dim);
            Eigen::MatrixXcd e(dim, dim);
            for (std::size_t r = 0; r < dim; ++r) {
                for (std::size_t c = 0; c < dim; ++c) {
                    e(r, c) = m(r, c);
                }
            }
            Eigen::VectorXd ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(e).eigenvalues();
            std::vector<double> got = hermitian_eigenvalues(m);
            ASSERT_EQ(got.size(), dim);
            for (std::size_t i = 0; i < dim; ++i) {
                // ours descending, Eigen ascending
                EXPECT_NEAR(got[i], ref[dim - 1 - i], 1e-10) << "dim " << dim;
            }
            double sum = 0;
            for (double v : got) {
                sum += v;
            }
            EXPECT_NEAR(sum, m.trace(), 1e-9);
        }
    }
}

TEST(EigenSystem, VectorsDiagonalize) {
    Xoshiro256 rng(5);
    HermitianMatrix m = random_hermitian(rng, 8);
    EigenSystem es = hermitian_eigensystem(m);
    const std::size_t n = 8;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t r = 0; r < n; ++r) {
            Complex mv = 0;
            for (std::size_t c = 0; c < n; ++c) {
                mv += m(r, c) * es.vectors[k * n + c];
            }
            EXPECT_NEAR(std::abs(mv - es.values[k] * es.vectors[k * n + r]), 0, 1e-10);
        }
    }
}

TEST(VonNeumannEntropy, Examples) {
    std::vector<double> pure = {1, 0};
    std::vector<double> mixed = {0.5, 0.5};
    std::vector<double> mixed4 = {0.25, 0.25, 0.25, 0.25};
    EXPECT_NEAR(von_neumann_entropy(HermitianMatrix::diagonal(pure)), 0, 1e-15);
    EXPECT_NEAR(von_neumann_entropy(HermitianMatrix::diagonal(mixed)), 1, 1e-15);
    EXPECT_NEAR(von_neumann_entropy(HermitianMatrix::diagonal(mixed4)), 2, 1e-15);
}

TEST(VonNeumannEntropy, RejectsBadTraceOrNegativeSpectrum) {
    std::vector<double> tr2 = {1, 1};
    EXPECT_THROW(von_neumann_entropy(HermitianMatrix::diagonal(tr2)), InvalidArgument);
    std::vector<double> neg = {1.1, -0.1};
    EXPECT_THROW(von_neumann_entropy(HermitianMatrix::diagonal(neg)), InvalidArgument);
    std::vector<double> tiny = {1 + 5e-11, -5e-11};
    EXPECT_NEAR(von_neumann_entropy(HermitianMatrix::diagonal(tiny)), 0, 1e-9);
}

TEST(VonNeumannEntropy, UnitarilyInvariant) {
    Xoshiro256 rng(3);
    for (std::size_t dim : {2u, 4u, 8u}) {
        for (int rep = 0; rep < 10; ++rep) {
            HermitianMatrix rho = random_density(rng, dim);
            HermitianMatrix rotated = rho.conjugated(random_unitary(rng, dim));
            EXPECT_NEAR(von_neumann_entropy(rho), von_neumann_entropy(rotated), 1e-10);
            EXPECT_GE(von_neumann_entropy(rho), -1e-12);
            EXPECT_LE(von_neumann_entropy(rho), std::log2(static_cast<double>(dim)) + 1e-12);
        }
    }
}

TEST(BinaryEntropy, Values) {
    EXPECT_EQ(binary_entropy(0), 0);
    EXPECT_EQ(binary_entropy(1), 0);
    EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1);
    EXPECT_NEAR(binary_entropy(0.11), binary_entropy(0.89), 1e-15);
    EXPECT_THROW(binary_entropy(-0.1), InvalidArgument);
    EXPECT_THROW(binary_entropy(1.1), InvalidArgument);
}

TEST(ShannonEntropy, Uniform) {
    std::vector<double> p(8, 0.125);
    EXPECT_NEAR(shannon_entropy(p), 3, 1e-14);
}

}  // namespace
}  // namespace eb92
