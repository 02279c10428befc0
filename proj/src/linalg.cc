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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "eb92/error.h"

namespace eb92 {

namespace {

void check_dim(std::size_t dim) {
    if (dim == 0 || dim > kMaxDim) {
        throw InvalidArgument("dimension must be in [1, 16], got " + std::to_string(dim));
    }
}

void check_same_dim(std::size_t a, std::size_t b) {
    if (a != b) {
        throw InvalidArgument(
            "dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

double off_diagonal_norm(const std::vector<Complex> &a, std::size_t n) {
    double sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                sum += std::norm(a[i * n + j]);
            }
        }
    }
    return std::sqrt(sum);
}

}  // namespace

ComplexVector::ComplexVector(std::size_t dim) : entries_(dim) {
    check_dim(dim);
}

ComplexVector::ComplexVector(std::vector<Complex> entries) : entries_(std::move(entries)) {
    check_dim(entries_.size());
}

ComplexVector::ComplexVector(std::initializer_list<Complex> entries) : entries_(entries) {
    check_dim(entries_.size());
}

ComplexVector &ComplexVector::operator+=(const ComplexVector &other) {
    check_same_dim(dim(), other.dim());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] += other.entries_[i];
    }
    return *this;
}

ComplexVector &ComplexVector::operator-=(const ComplexVector &other) {
    check_same_dim(dim(), other.dim());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] -= other.entries_[i];
    }
    return *this;
}

ComplexVector &ComplexVector::operator*=(Complex scale) {
    for (auto &e : entries_) {
        e *= scale;
    }
    return *this;
}

double ComplexVector::norm_squared() const {
    double sum = 0;
    for (const auto &e : entries_) {
        sum += std::norm(e);
    }
    return sum;
}

ComplexVector operator+(ComplexVector a, const ComplexVector &b) {
    a += b;
    return a;
}

ComplexVector operator-(ComplexVector a, const ComplexVector &b) {
    a -= b;
    return a;
}

ComplexVector operator*(Complex scale, ComplexVector v) {
    v *= scale;
    return v;
}

ComplexVector operator*(double scale, ComplexVector v) {
    v *= Complex(scale, 0);
    return v;
}

Complex inner_product(const ComplexVector &a, const ComplexVector &b) {
    check_same_dim(a.dim(), b.dim());
    Complex sum = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        sum += std::conj(a[i]) * b[i];
    }
    return sum;
}

HermitianMatrix::HermitianMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
    check_dim(dim);
}

HermitianMatrix::HermitianMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    check_dim(dim);
    if (entries_.size() != dim * dim) {
        throw InvalidArgument("expected " + std::to_string(dim * dim) + " entries");
    }
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i; j < dim; ++j) {
            Complex upper = entries_[i * dim + j];
            Complex lower = entries_[j * dim + i];
            Complex diff = upper - std::conj(lower);
            if (std::abs(diff.real()) > kHermitianTolerance ||
                std::abs(diff.imag()) > kHermitianTolerance) {
                throw InvalidArgument(
                    "matrix is not Hermitian at (" + std::to_string(i) + ", " +
                    std::to_string(j) + ")");
            }
            Complex sym = 0.5 * (upper + std::conj(lower));
            if (i == j) {
                sym = Complex(sym.real(), 0);
            }
            entries_[i * dim + j] = sym;
            entries_[j * dim + i] = std::conj(sym);
        }
    }
}

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
    HermitianMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m.entries_[i * dim + i] = 1;
    }
    return m;
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
    HermitianMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        m.entries_[i * values.size() + i] = values[i];
    }
    return m;
}

HermitianMatrix HermitianMatrix::projector(const ComplexVector &v) {
    HermitianMatrix m(v.dim());
    std::size_t n = v.dim();
    for (std::size_t i = 0; i < n; ++i) {
        m.entries_[i * n + i] = std::norm(v[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            Complex z = v[i] * std::conj(v[j]);
            m.entries_[i * n + j] = z;
            m.entries_[j * n + i] = std::conj(z);
        }
    }
    return m;
}

double HermitianMatrix::trace() const {
    double t = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
        t += entries_[i * dim_ + i].real();
    }
    return t;
}

HermitianMatrix &HermitianMatrix::operator+=(const HermitianMatrix &other) {
    check_same_dim(dim_, other.dim_);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] += other.entries_[i];
    }
    return *this;
}

HermitianMatrix &HermitianMatrix::operator*=(double scale) {
    for (auto &e : entries_) {
        e *= scale;
    }
    return *this;
}

HermitianMatrix HermitianMatrix::conjugated(std::span<const Complex> unitary) const {
    if (unitary.size() != dim_ * dim_) {
        throw InvalidArgument("unitary has wrong size");
    }
    std::size_t n = dim_;
    std::vector<Complex> tmp(n * n);
    // tmp = U M
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex s = 0;
            for (std::size_t k = 0; k < n; ++k) {
                s += unitary[i * n + k] * entries_[k * n + j];
            }
            tmp[i * n + j] = s;
        }
    }
    std::vector<Complex> out(n * n);
    // out = tmp U^dagger
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex s = 0;
            for (std::size_t k = 0; k < n; ++k) {
                s += tmp[i * n + k] * std::conj(unitary[j * n + k]);
            }
            out[i * n + j] = s;
        }
    }
    // Rounding can push the product slightly off Hermitian; symmetrize first.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            Complex sym = 0.5 * (out[i * n + j] + std::conj(out[j * n + i]));
            out[i * n + j] = sym;
            out[j * n + i] = std::conj(sym);
        }
    }
    return HermitianMatrix(n, std::move(out));
}

HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix &b) {
    a += b;
    return a;
}

HermitianMatrix operator*(double scale, HermitianMatrix m) {
    m *= scale;
    return m;
}

EigenSystem hermitian_eigensystem(const HermitianMatrix &m) {
    constexpr double kOffTolerance = 1e-12;
    constexpr int kMaxSweeps = 100;

    std::size_t n = m.dim();
    std::vector<Complex> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a[i * n + j] = m(i, j);
        }
    }
    std::vector<Complex> v(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i * n + i] = 1;
    }

    int sweeps = 0;
    while (off_diagonal_norm(a, n) > kOffTolerance) {
        if (sweeps == kMaxSweeps) {
            throw ComputationError("Jacobi eigensolver did not converge");
        }
        ++sweeps;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                Complex apq = a[p * n + q];
                double mag = std::abs(apq);
                if (mag == 0) {
                    continue;
                }
                // Phase rotation makes the (p, q) block real symmetric, then
                // a real Jacobi rotation annihilates it.
                Complex phase = std::conj(apq) / mag;  // e^{-i phi}
                double app = a[p * n + p].real();
                double aqq = a[q * n + q].real();
                double tau = (aqq - app) / (2 * mag);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
                double c = 1 / std::sqrt(1 + t * t);
                double s = t * c;
                Complex upp = c;
                Complex upq = s;
                Complex uqp = -s * phase;
                Complex uqq = c * phase;

                for (std::size_t k = 0; k < n; ++k) {
                    Complex akp = a[k * n + p];
                    Complex akq = a[k * n + q];
                    a[k * n + p] = akp * upp + akq * uqp;
                    a[k * n + q] = akp * upq + akq * uqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    Complex apk = a[p * n + k];
                    Complex aqk = a[q * n + k];
                    a[p * n + k] = std::conj(upp) * apk + std::conj(uqp) * aqk;
                    a[q * n + k] = std::conj(upq) * apk + std::conj(uqq) * aqk;
                }
                a[p * n + q] = 0;
                a[q * n + p] = 0;
                a[p * n + p] = a[p * n + p].real();
                a[q * n + q] = a[q * n + q].real();

                for (std::size_t k = 0; k < n; ++k) {
                    Complex vkp = v[k * n + p];
                    Complex vkq = v[k * n + q];
                    v[k * n + p] = vkp * upp + vkq * uqp;
                    v[k * n + q] = vkp * upq + vkq * uqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return a[x * n + x].real() > a[y * n + y].real();
    });

    EigenSystem out;
    out.sweeps = sweeps;
    out.values.resize(n);
    out.vectors.resize(n * n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t src = order[col];
        out.values[col] = a[src * n + src].real();
        for (std::size_t row = 0; row < n; ++row) {
            out.vectors[col * n + row] = v[row * n + src];
        }
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const HermitianMatrix &m) {
    return hermitian_eigensystem(m).values;
}

double von_neumann_entropy(const HermitianMatrix &m) {
    double tr = m.trace();
    if (std::abs(tr - 1) > 1e-9) {
        throw InvalidArgument("density operator trace " + std::to_string(tr) + " is not 1");
    }
    std::vector<double> values = hermitian_eigenvalues(m);
    for (double &x : values) {
        if (x < -1e-10) {
            throw InvalidArgument("density operator has negative eigenvalue " + std::to_string(x));
        }
        x = std::max(x, 0.0);
    }
    return shannon_entropy(values);
}

double shannon_entropy(std::span<const double> probabilities) {
    double s = 0;
    for (double p : probabilities) {
        if (p > 0) {
            s -= p * std::log2(p);
        }
    }
    return s;
}

double binary_entropy(double p) {
    if (!(p >= 0 && p <= 1)) {
        throw InvalidArgument("binary entropy argument outside [0, 1]: " + std::to_string(p));
    }
    double s = 0;
    if (p > 0) {
        s -= p * std::log2(p);
    }
    if (p < 1) {
        s -= (1 - p) * std::log2(1 - p);
    }
    return s;
}

}  // namespace eb92
