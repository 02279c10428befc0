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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace eb92 {

using Complex = std::complex<double>;

/// Largest dimension supported by the small dense routines below.
inline constexpr std::size_t kMaxDim = 16;

/// Dense complex column vector, 1 <= dim <= kMaxDim.
class ComplexVector {
   public:
    ComplexVector() = default;
    explicit ComplexVector(std::size_t dim);
    explicit ComplexVector(std::vector<Complex> entries);
    ComplexVector(std::initializer_list<Complex> entries);

    std::size_t dim() const {
        return entries_.size();
    }
    const Complex &operator[](std::size_t i) const {
        return entries_[i];
    }
    Complex &operator[](std::size_t i) {
        return entries_[i];
    }
    std::span<const Complex> entries() const {
        return entries_;
    }

    ComplexVector &operator+=(const ComplexVector &other);
    ComplexVector &operator-=(const ComplexVector &other);
    ComplexVector &operator*=(Complex scale);

    /// <v|v>, always real and non-negative.
    double norm_squared() const;

   private:
    std::vector<Complex> entries_;
};

ComplexVector operator+(ComplexVector a, const ComplexVector &b);
ComplexVector operator-(ComplexVector a, const ComplexVector &b);
ComplexVector operator*(Complex scale, ComplexVector v);
ComplexVector operator*(double scale, ComplexVector v);

/// <a|b> = sum_i conj(a_i) b_i. Throws InvalidArgument on dimension mismatch.
Complex inner_product(const ComplexVector &a, const ComplexVector &b);

/// Dense Hermitian matrix stored row-major. Construction checks Hermiticity
/// componentwise to within kHermitianTolerance and then symmetrizes exactly.
class HermitianMatrix {
   public:
    static constexpr double kHermitianTolerance = 1e-12;

    HermitianMatrix() = default;
    /// Zero matrix.
    explicit HermitianMatrix(std::size_t dim);
    /// Row-major entries; throws InvalidArgument if not Hermitian.
    HermitianMatrix(std::size_t dim, std::vector<Complex> entries);

    static HermitianMatrix identity(std::size_t dim);
    static HermitianMatrix diagonal(std::span<const double> values);
    /// |v><v|
    static HermitianMatrix projector(const ComplexVector &v);

    std::size_t dim() const {
        return dim_;
    }
    const Complex &operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }
    double trace() const;

    HermitianMatrix &operator+=(const HermitianMatrix &other);
    HermitianMatrix &operator*=(double scale);

    /// U M U^dagger for a square (not necessarily validated) unitary given
    /// row-major.
    HermitianMatrix conjugated(std::span<const Complex> unitary) const;

   private:
    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
};

HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix &b);
HermitianMatrix operator*(double scale, HermitianMatrix m);

/// Eigen-decomposition output; eigenvectors are stored column-major, one
/// column per eigenvalue, in the same order as `values`.
struct EigenSystem {
    std::vector<double> values;
    std::vector<Complex> vectors;
    int sweeps = 0;
};

/// Cyclic complex Jacobi. Eigenvalues in non-increasing order.
EigenSystem hermitian_eigensystem(const HermitianMatrix &m);

std::vector<double> hermitian_eigenvalues(const HermitianMatrix &m);

/// -sum lambda log2 lambda over the spectrum. Requires a density operator:
/// eigenvalues >= -1e-10 (clamped to 0 in [-1e-10, 0)) and unit trace within
/// 1e-9.
double von_neumann_entropy(const HermitianMatrix &m);

/// Shannon entropy of a discrete distribution, in bits; 0 log 0 = 0.
double shannon_entropy(std::span<const double> probabilities);

/// h(p) = -p log2 p - (1-p) log2 (1-p); p must be in [0, 1].
double binary_entropy(double p);

}  // namespace eb92
