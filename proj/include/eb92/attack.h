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
#include <string>

#include "eb92/channel.h"
#include "eb92/linalg.h"

namespace eb92 {

class Xoshiro256;

/// A collective attack U|0,chi> = |0,e0> + |1,e1>, U|1,chi> = |0,e2> + |1,e3>
/// described by Eve's four (unnormalized) ancilla vectors. Construction
/// rejects vectors that violate unitarity by more than kUnitarityTolerance;
/// nothing is renormalized.
class AttackVectors {
   public:
    static constexpr double kUnitarityTolerance = 1e-10;
    /// Ancilla dimension used by the built-in constructors.
    static constexpr std::size_t kAncillaDim = 4;

    AttackVectors(ComplexVector e0, ComplexVector e1, ComplexVector e2, ComplexVector e3);

    /// Eve does nothing: e0 = e3 = chi, e1 = e2 = 0.
    static AttackVectors identity();
    /// Deterministic bit flip: e1 = e2 = chi, e0 = e3 = 0.
    static AttackVectors bit_flip();
    /// Stinespring dilation of rho -> (1 - 2q) rho + q I on a 4-dim ancilla
    /// (Kraus operators sqrt(1 - 3q/2) I and sqrt(q/2) X, Y, Z).
    static AttackVectors depolarizing(double q);
    /// Two columns of a Haar-random unitary on qubit (x) C^4, i.e. the images
    /// of |0,chi> and |1,chi>.
    static AttackVectors random(Xoshiro256 &rng);

    const ComplexVector &e0() const {
        return e_[0];
    }
    const ComplexVector &e1() const {
        return e_[1];
    }
    const ComplexVector &e2() const {
        return e_[2];
    }
    const ComplexVector &e3() const {
        return e_[3];
    }
    const ComplexVector &e(int i) const {
        return e_[i];
    }
    std::size_t ancilla_dim() const {
        return e_[0].dim();
    }

    /// Largest absolute violation among the three unitarity constraints.
    double unitarity_residual() const;

   private:
    std::array<ComplexVector, 4> e_;
};

struct FVectors {
    ComplexVector f0;
    ComplexVector f1;
};

/// U|alpha,chi> = |alpha,f0> + |abar,f1>.
FVectors f_vectors(const AttackVectors &attack, double alpha);

/// Eve's conditional (unnormalized) states after a conclusive key round:
/// g[a][i] for Alice's bit a. i = 0 is the event where Bob's bit disagrees
/// with Alice's, i = 1 where it agrees.
struct GVectors {
    std::array<std::array<ComplexVector, 2>, 2> g;
};

GVectors g_vectors(const AttackVectors &attack, double alpha);

/// Statistics the attack induces on honest measurements.
ChannelStatistics induced_statistics(const AttackVectors &attack, double alpha);

/// Post-selected classical-quantum state of Alice's key bit and Eve's ancilla.
struct PostSelectedState {
    HermitianMatrix rho_ae;
    double m_norm = 0;
};

PostSelectedState post_selected_state(const AttackVectors &attack, double alpha);

/// Exact S(A|E) = S(AE) - S(E) of the post-selected state, in bits.
double exact_conditional_entropy(const AttackVectors &attack, double alpha);

}  // namespace eb92
