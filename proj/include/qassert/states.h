// Copyright 2026 The qassert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QASSERT_STATES_H
#define QASSERT_STATES_H

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

#include "qassert/numerics.h"
#include "qassert/projections.h"

namespace qassert {

class StateVector {
   public:
    /// Requires 2^qubit_count amplitudes with unit norm (within 1e-9).
    StateVector(ComplexVector amplitudes, size_t qubit_count);

    /// |0...0>.
    static StateVector zero_state(size_t qubit_count);

    const ComplexVector &amplitudes() const {
        return amplitudes_;
    }
    size_t qubit_count() const {
        return qubit_count_;
    }

   private:
    ComplexVector amplitudes_;
    size_t qubit_count_;
};

class DensityOperator {
   public:
    /// Requires a Hermitian, positive semidefinite, unit-trace 2^n x 2^n matrix.
    DensityOperator(ComplexMatrix matrix, size_t qubit_count);

    static DensityOperator from_state(const StateVector &state);

    const ComplexMatrix &matrix() const {
        return matrix_;
    }
    size_t qubit_count() const {
        return qubit_count_;
    }

   private:
    ComplexMatrix matrix_;
    size_t qubit_count_;
};

double trace_distance(const DensityOperator &rho, const DensityOperator &sigma);
double fidelity(const DensityOperator &rho, const DensityOperator &sigma);

/// Per-shot generator. Shot i of a campaign seeded with `master` uses
/// Rng(Rng::derive_seed(master, i)), so results do not depend on scheduling.
class Rng {
   public:
    explicit Rng(uint64_t seed) : engine_(seed) {
    }

    static uint64_t derive_seed(uint64_t master, uint64_t index);

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

   private:
    std::mt19937_64 engine_;
};

/// Outcomes with probability below this are never sampled.
inline constexpr double kGhostBranchProbability = 1e-12;

struct MeasurementResult {
    size_t outcome;
    StateVector post_state;
    double probability;
};

/// Samples a projective measurement. The projectors must be pairwise
/// orthogonal and sum to the identity within 1e-8.
MeasurementResult measure_projective(const StateVector &state, std::span<const Projection> projectors, Rng &rng);

/// Index of the sampled entry of `weights` (entries below the ghost threshold
/// are skipped).
size_t sample_index(std::span<const double> weights, Rng &rng);

}  // namespace qassert

#endif
