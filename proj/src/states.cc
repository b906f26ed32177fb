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

#include "qassert/states.h"

#include <algorithm>
#include <cmath>

#include "qassert/error.h"

namespace qassert {

namespace {

void require_same_size(const DensityOperator &rho, const DensityOperator &sigma) {
    if (rho.qubit_count() != sigma.qubit_count()) {
        throw Error(ErrorCode::DimensionMismatch, "density operators differ in size");
    }
}

}  // namespace

StateVector::StateVector(ComplexVector amplitudes, size_t qubit_count)
    : amplitudes_(std::move(amplitudes)), qubit_count_(qubit_count) {
    if (amplitudes_.size() != (Eigen::Index{1} << qubit_count)) {
        throw Error(ErrorCode::DimensionMismatch, "amplitude count is not 2^n");
    }
    if (std::abs(amplitudes_.norm() - 1.0) > 1e-9) {
        throw Error(ErrorCode::DimensionMismatch, "state vector is not normalized");
    }
}

StateVector StateVector::zero_state(size_t qubit_count) {
    ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << qubit_count);
    v[0] = 1;
    return StateVector(std::move(v), qubit_count);
}

DensityOperator::DensityOperator(ComplexMatrix matrix, size_t qubit_count)
    : matrix_(std::move(matrix)), qubit_count_(qubit_count) {
    Eigen::Index d = Eigen::Index{1} << qubit_count;
    if (matrix_.rows() != d || matrix_.cols() != d) {
        throw Error(ErrorCode::DimensionMismatch, "density matrix is not 2^n x 2^n");
    }
    if (hermitian_deviation(matrix_) > 1e-9) {
        throw Error(ErrorCode::NotHermitian, "density matrix is not Hermitian");
    }
    if (std::abs(matrix_.trace().real() - 1.0) > 1e-9) {
        throw Error(ErrorCode::NotPSD, "density matrix trace is not 1");
    }
    EigenDecomposition eig = hermitian_eig(matrix_);
    if (eig.values.back() < -1e-9) {
        throw Error(ErrorCode::NotPSD, "density matrix has a negative eigenvalue");
    }
}

DensityOperator DensityOperator::from_state(const StateVector &state) {
    const ComplexVector &v = state.amplitudes();
    return DensityOperator(v * v.adjoint(), state.qubit_count());
}

double trace_distance(const DensityOperator &rho, const DensityOperator &sigma) {
    require_same_size(rho, sigma);
    EigenDecomposition eig = hermitian_eig(rho.matrix() - sigma.matrix());
    double sum = 0;
    for (double v : eig.values) {
        sum += std::abs(v);
    }
    return 0.5 * sum;
}

double fidelity(const DensityOperator &rho, const DensityOperator &sigma) {
    require_same_size(rho, sigma);
    ComplexMatrix root = psd_sqrt(rho.matrix());
    ComplexMatrix inner = root * sigma.matrix() * root;
    inner = (inner + inner.adjoint()) * 0.5;
    EigenDecomposition eig = hermitian_eig(inner);
    double sum = 0;
    for (double v : eig.values) {
        sum += std::sqrt(std::max(v, 0.0));
    }
    return sum;
}

uint64_t Rng::derive_seed(uint64_t master, uint64_t index) {
    // SplitMix64 finalizer over the pair.
    uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

size_t sample_index(std::span<const double> weights, Rng &rng) {
    double total = 0;
    size_t last = weights.size();
    for (size_t i = 0; i < weights.size(); i++) {
        if (weights[i] >= kGhostBranchProbability) {
            total += weights[i];
            last = i;
        }
    }
    if (last == weights.size()) {
        throw Error(ErrorCode::IncompleteMeasurement, "no outcome has positive probability");
    }
    double u = rng.uniform() * total;
    double acc = 0;
    for (size_t i = 0; i < weights.size(); i++) {
        if (weights[i] < kGhostBranchProbability) {
            continue;
        }
        acc += weights[i];
        if (u < acc) {
            return i;
        }
    }
    return last;
}

MeasurementResult measure_projective(const StateVector &state, std::span<const Projection> projectors, Rng &rng) {
    const Eigen::Index d = state.amplitudes().size();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto &p : projectors) {
        if (p.ambient_qubits() != state.qubit_count()) {
            throw Error(ErrorCode::DimensionMismatch, "projector size differs from state size");
        }
        sum += p.as_matrix();
    }
    // Orthogonal projectors sum to the identity exactly when the sum is I.
    if ((sum - ComplexMatrix::Identity(d, d)).norm() > 1e-8) {
        throw Error(ErrorCode::IncompleteMeasurement, "projectors do not resolve the identity");
    }
    std::vector<double> probs;
    std::vector<ComplexVector> coords;
    for (const auto &p : projectors) {
        ComplexVector c = p.frame().adjoint() * state.amplitudes();
        probs.push_back(c.squaredNorm());
        coords.push_back(std::move(c));
    }
    size_t m = sample_index(probs, rng);
    ComplexVector post = projectors[m].frame() * coords[m];
    post /= std::sqrt(probs[m]);
    return MeasurementResult{m, StateVector(std::move(post), state.qubit_count()), probs[m]};
}

}  // namespace qassert
