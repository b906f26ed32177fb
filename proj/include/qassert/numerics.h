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

#ifndef QASSERT_NUMERICS_H
#define QASSERT_NUMERICS_H

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qassert {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Rank decisions everywhere use this threshold.
inline constexpr double kRankTolerance = 1e-9;

struct EigenDecomposition {
    /// Sorted descending.
    std::vector<double> values;
    /// Column j pairs with values[j].
    ComplexMatrix vectors;
};

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Largest entry of |a - a^H|. Requires a square matrix.
double hermitian_deviation(const ComplexMatrix &a);

/// Eigendecomposition of a Hermitian matrix. Degenerate eigenspaces are
/// re-expressed in a canonical basis (standard basis vectors projected in index
/// order, orthonormalized, first nonzero component real-positive) so the
/// result does not depend on the underlying solver's choices.
EigenDecomposition hermitian_eig(const ComplexMatrix &a);

/// Orthonormal basis of range(m) by Gram-Schmidt over the columns in index
/// order. Residuals with norm <= tol (relative to the largest column norm) are
/// dropped.
ComplexMatrix orthonormal_columns(const ComplexMatrix &m, double tol = kRankTolerance);

/// Orthonormal basis of the orthogonal complement of range(b). b must have
/// orthonormal columns.
ComplexMatrix orthonormal_complement(const ComplexMatrix &b);

/// Keeps the qubits listed in `keep` (in that order) and traces out the rest.
/// Qubit 0 is the most significant bit of a basis index.
ComplexMatrix partial_trace(const ComplexMatrix &a, size_t qubit_count, std::span<const size_t> keep);

ComplexMatrix psd_sqrt(const ComplexMatrix &a);

/// The 2^total operator acting as `op` on `targets` (in order) and as identity
/// on every other qubit.
ComplexMatrix embed_operator(const ComplexMatrix &op, std::span<const size_t> targets, size_t total);

/// Applies a 2^k x 2^k operator to the listed qubits of a state vector in place.
void apply_to_qubits(ComplexVector &state, const ComplexMatrix &op, std::span<const size_t> targets, size_t total);

/// Bits of `index` at `qubits`, packed with qubits[0] as most significant.
size_t extract_bits(size_t index, std::span<const size_t> qubits, size_t total);

bool is_unitary(const ComplexMatrix &u, double tol);

}  // namespace qassert

#endif
