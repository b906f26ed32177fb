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

#ifndef QASSERT_PROJECTIONS_H
#define QASSERT_PROJECTIONS_H

#include <cstddef>
#include <span>
#include <vector>

#include "qassert/numerics.h"

namespace qassert {

class DensityOperator;

/// A closed subspace of the 2^n-dimensional qubit space, stored as a d x r
/// matrix with orthonormal columns.
class Projection {
   public:
    /// Validates that `frame` has 2^ambient_qubits rows and orthonormal columns.
    Projection(ComplexMatrix frame, size_t ambient_qubits);

    static Projection zero(size_t ambient_qubits);
    static Projection identity(size_t ambient_qubits);

    const ComplexMatrix &frame() const {
        return frame_;
    }
    size_t rank() const {
        return static_cast<size_t>(frame_.cols());
    }
    size_t ambient_qubits() const {
        return ambient_qubits_;
    }
    size_t dimension() const {
        return static_cast<size_t>(frame_.rows());
    }
    ComplexMatrix as_matrix() const;

   private:
    ComplexMatrix frame_;
    size_t ambient_qubits_;
};

Projection from_kets(std::span<const ComplexVector> kets, size_t qubit_count);

Projection meet(const Projection &p, const Projection &q);
Projection join(const Projection &p, const Projection &q);
Projection complement(const Projection &p);

/// p on the leading qubits, q on the trailing ones.
Projection tensor(const Projection &p, const Projection &q);

/// Places p on `target_qubits` (in order) of an n-qubit space, identity elsewhere.
Projection embed(const Projection &p, std::span<const size_t> target_qubits, size_t total_qubits);

bool satisfies(const DensityOperator &rho, const Projection &p);

/// 1 - tr(P rho), clamped to [0, 1].
double violation(const DensityOperator &rho, const Projection &p);

/// Span of the eigenvectors with eigenvalue above 1e-9 of the largest.
Projection support(const ComplexMatrix &psd);
Projection support(const DensityOperator &rho);

/// Support of the partial trace of p onto `keep` (in that order).
Projection local_projection(const Projection &p, std::span<const size_t> keep);

/// ||P1 P2 - P1||_F <= tol and equal rank.
bool same_subspace(const Projection &a, const Projection &b, double tol = 1e-8);

}  // namespace qassert

#endif
