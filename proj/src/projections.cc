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

#include "qassert/projections.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "qassert/error.h"
#include "qassert/states.h"

namespace qassert {

namespace {

void require_same_ambient(const Projection &p, const Projection &q) {
    if (p.ambient_qubits() != q.ambient_qubits()) {
        throw Error(
            ErrorCode::DimensionMismatch,
            "projections act on " + std::to_string(p.ambient_qubits()) + " and " +
                std::to_string(q.ambient_qubits()) + " qubits");
    }
}

void require_matching(const DensityOperator &rho, const Projection &p) {
    if (rho.qubit_count() != p.ambient_qubits()) {
        throw Error(ErrorCode::DimensionMismatch, "state and projection sizes differ");
    }
}

size_t qubits_for_dimension(Eigen::Index d) {
    size_t n = 0;
    while ((Eigen::Index{1} << n) < d) {
        n++;
    }
    if ((Eigen::Index{1} << n) != d) {
        throw Error(ErrorCode::DimensionMismatch, "dimension is not a power of two");
    }
    return n;
}

}  // namespace

Projection::Projection(ComplexMatrix frame, size_t ambient_qubits)
    : frame_(std::move(frame)), ambient_qubits_(ambient_qubits) {
    if (frame_.rows() != (Eigen::Index{1} << ambient_qubits)) {
        throw Error(ErrorCode::DimensionMismatch, "frame row count is not 2^n");
    }
    if (frame_.cols() > 0) {
        ComplexMatrix gram = frame_.adjoint() * frame_;
        if ((gram - ComplexMatrix::Identity(frame_.cols(), frame_.cols())).cwiseAbs().maxCoeff() > 1e-9) {
            throw Error(ErrorCode::NotOrthonormal, "frame columns are not orthonormal");
        }
    }
}

Projection Projection::zero(size_t ambient_qubits) {
    return Projection(ComplexMatrix(Eigen::Index{1} << ambient_qubits, 0), ambient_qubits);
}

Projection Projection::identity(size_t ambient_qubits) {
    Eigen::Index d = Eigen::Index{1} << ambient_qubits;
    return Projection(ComplexMatrix::Identity(d, d), ambient_qubits);
}

ComplexMatrix Projection::as_matrix() const {
    return frame_ * frame_.adjoint();
}

Projection from_kets(std::span<const ComplexVector> kets, size_t qubit_count) {
    Eigen::Index d = Eigen::Index{1} << qubit_count;
    ComplexMatrix stacked(d, static_cast<Eigen::Index>(kets.size()));
    for (size_t k = 0; k < kets.size(); k++) {
        if (kets[k].size() != d) {
            throw Error(ErrorCode::DimensionMismatch, "ket length does not match qubit count");
        }
        stacked.col(static_cast<Eigen::Index>(k)) = kets[k];
    }
    return Projection(orthonormal_columns(stacked), qubit_count);
}

Projection meet(const Projection &p, const Projection &q) {
    require_same_ambient(p, q);
    if (p.rank() == 0 || q.rank() == 0) {
        return Projection::zero(p.ambient_qubits());
    }
    EigenDecomposition eig = hermitian_eig(p.as_matrix() + q.as_matrix());
    Eigen::Index count = 0;
    while (count < static_cast<Eigen::Index>(eig.values.size()) &&
           std::abs(eig.values[static_cast<size_t>(count)] - 2.0) < 1e-6) {
        count++;
    }
    return Projection(eig.vectors.leftCols(count), p.ambient_qubits());
}

Projection join(const Projection &p, const Projection &q) {
    require_same_ambient(p, q);
    ComplexMatrix both(static_cast<Eigen::Index>(p.dimension()), static_cast<Eigen::Index>(p.rank() + q.rank()));
    both << p.frame(), q.frame();
    return Projection(orthonormal_columns(both), p.ambient_qubits());
}

Projection complement(const Projection &p) {
    return Projection(orthonormal_complement(p.frame()), p.ambient_qubits());
}

Projection tensor(const Projection &p, const Projection &q) {
    return Projection(kron(p.frame(), q.frame()), p.ambient_qubits() + q.ambient_qubits());
}

Projection embed(const Projection &p, std::span<const size_t> target_qubits, size_t total_qubits) {
    if (p.ambient_qubits() != target_qubits.size()) {
        throw Error(ErrorCode::DimensionMismatch, "projection size differs from target count");
    }
    // Build frame columns by placing each frame column next to every basis
    // state of the untouched qubits.
    std::vector<bool> used(total_qubits, false);
    for (size_t q : target_qubits) {
        if (q >= total_qubits) {
            throw Error(ErrorCode::IndexOutOfRange, "target qubit " + std::to_string(q) + " out of range");
        }
        if (used[q]) {
            throw Error(ErrorCode::DuplicateIndex, "target qubit " + std::to_string(q) + " listed twice");
        }
        used[q] = true;
    }
    std::vector<size_t> rest;
    for (size_t q = 0; q < total_qubits; q++) {
        if (!used[q]) {
            rest.push_back(q);
        }
    }
    std::vector<size_t> order(target_qubits.begin(), target_qubits.end());
    order.insert(order.end(), rest.begin(), rest.end());
    // In `order` coordinates the frame is p.frame (x) I.
    Eigen::Index rest_dim = Eigen::Index{1} << rest.size();
    ComplexMatrix local = kron(p.frame(), ComplexMatrix::Identity(rest_dim, rest_dim));
    const size_t d = size_t{1} << total_qubits;
    ComplexMatrix frame = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), local.cols());
    for (size_t i = 0; i < d; i++) {
        // Position i in `order` coordinates maps to global index g.
        size_t g = 0;
        for (size_t t = 0; t < total_qubits; t++) {
            if ((i >> (total_qubits - 1 - t)) & 1) {
                g |= size_t{1} << (total_qubits - 1 - order[t]);
            }
        }
        frame.row(static_cast<Eigen::Index>(g)) = local.row(static_cast<Eigen::Index>(i));
    }
    return Projection(std::move(frame), total_qubits);
}

bool satisfies(const DensityOperator &rho, const Projection &p) {
    return violation(rho, p) <= 1e-9;
}

double violation(const DensityOperator &rho, const Projection &p) {
    require_matching(rho, p);
    const ComplexMatrix &f = p.frame();
    double inside = (f.adjoint() * rho.matrix() * f).trace().real();
    return std::clamp(1.0 - inside, 0.0, 1.0);
}

Projection support(const ComplexMatrix &psd) {
    size_t n = qubits_for_dimension(psd.rows());
    if (psd.cols() != psd.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "support needs a square matrix");
    }
    EigenDecomposition eig = hermitian_eig(psd);
    if (eig.values.empty() || eig.values.front() <= 0) {
        if (!eig.values.empty() && eig.values.back() < -1e-9) {
            throw Error(ErrorCode::NotPSD, "operator has a negative eigenvalue");
        }
        return Projection::zero(n);
    }
    double top = eig.values.front();
    if (eig.values.back() < -1e-9 * std::max(1.0, top)) {
        throw Error(ErrorCode::NotPSD, "operator has a negative eigenvalue");
    }
    Eigen::Index count = 0;
    while (count < static_cast<Eigen::Index>(eig.values.size()) &&
           eig.values[static_cast<size_t>(count)] > kRankTolerance * top) {
        count++;
    }
    return Projection(eig.vectors.leftCols(count), n);
}

Projection support(const DensityOperator &rho) {
    return support(rho.matrix());
}

Projection local_projection(const Projection &p, std::span<const size_t> keep) {
    if (keep.empty()) {
        throw Error(ErrorCode::EmptyKeepSet, "local projection needs at least one qubit");
    }
    for (size_t q : keep) {
        if (q >= p.ambient_qubits()) {
            throw Error(ErrorCode::IndexOutOfRange, "kept qubit " + std::to_string(q) + " out of range");
        }
    }
    return support(partial_trace(p.as_matrix(), p.ambient_qubits(), keep));
}

bool same_subspace(const Projection &a, const Projection &b, double tol) {
    if (a.ambient_qubits() != b.ambient_qubits() || a.rank() != b.rank()) {
        return false;
    }
    ComplexMatrix pa = a.as_matrix();
    return (pa * b.as_matrix() - pa).norm() <= tol;
}

}  // namespace qassert
