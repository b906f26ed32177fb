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

#include "qassert/numerics.h"

#include <algorithm>
#include <cmath>

#include "qassert/error.h"

namespace qassert {

namespace {

void require_square(const ComplexMatrix &a, const char *what) {
    if (a.rows() != a.cols()) {
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + " needs a square matrix");
    }
}

// Modified Gram-Schmidt step, run twice for stability. Returns the residual.
ComplexVector orthogonalize(const ComplexVector &v, const std::vector<ComplexVector> &basis) {
    ComplexVector r = v;
    for (int pass = 0; pass < 2; pass++) {
        for (const auto &b : basis) {
            r -= b * b.dot(r);
        }
    }
    return r;
}

void fix_phase(ComplexVector &v) {
    for (Eigen::Index i = 0; i < v.size(); i++) {
        double mag = std::abs(v[i]);
        if (mag > kRankTolerance) {
            v *= std::conj(v[i]) / mag;
            v[i] = Complex(mag, 0);
            return;
        }
    }
}

ComplexMatrix to_matrix(const std::vector<ComplexVector> &cols, Eigen::Index rows) {
    ComplexMatrix out(rows, static_cast<Eigen::Index>(cols.size()));
    for (size_t k = 0; k < cols.size(); k++) {
        out.col(static_cast<Eigen::Index>(k)) = cols[k];
    }
    return out;
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

double hermitian_deviation(const ComplexMatrix &a) {
    require_square(a, "hermitian_deviation");
    if (a.size() == 0) {
        return 0;
    }
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

EigenDecomposition hermitian_eig(const ComplexMatrix &a) {
    require_square(a, "hermitian_eig");
    if (hermitian_deviation(a) > 1e-9) {
        throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian within 1e-9");
    }
    const Eigen::Index d = a.rows();
    EigenDecomposition out;
    out.vectors = ComplexMatrix(d, d);
    if (d == 0) {
        return out;
    }
    ComplexMatrix sym = (a + a.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    // Solver order is ascending.
    std::vector<double> values(static_cast<size_t>(d));
    ComplexMatrix raw(d, d);
    for (Eigen::Index k = 0; k < d; k++) {
        values[static_cast<size_t>(k)] = solver.eigenvalues()[d - 1 - k];
        raw.col(k) = solver.eigenvectors().col(d - 1 - k);
    }
    double scale = std::max(1.0, std::max(std::abs(values.front()), std::abs(values.back())));
    double tie = 1e-8 * scale;

    Eigen::Index start = 0;
    while (start < d) {
        Eigen::Index end = start + 1;
        while (end < d && values[static_cast<size_t>(start)] - values[static_cast<size_t>(end)] <= tie) {
            end++;
        }
        Eigen::Index width = end - start;
        if (width == 1) {
            ComplexVector v = raw.col(start);
            fix_phase(v);
            out.vectors.col(start) = v;
        } else {
            ComplexMatrix space = raw.middleCols(start, width);
            std::vector<ComplexVector> picked;
            for (Eigen::Index i = 0; i < d && static_cast<Eigen::Index>(picked.size()) < width; i++) {
                ComplexVector v = space * space.row(i).adjoint();
                ComplexVector r = orthogonalize(v, picked);
                double norm = r.norm();
                if (norm > 1e-6) {
                    r /= norm;
                    fix_phase(r);
                    picked.push_back(r);
                }
            }
            for (Eigen::Index k = 0; k < width; k++) {
                out.vectors.col(start + k) = picked[static_cast<size_t>(k)];
            }
        }
        start = end;
    }
    out.values = std::move(values);
    return out;
}

ComplexMatrix orthonormal_columns(const ComplexMatrix &m, double tol) {
    if (!(tol > 0)) {
        throw Error(ErrorCode::BadArgs, "orthonormal_columns needs tol > 0");
    }
    double largest = 0;
    for (Eigen::Index j = 0; j < m.cols(); j++) {
        largest = std::max(largest, m.col(j).norm());
    }
    std::vector<ComplexVector> basis;
    if (largest == 0) {
        return ComplexMatrix(m.rows(), 0);
    }
    double cutoff = tol * std::max(1.0, largest);
    for (Eigen::Index j = 0; j < m.cols() && static_cast<Eigen::Index>(basis.size()) < m.rows(); j++) {
        ComplexVector r = orthogonalize(m.col(j), basis);
        double norm = r.norm();
        if (norm > cutoff) {
            basis.push_back(r / norm);
        }
    }
    return to_matrix(basis, m.rows());
}

ComplexMatrix orthonormal_complement(const ComplexMatrix &b) {
    const Eigen::Index d = b.rows();
    if (b.cols() > 0) {
        ComplexMatrix gram = b.adjoint() * b;
        if ((gram - ComplexMatrix::Identity(b.cols(), b.cols())).cwiseAbs().maxCoeff() > 1e-9) {
            throw Error(ErrorCode::NotOrthonormal, "frame columns are not orthonormal");
        }
    }
    std::vector<ComplexVector> basis;
    for (Eigen::Index j = 0; j < b.cols(); j++) {
        basis.push_back(b.col(j));
    }
    std::vector<ComplexVector> found;
    const Eigen::Index want = d - b.cols();
    for (Eigen::Index i = 0; i < d && static_cast<Eigen::Index>(found.size()) < want; i++) {
        ComplexVector e = ComplexVector::Zero(d);
        e[i] = 1;
        ComplexVector r = orthogonalize(e, basis);
        double norm = r.norm();
        if (norm > kRankTolerance) {
            r /= norm;
            basis.push_back(r);
            found.push_back(r);
        }
    }
    return to_matrix(found, d);
}

size_t extract_bits(size_t index, std::span<const size_t> qubits, size_t total) {
    size_t out = 0;
    for (size_t q : qubits) {
        out = (out << 1) | ((index >> (total - 1 - q)) & 1);
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &a, size_t qubit_count, std::span<const size_t> keep) {
    const Eigen::Index d = Eigen::Index{1} << qubit_count;
    if (a.rows() != d || a.cols() != d) {
        throw Error(ErrorCode::DimensionMismatch, "operator size does not match qubit count");
    }
    std::vector<bool> kept(qubit_count, false);
    for (size_t q : keep) {
        if (q >= qubit_count) {
            throw Error(ErrorCode::DimensionMismatch, "kept qubit index out of range");
        }
        if (kept[q]) {
            throw Error(ErrorCode::DimensionMismatch, "kept qubit listed twice");
        }
        kept[q] = true;
    }
    std::vector<size_t> traced;
    for (size_t q = 0; q < qubit_count; q++) {
        if (!kept[q]) {
            traced.push_back(q);
        }
    }
    const Eigen::Index out_dim = Eigen::Index{1} << keep.size();
    ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
    std::vector<size_t> keep_index(static_cast<size_t>(d));
    std::vector<size_t> trace_index(static_cast<size_t>(d));
    for (size_t i = 0; i < static_cast<size_t>(d); i++) {
        keep_index[i] = extract_bits(i, keep, qubit_count);
        trace_index[i] = extract_bits(i, traced, qubit_count);
    }
    for (size_t i = 0; i < static_cast<size_t>(d); i++) {
        for (size_t j = 0; j < static_cast<size_t>(d); j++) {
            if (trace_index[i] == trace_index[j]) {
                out(static_cast<Eigen::Index>(keep_index[i]), static_cast<Eigen::Index>(keep_index[j])) +=
                    a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
        }
    }
    return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix &a) {
    EigenDecomposition eig = hermitian_eig(a);
    const Eigen::Index d = a.rows();
    Eigen::VectorXd roots(d);
    for (Eigen::Index k = 0; k < d; k++) {
        double v = eig.values[static_cast<size_t>(k)];
        if (v < -1e-9) {
            throw Error(ErrorCode::NotPSD, "eigenvalue below -1e-9");
        }
        roots[k] = std::sqrt(std::max(v, 0.0));
    }
    ComplexMatrix out = eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
    return (out + out.adjoint()) * 0.5;
}

ComplexMatrix embed_operator(const ComplexMatrix &op, std::span<const size_t> targets, size_t total) {
    const size_t k = targets.size();
    if (op.rows() != (Eigen::Index{1} << k) || op.cols() != op.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "operator size does not match target count");
    }
    std::vector<bool> used(total, false);
    for (size_t q : targets) {
        if (q >= total) {
            throw Error(ErrorCode::IndexOutOfRange, "target qubit " + std::to_string(q) + " out of range");
        }
        if (used[q]) {
            throw Error(ErrorCode::DuplicateIndex, "target qubit " + std::to_string(q) + " listed twice");
        }
        used[q] = true;
    }
    size_t target_mask = 0;
    for (size_t q : targets) {
        target_mask |= size_t{1} << (total - 1 - q);
    }
    const size_t d = size_t{1} << total;
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (size_t col = 0; col < d; col++) {
        size_t rest = col & ~target_mask;
        size_t sub_col = extract_bits(col, targets, total);
        for (size_t sub_row = 0; sub_row < (size_t{1} << k); sub_row++) {
            Complex v = op(static_cast<Eigen::Index>(sub_row), static_cast<Eigen::Index>(sub_col));
            if (v == Complex(0, 0)) {
                continue;
            }
            size_t row = rest;
            for (size_t t = 0; t < k; t++) {
                if ((sub_row >> (k - 1 - t)) & 1) {
                    row |= size_t{1} << (total - 1 - targets[t]);
                }
            }
            out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = v;
        }
    }
    return out;
}

void apply_to_qubits(ComplexVector &state, const ComplexMatrix &op, std::span<const size_t> targets, size_t total) {
    const size_t k = targets.size();
    const size_t d = size_t{1} << total;
    if (static_cast<size_t>(state.size()) != d) {
        throw Error(ErrorCode::DimensionMismatch, "state size does not match qubit count");
    }
    if (op.rows() != (Eigen::Index{1} << k) || op.cols() != op.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "operator size does not match target count");
    }
    const size_t sub = size_t{1} << k;
    std::vector<size_t> offsets(sub, 0);
    size_t target_mask = 0;
    for (size_t t = 0; t < k; t++) {
        if (targets[t] >= total) {
            throw Error(ErrorCode::IndexOutOfRange, "target qubit out of range");
        }
        target_mask |= size_t{1} << (total - 1 - targets[t]);
    }
    for (size_t s = 0; s < sub; s++) {
        for (size_t t = 0; t < k; t++) {
            if ((s >> (k - 1 - t)) & 1) {
                offsets[s] |= size_t{1} << (total - 1 - targets[t]);
            }
        }
    }
    ComplexVector gathered(static_cast<Eigen::Index>(sub));
    for (size_t base = 0; base < d; base++) {
        if (base & target_mask) {
            continue;
        }
        for (size_t s = 0; s < sub; s++) {
            gathered[static_cast<Eigen::Index>(s)] = state[static_cast<Eigen::Index>(base | offsets[s])];
        }
        ComplexVector result = op * gathered;
        for (size_t s = 0; s < sub; s++) {
            state[static_cast<Eigen::Index>(base | offsets[s])] = result[static_cast<Eigen::Index>(s)];
        }
    }
}

bool is_unitary(const ComplexMatrix &u, double tol) {
    if (u.rows() != u.cols()) {
        return false;
    }
    return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm() <= tol;
}

}  // namespace qassert
