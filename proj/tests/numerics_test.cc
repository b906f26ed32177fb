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

#include <gtest/gtest.h>

#include "qassert/error.h"
#include "test_util.h"

using namespace qassert;
using namespace qassert::testing;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

ComplexMatrix pauli_x() {
    return matrix2(0, 1, 1, 0);
}

ComplexMatrix hadamard() {
    return matrix2(kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2);
}

ComplexMatrix proj0() {
    return matrix2(1, 0, 0, 0);
}

ComplexMatrix proj1() {
    return matrix2(0, 0, 0, 1);
}

}  // namespace

TEST(kron, block_structure) {
    ComplexMatrix r = kron(proj0(), ComplexMatrix::Identity(2, 2));
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(0, 0) = 1;
    expected(1, 1) = 1;
    ASSERT_EQ(r, expected);
}

TEST(kron, builds_cnot) {
    ComplexMatrix r = kron(proj0(), ComplexMatrix::Identity(2, 2)) + kron(proj1(), pauli_x());
    ComplexMatrix cnot = ComplexMatrix::Zero(4, 4);
    cnot(0, 0) = 1;
    cnot(1, 1) = 1;
    cnot(2, 3) = 1;
    cnot(3, 2) = 1;
    ASSERT_EQ(r, cnot);
}

TEST(kron, identity_case) {
    ASSERT_EQ(kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)), ComplexMatrix::Identity(4, 4));
}

TEST(kron, entry_formula_and_associativity) {
    // Small integer entries keep every product exact, so associativity can be
    // checked bit for bit.
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> small(-4, 4);
    auto draw = [&](Eigen::Index r, Eigen::Index c) {
        ComplexMatrix m(r, c);
        for (Eigen::Index i = 0; i < r; i++) {
            for (Eigen::Index j = 0; j < c; j++) {
                m(i, j) = Complex(small(rng), small(rng));
            }
        }
        return m;
    };
    ComplexMatrix a = draw(2, 3);
    ComplexMatrix b = draw(3, 2);
    ComplexMatrix c = draw(2, 2);
    ComplexMatrix ab = kron(a, b);
    ASSERT_EQ(ab.rows(), 6);
    ASSERT_EQ(ab.cols(), 6);
    for (int i1 = 0; i1 < 2; i1++) {
        for (int j1 = 0; j1 < 3; j1++) {
            for (int i2 = 0; i2 < 3; i2++) {
                for (int j2 = 0; j2 < 2; j2++) {
                    ASSERT_EQ(ab(i1 * 3 + i2, j1 * 2 + j2), a(i1, j1) * b(i2, j2));
                }
            }
        }
    }
    ASSERT_EQ(kron(kron(a, b), c), kron(a, kron(b, c)));
}

TEST(hermitian_eig, pauli_x) {
    EigenDecomposition e = hermitian_eig(pauli_x());
    ASSERT_NEAR(e.values[0], 1, 1e-12);
    ASSERT_NEAR(e.values[1], -1, 1e-12);
}

TEST(hermitian_eig, plus_projector) {
    EigenDecomposition e = hermitian_eig(matrix2(0.5, 0.5, 0.5, 0.5));
    ASSERT_NEAR(e.values[0], 1, 1e-12);
    ASSERT_NEAR(e.values[1], 0, 1e-12);
}

TEST(hermitian_eig, hadamard) {
    EigenDecomposition e = hermitian_eig(hadamard());
    ASSERT_NEAR(e.values[0], 1, 1e-12);
    ASSERT_NEAR(e.values[1], -1, 1e-12);
}

TEST(hermitian_eig, rejects_non_hermitian) {
    try {
        hermitian_eig(matrix2(0, 1, 0, 0));
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.code(), ErrorCode::NotHermitian);
    }
}

TEST(hermitian_eig, random_reconstruction) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; trial++) {
        Eigen::Index d = 1 + trial % 16;
        ComplexMatrix a = random_hermitian(rng, d);
        EigenDecomposition e = hermitian_eig(a);
        Eigen::VectorXd lam = Eigen::Map<Eigen::VectorXd>(e.values.data(), d);
        ComplexMatrix rebuilt = e.vectors * lam.asDiagonal() * e.vectors.adjoint();
        ASSERT_LE((rebuilt - a).norm(), 1e-8 * a.norm());
        ASSERT_LE((e.vectors.adjoint() * e.vectors - ComplexMatrix::Identity(d, d)).norm(), 1e-9);
        for (Eigen::Index k = 1; k < d; k++) {
            ASSERT_GE(e.values[k - 1], e.values[k]);
        }
    }
}

TEST(hermitian_eig, degenerate_space_is_canonical) {
    // A rotated copy of diag(1,1,0,0) must produce the same eigenvectors as
    // any other rotation within the degenerate block.
    std::mt19937_64 rng(2);
    ComplexMatrix u = random_unitary(rng, 4);
    ComplexMatrix lam = ComplexMatrix::Zero(4, 4);
    lam(0, 0) = 1;
    lam(1, 1) = 1;
    ComplexMatrix a = u * lam * u.adjoint();
    a = (a + a.adjoint()) * 0.5;
    EigenDecomposition e1 = hermitian_eig(a);
    ComplexMatrix mix = random_unitary(rng, 2);
    ComplexMatrix u2 = u;
    u2.leftCols(2) = u.leftCols(2) * mix;
    ComplexMatrix a2 = u2 * lam * u2.adjoint();
    a2 = (a2 + a2.adjoint()) * 0.5;
    EigenDecomposition e2 = hermitian_eig(a2);
    ASSERT_LE((e1.vectors.leftCols(2) - e2.vectors.leftCols(2)).norm(), 1e-8);
    // First nonzero component real-positive.
    for (int c = 0; c < 4; c++) {
        for (int i = 0; i < 4; i++) {
            if (std::abs(e1.vectors(i, c)) > 1e-9) {
                ASSERT_NEAR(e1.vectors(i, c).imag(), 0, 1e-12);
                ASSERT_GT(e1.vectors(i, c).real(), 0);
                break;
            }
        }
    }
}

TEST(orthonormal_columns, duplicate_removal) {
    ComplexMatrix m(2, 2);
    m << 1, 1, 0, 0;
    ComplexMatrix b = orthonormal_columns(m);
    ASSERT_EQ(b.cols(), 1);
    ASSERT_NEAR(std::abs(b(0, 0)), 1, 1e-12);
}

TEST(orthonormal_columns, full_span) {
    ComplexMatrix m(2, 2);
    m << 1, kInvSqrt2, 0, kInvSqrt2;
    ComplexMatrix b = orthonormal_columns(m);
    ASSERT_EQ(b.cols(), 2);
    ASSERT_LE((b.adjoint() * b - ComplexMatrix::Identity(2, 2)).norm(), 1e-9);
}

TEST(orthonormal_columns, bell_is_kept) {
    ComplexMatrix m = ComplexMatrix::Zero(4, 1);
    m(0, 0) = kInvSqrt2;
    m(3, 0) = kInvSqrt2;
    ComplexMatrix b = orthonormal_columns(m);
    ASSERT_EQ(b.cols(), 1);
    ASSERT_LE((b - m).norm(), 1e-12);
}

TEST(orthonormal_columns, zero_matrix) {
    ASSERT_EQ(orthonormal_columns(ComplexMatrix::Zero(4, 3)).cols(), 0);
}

TEST(orthonormal_columns, rank_of_random_product) {
    std::mt19937_64 rng(9);
    for (Eigen::Index r = 1; r <= 5; r++) {
        ComplexMatrix m = random_gaussian(rng, 8, r) * random_gaussian(rng, r, 7);
        ComplexMatrix b = orthonormal_columns(m);
        ASSERT_EQ(b.cols(), r);
        ASSERT_LE((b.adjoint() * b - ComplexMatrix::Identity(r, r)).norm(), 1e-9);
        // range(m) inside range(b).
        ASSERT_LE((m - b * (b.adjoint() * m)).norm(), 1e-8 * m.norm());
    }
}

TEST(orthonormal_complement, single_qubit) {
    ComplexMatrix b = ComplexMatrix::Zero(2, 1);
    b(0, 0) = 1;
    ComplexMatrix c = orthonormal_complement(b);
    ASSERT_EQ(c.cols(), 1);
    ASSERT_NEAR(std::abs(c(1, 0)), 1, 1e-12);
}

TEST(orthonormal_complement, full_space) {
    ASSERT_EQ(orthonormal_complement(ComplexMatrix::Identity(2, 2)).cols(), 0);
}

TEST(orthonormal_complement, bell) {
    ComplexMatrix b = ComplexMatrix::Zero(4, 1);
    b(0, 0) = kInvSqrt2;
    b(3, 0) = kInvSqrt2;
    ComplexMatrix c = orthonormal_complement(b);
    ASSERT_EQ(c.cols(), 3);
    ASSERT_LE((c.adjoint() * b).norm(), 1e-9);
    ASSERT_LE((c.adjoint() * c - ComplexMatrix::Identity(3, 3)).norm(), 1e-9);
}

TEST(orthonormal_complement, rejects_non_orthonormal) {
    ComplexMatrix b(2, 1);
    b << 1, 1;
    try {
        orthonormal_complement(b);
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.code(), ErrorCode::NotOrthonormal);
    }
}

TEST(orthonormal_complement, rank_arithmetic_random) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; trial++) {
        Eigen::Index d = 1 << (1 + trial % 4);
        Eigen::Index r = trial % (d + 1);
        ComplexMatrix b = random_unitary(rng, d).leftCols(r);
        ComplexMatrix c = orthonormal_complement(b);
        ASSERT_EQ(b.cols() + c.cols(), d);
        ASSERT_LE((c.adjoint() * b).norm(), 1e-9);
    }
}

TEST(partial_trace, product_state) {
    ComplexMatrix a = ComplexMatrix::Zero(4, 4);
    a(0, 0) = 1;
    std::vector<size_t> keep{0};
    ASSERT_LE((partial_trace(a, 2, keep) - proj0()).norm(), 1e-12);
}

TEST(partial_trace, bell_is_maximally_mixed) {
    // Direct 4x4 computation: entries (00,00),(00,11),(11,00),(11,11) are 1/2.
    ComplexMatrix bell = ComplexMatrix::Zero(4, 4);
    bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
    std::vector<size_t> keep{0};
    ASSERT_LE((partial_trace(bell, 2, keep) - ComplexMatrix::Identity(2, 2) * 0.5).norm(), 1e-12);
}

TEST(partial_trace, keeps_left_factor_scaled_by_trace) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; trial++) {
        ComplexMatrix a = random_gaussian(rng, 4, 4);
        ComplexMatrix b = random_gaussian(rng, 2, 2);
        std::vector<size_t> keep{0, 1};
        ASSERT_LE((partial_trace(kron(a, b), 3, keep) - a * b.trace()).norm(), 1e-9);
    }
}

TEST(partial_trace, keep_order_permutes) {
    std::mt19937_64 rng(6);
    ComplexMatrix a = random_gaussian(rng, 2, 2);
    ComplexMatrix b = random_gaussian(rng, 2, 2);
    std::vector<size_t> swapped{1, 0};
    ASSERT_LE((partial_trace(kron(a, b), 2, swapped) - kron(b, a)).norm(), 1e-12);
}

TEST(partial_trace, preserves_trace) {
    std::mt19937_64 rng(7);
    ComplexMatrix a = random_gaussian(rng, 16, 16);
    std::vector<size_t> keep{2, 0};
    ASSERT_NEAR(std::abs(partial_trace(a, 4, keep).trace() - a.trace()), 0, 1e-9);
}

TEST(partial_trace, dimension_mismatch) {
    std::vector<size_t> keep{0};
    try {
        partial_trace(ComplexMatrix::Identity(3, 3), 2, keep);
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
}

TEST(psd_sqrt, diagonal) {
    ComplexMatrix r = psd_sqrt(matrix2(4, 0, 0, 1));
    ASSERT_LE((r - matrix2(2, 0, 0, 1)).norm(), 1e-12);
}

TEST(psd_sqrt, projector_is_fixed) {
    ComplexMatrix p = matrix2(0.5, 0.5, 0.5, 0.5);
    ASSERT_LE((psd_sqrt(p) - p).norm(), 1e-12);
}

TEST(psd_sqrt, mixed_diagonal) {
    ComplexMatrix r = psd_sqrt(matrix2(0.25, 0, 0, 0.75));
    ASSERT_NEAR(r(0, 0).real(), 0.5, 1e-12);
    ASSERT_NEAR(r(1, 1).real(), 0.8660254037844386, 1e-12);
}

TEST(psd_sqrt, random_square_roundtrip) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; trial++) {
        ComplexMatrix g = random_gaussian(rng, 8, 3);
        ComplexMatrix a = g * g.adjoint();
        ComplexMatrix r = psd_sqrt(a);
        ASSERT_LE((r * r - a).norm(), 1e-8);
    }
}

TEST(psd_sqrt, rejects_negative) {
    try {
        psd_sqrt(matrix2(1, 0, 0, -0.5));
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.code(), ErrorCode::NotPSD);
    }
}

TEST(embed_operator, matches_permuted_kron) {
    // CNOT with control q2 and target q0 of three qubits, checked on basis states.
    ComplexMatrix cnot = kron(proj0(), ComplexMatrix::Identity(2, 2)) + kron(proj1(), pauli_x());
    std::vector<size_t> targets{2, 0};
    ComplexMatrix full = embed_operator(cnot, targets, 3);
    for (size_t i = 0; i < 8; i++) {
        size_t q0 = (i >> 2) & 1;
        size_t q2 = i & 1;
        size_t j = q2 ? (i ^ 4) : i;
        (void)q0;
        ASSERT_EQ(full(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)), Complex(1, 0));
    }
}

TEST(apply_to_qubits, agrees_with_embedded_operator) {
    std::mt19937_64 rng(10);
    ComplexMatrix u = random_unitary(rng, 4);
    std::vector<size_t> targets{3, 1};
    ComplexVector v = random_gaussian(rng, 16, 1).col(0);
    ComplexVector w = v;
    apply_to_qubits(w, u, targets, 4);
    ASSERT_LE((w - embed_operator(u, targets, 4) * v).norm(), 1e-12);
}
