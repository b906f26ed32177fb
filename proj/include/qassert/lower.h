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

#ifndef QASSERT_LOWER_H
#define QASSERT_LOWER_H

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qassert/ast.h"
#include "qassert/numerics.h"
#include "qassert/projections.h"

namespace qassert {

/// A unitary that rotates the predicate onto "leading qubits read 0".
struct IcbForm {
    ComplexMatrix unitary;
    std::vector<size_t> measured_qubits;
    /// Always zero; kept explicit for readers of the form.
    std::vector<int> expected_bits;
};

/// Requires rank 2^m. The measured qubits are the first n - m.
IcbForm icb(const Projection &p);

/// Two projections of rank 2^(n-1) whose meet is p. Requires
/// 0 < rank <= 2^(n-1).
std::pair<Projection, Projection> split(const Projection &p);

/// |0><0| (x) p with the new qubit at index 0. Requires rank > 2^(n-1).
Projection aux_lift(const Projection &p);

/// Steps act on local wires: wire 0 is the auxiliary qubit when aux_qubits is
/// 1, followed by the assertion's qubits in order.
struct LoweredStep {
    enum class Kind { Unitary, Gate, Check, Abort };
    Kind kind = Kind::Unitary;
    /// Unitary: a label such as "U1"; Gate: the gate name.
    std::string label;
    ComplexMatrix matrix;
    std::vector<size_t> wires;
    int expected = 0;
};

struct LoweredAssertion {
    std::string site;
    size_t aux_qubits = 0;
    size_t site_qubits = 0;
    std::vector<LoweredStep> steps;

    size_t wire_count() const {
        return aux_qubits + site_qubits;
    }
    /// The bottom predicate: every execution fails.
    bool always_aborts() const;
};

/// Compiles a predicate on k qubits into checks on single wires.
LoweredAssertion lower_projection(const std::string &site, const Projection &p);

/// lower_projection for an assert statement of a program with
/// `ambient_qubits` qubits.
LoweredAssertion lower_assertion(const AssertStmt &site, size_t ambient_qubits);

/// The statement's hand-written circuit on local wires. Requires
/// site.lowered.
LoweredAssertion hand_lowering(const AssertStmt &site, const Program &program);

/// Site-local positions the circuit touches, sorted.
std::vector<size_t> touched_positions(const LoweredAssertion &lowered);

/// The operator applied to the site qubits on the all-checks-pass branch, with
/// the auxiliary qubit entering and leaving in |0>.
ComplexMatrix pass_operator(const LoweredAssertion &lowered);

/// The predicate a hand circuit is held to: the local projection of the
/// site's predicate onto the qubits it touches, embedded back on all site
/// qubits (the full predicate when it touches all of them).
Projection hand_target(const AssertStmt &site, const LoweredAssertion &hand);

/// Throws DecompositionMismatch unless the hand circuit passes exactly the
/// local projection of the predicate onto the qubits it touches (the full
/// predicate when it touches all of them).
void verify_hand_lowering(const AssertStmt &site, const LoweredAssertion &hand);

struct ResourceCount {
    size_t h_gates = 0;
    size_t cnot_gates = 0;
    size_t other_1q = 0;
    size_t other_2q = 0;
    size_t other_3q = 0;
    size_t generic_unitaries = 0;
    size_t measurements = 0;
    size_t aux_qubits = 0;

    size_t other_gates() const {
        return other_1q + other_2q + other_3q;
    }
    bool operator==(const ResourceCount &) const = default;
};

/// Counts gates, checks and auxiliary qubits. When a decomposition is given
/// its pass operator must match the lowered form within 1e-8 (else
/// DecompositionMismatch) and the decomposition is what gets counted.
ResourceCount count_resources(
    const LoweredAssertion &lowered, const std::optional<LoweredAssertion> &decomposition = std::nullopt);

}  // namespace qassert

#endif
