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

#ifndef QASSERT_CASES_H
#define QASSERT_CASES_H

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qassert/ast.h"
#include "qassert/numerics.h"

namespace qassert {

/// Order finding for N = 15, a = 11 on five qubits, with assertions A0-A3 and
/// their hand-written check circuits.
std::string shor_source();
Program build_shor();

/// The linear system used by the HHL case study.
struct HhlData {
    /// As printed, rounded to three decimals.
    ComplexMatrix a_printed;
    /// Same eigenvectors with eigenvalues rounded to integers.
    ComplexMatrix a_snapped;
    /// Eigenvalues of a_printed, descending.
    std::vector<double> eigenvalues;
    /// Normalized right-hand side.
    ComplexVector b;
    /// normalize(a_snapped^-1 b); encoded by the program's assertions.
    ComplexVector x;
    /// normalize(a_printed^-1 b).
    ComplexVector x_printed;
};

/// Throws EigenvalueMismatch if the spectrum is more than 0.02 away from
/// {1, 1, 3, 3}.
HhlData hhl_data();

/// Registers: p = q0,q1 (clock), q = q2,q3 (system), r = q4 (ancilla).
/// Gate matrices are printed to 12 significant digits.
std::string hhl_source();
Program build_hhl();

struct BugSpec {
    enum class Kind { DropGate, ReplaceGate, InsertGate, SwapOperands };
    Kind kind = Kind::DropGate;
    /// Statement indices from the program body down. Entering an if takes an
    /// extra element: 0 for the then branch, 1 for the else branch.
    std::vector<size_t> target;
    /// ReplaceGate and InsertGate: the new gate name.
    std::string gate;
    /// InsertGate: its qubits. ReplaceGate: new qubits if given.
    std::optional<std::vector<size_t>> qubits;
};

/// Returns a mutated copy; the gate is inserted after the target. The
/// mutation is recorded in the copy's metadata under "bug". Throws BadTarget
/// when the path does not end at a gate statement.
Program inject_bug(const Program &program, const BugSpec &bug);

struct BugExample {
    std::string name;
    BugSpec bug;
    /// The first assertion after the mutation.
    std::string site;
};

/// Drop the first H, retarget CNOT(q2,q4) to q3, insert X q4 before A2.
std::vector<BugExample> shor_bug_examples();

}  // namespace qassert

#endif
