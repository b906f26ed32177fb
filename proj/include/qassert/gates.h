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

#ifndef QASSERT_GATES_H
#define QASSERT_GATES_H

#include <cstddef>
#include <optional>
#include <string>

#include "qassert/ast.h"
#include "qassert/numerics.h"

namespace qassert {

/// Built-in gates: H X CNOT SWAP TOFFOLI FREDKIN (fixed arity) and QFT IQFT
/// (any arity). Returns nullopt for names that are not built in.
bool is_builtin_gate(const std::string &name);

/// Fixed arity of a built-in gate, or nullopt for QFT/IQFT.
std::optional<size_t> builtin_arity(const std::string &name);

/// |k> -> T^-1/2 sum_t exp(+-2 pi i t k / T) |t>, first qubit most significant.
ComplexMatrix qft_matrix(size_t qubits, bool inverse);

/// Matrix of a built-in or program-defined gate on `arity` qubits. Throws
/// UnknownGate for unknown names and SyntaxError on an arity mismatch.
ComplexMatrix gate_matrix(const Program &program, const std::string &name, size_t arity);

}  // namespace qassert

#endif
