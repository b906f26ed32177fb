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

#include "qassert/gates.h"

#include <cmath>
#include <numbers>

#include "qassert/error.h"

namespace qassert {

namespace {

ComplexMatrix permutation(size_t qubits, size_t (*map)(size_t)) {
    size_t d = size_t{1} << qubits;
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (size_t i = 0; i < d; i++) {
        m(static_cast<Eigen::Index>(map(i)), static_cast<Eigen::Index>(i)) = 1;
    }
    return m;
}

size_t cnot_map(size_t i) {
    return (i & 2) ? i ^ 1 : i;
}

size_t swap_map(size_t i) {
    return ((i & 1) << 1) | ((i >> 1) & 1);
}

size_t toffoli_map(size_t i) {
    return ((i & 6) == 6) ? i ^ 1 : i;
}

size_t fredkin_map(size_t i) {
    if (!(i & 4)) {
        return i;
    }
    return 4 | swap_map(i & 3);
}

}  // namespace

bool is_builtin_gate(const std::string &name) {
    return name == "H" || name == "X" || name == "CNOT" || name == "SWAP" || name == "TOFFOLI" ||
           name == "FREDKIN" || name == "QFT" || name == "IQFT";
}

std::optional<size_t> builtin_arity(const std::string &name) {
    if (name == "H" || name == "X") {
        return 1;
    }
    if (name == "CNOT" || name == "SWAP") {
        return 2;
    }
    if (name == "TOFFOLI" || name == "FREDKIN") {
        return 3;
    }
    return std::nullopt;
}

ComplexMatrix qft_matrix(size_t qubits, bool inverse) {
    const size_t t = size_t{1} << qubits;
    const double sign = inverse ? -1.0 : 1.0;
    const double scale = 1.0 / std::sqrt(static_cast<double>(t));
    ComplexMatrix m(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(t));
    for (size_t row = 0; row < t; row++) {
        for (size_t col = 0; col < t; col++) {
            // Reduce the exponent first so large products stay exact.
            double angle = sign * 2 * std::numbers::pi * static_cast<double>((row * col) % t) / static_cast<double>(t);
            m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = std::polar(scale, angle);
        }
    }
    return m;
}

ComplexMatrix gate_matrix(const Program &program, const std::string &name, size_t arity) {
    auto fixed = builtin_arity(name);
    if (is_builtin_gate(name)) {
        if (fixed && *fixed != arity) {
            throw Error(
                ErrorCode::SyntaxError,
                "gate " + name + " takes " + std::to_string(*fixed) + " qubits, got " + std::to_string(arity));
        }
        if (arity == 0) {
            throw Error(ErrorCode::SyntaxError, "gate " + name + " needs at least one qubit");
        }
        const double h = 1.0 / std::sqrt(2.0);
        ComplexMatrix m(2, 2);
        if (name == "H") {
            m << h, h, h, -h;
            return m;
        }
        if (name == "X") {
            m << 0, 1, 1, 0;
            return m;
        }
        if (name == "CNOT") {
            return permutation(2, cnot_map);
        }
        if (name == "SWAP") {
            return permutation(2, swap_map);
        }
        if (name == "TOFFOLI") {
            return permutation(3, toffoli_map);
        }
        if (name == "FREDKIN") {
            return permutation(3, fredkin_map);
        }
        return qft_matrix(arity, name == "IQFT");
    }
    auto it = program.gate_definitions.find(name);
    if (it == program.gate_definitions.end()) {
        throw Error(ErrorCode::UnknownGate, "unknown gate " + name);
    }
    if (it->second.rows() != (Eigen::Index{1} << arity)) {
        throw Error(
            ErrorCode::SyntaxError, "gate " + name + " acts on " + std::to_string(arity) + " qubits in a mismatched way");
    }
    return it->second;
}

}  // namespace qassert
