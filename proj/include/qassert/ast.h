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

#ifndef QASSERT_AST_H
#define QASSERT_AST_H

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qassert/numerics.h"
#include "qassert/projections.h"

namespace qassert {

struct SourceLocation {
    size_t line = 0;
    size_t column = 0;
};

/// coefficient * |label>, label over {0, 1, +, -}.
struct KetTerm {
    Complex coefficient{1, 0};
    std::string label;
};
using KetSum = std::vector<KetTerm>;

struct ProjExpr {
    enum class Kind { Span, Identity, Complement, Meet, Join, Tensor };
    Kind kind = Kind::Span;
    /// Span: one vector per entry.
    std::vector<KetSum> kets;
    /// Identity: number of qubits.
    size_t width = 0;
    std::vector<ProjExpr> operands;
};

bool operator==(const ProjExpr &a, const ProjExpr &b);
bool operator==(const KetTerm &a, const KetTerm &b);

/// Number of qubits the expression acts on; throws BadProjectionExpr on
/// inconsistent operand widths.
size_t expr_width(const ProjExpr &expr);
Projection evaluate(const ProjExpr &expr);
ComplexVector ket_vector(const KetSum &sum);

/// A span expression with one ket sum per frame column.
ProjExpr expr_from_projection(const Projection &p);

/// Wire index used by hand-lowered steps for the auxiliary qubit.
inline constexpr size_t kAuxWire = SIZE_MAX;

/// One step of a hand-written lowered circuit. Wires are program qubit indices
/// or kAuxWire.
struct HandStep {
    enum class Kind { Gate, Check, Abort };
    Kind kind = Kind::Gate;
    std::string gate;
    std::vector<size_t> wires;
    int expected = 0;
};

bool operator==(const HandStep &a, const HandStep &b);

struct Statement;
using Block = std::vector<Statement>;

struct SkipStmt {};

struct InitStmt {
    std::vector<size_t> qubits;
};

struct GateStmt {
    std::string name;
    std::vector<size_t> qubits;
};

/// Measures `qubits` jointly; runs then_body when the outcome bitstring is in
/// `outcomes`, else_body otherwise.
struct IfStmt {
    std::vector<size_t> qubits;
    std::vector<std::string> outcomes;
    Block then_body;
    bool has_else = false;
    Block else_body;
};

inline constexpr size_t kDefaultLoopCap = 1000;

/// Repeats body while the measured bitstring lies in `outcomes`.
struct WhileStmt {
    std::vector<size_t> qubits;
    std::vector<std::string> outcomes;
    std::optional<size_t> cap;
    Block body;

    size_t effective_cap() const {
        return cap.value_or(kDefaultLoopCap);
    }
};

struct AssertStmt {
    std::string site;
    std::vector<size_t> qubits;
    ProjExpr expr;
    /// Evaluated from expr; acts on `qubits` in order.
    std::shared_ptr<const Projection> projection;
    std::optional<std::vector<HandStep>> lowered;
};

bool operator==(const SkipStmt &a, const SkipStmt &b);
bool operator==(const InitStmt &a, const InitStmt &b);
bool operator==(const GateStmt &a, const GateStmt &b);
bool operator==(const IfStmt &a, const IfStmt &b);
bool operator==(const WhileStmt &a, const WhileStmt &b);
bool operator==(const AssertStmt &a, const AssertStmt &b);

struct Statement {
    std::variant<SkipStmt, InitStmt, GateStmt, IfStmt, WhileStmt, AssertStmt> node;
    SourceLocation location;
};

/// Compares nodes only; source locations are ignored.
bool operator==(const Statement &a, const Statement &b);

struct Program {
    size_t qubit_count = 0;
    std::map<std::string, ComplexMatrix> gate_definitions;
    Block body;
    /// Free-form annotations (e.g. injected mutations). Not part of equality.
    std::map<std::string, std::string> metadata;
};

bool operator==(const Program &a, const Program &b);

/// Assert statements in program order.
std::vector<const AssertStmt *> assert_sites(const Program &program);

/// Assert statements paired with their source locations, in program order.
std::vector<std::pair<const AssertStmt *, SourceLocation>> assert_sites_with_locations(const Program &program);

}  // namespace qassert

#endif
