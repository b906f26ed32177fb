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

#include "qassert/ast.h"

#include <cmath>

#include "qassert/error.h"

namespace qassert {

bool operator==(const KetTerm &a, const KetTerm &b) {
    return a.coefficient == b.coefficient && a.label == b.label;
}

bool operator==(const ProjExpr &a, const ProjExpr &b) {
    return a.kind == b.kind && a.kets == b.kets && a.width == b.width && a.operands == b.operands;
}

bool operator==(const HandStep &a, const HandStep &b) {
    return a.kind == b.kind && a.gate == b.gate && a.wires == b.wires && a.expected == b.expected;
}

bool operator==(const SkipStmt &, const SkipStmt &) {
    return true;
}

bool operator==(const InitStmt &a, const InitStmt &b) {
    return a.qubits == b.qubits;
}

bool operator==(const GateStmt &a, const GateStmt &b) {
    return a.name == b.name && a.qubits == b.qubits;
}

bool operator==(const IfStmt &a, const IfStmt &b) {
    return a.qubits == b.qubits && a.outcomes == b.outcomes && a.then_body == b.then_body &&
           a.has_else == b.has_else && a.else_body == b.else_body;
}

bool operator==(const WhileStmt &a, const WhileStmt &b) {
    return a.qubits == b.qubits && a.outcomes == b.outcomes && a.cap == b.cap && a.body == b.body;
}

bool operator==(const AssertStmt &a, const AssertStmt &b) {
    return a.site == b.site && a.qubits == b.qubits && a.expr == b.expr && a.lowered == b.lowered;
}

bool operator==(const Statement &a, const Statement &b) {
    return a.node == b.node;
}

bool operator==(const Program &a, const Program &b) {
    if (a.qubit_count != b.qubit_count || a.body != b.body) {
        return false;
    }
    if (a.gate_definitions.size() != b.gate_definitions.size()) {
        return false;
    }
    for (auto ia = a.gate_definitions.begin(), ib = b.gate_definitions.begin(); ia != a.gate_definitions.end();
         ++ia, ++ib) {
        if (ia->first != ib->first || ia->second.rows() != ib->second.rows() || ia->second != ib->second) {
            return false;
        }
    }
    return true;
}

namespace {

ComplexVector single_qubit_ket(char c) {
    const double h = 1.0 / std::sqrt(2.0);
    ComplexVector v(2);
    switch (c) {
        case '0':
            v << 1, 0;
            break;
        case '1':
            v << 0, 1;
            break;
        case '+':
            v << h, h;
            break;
        case '-':
            v << h, -h;
            break;
        default:
            throw Error(ErrorCode::BadProjectionExpr, std::string("bad ket symbol '") + c + "'");
    }
    return v;
}

}  // namespace

ComplexVector ket_vector(const KetSum &sum) {
    if (sum.empty()) {
        throw Error(ErrorCode::BadProjectionExpr, "empty ket sum");
    }
    size_t width = sum.front().label.size();
    ComplexVector total = ComplexVector::Zero(Eigen::Index{1} << width);
    for (const auto &term : sum) {
        if (term.label.size() != width || width == 0) {
            throw Error(ErrorCode::BadProjectionExpr, "kets in one sum must have equal length");
        }
        ComplexVector v = ComplexVector::Ones(1);
        for (char c : term.label) {
            ComplexVector next = kron(v, single_qubit_ket(c));
            v = std::move(next);
        }
        total += term.coefficient * v;
    }
    return total;
}

size_t expr_width(const ProjExpr &expr) {
    switch (expr.kind) {
        case ProjExpr::Kind::Span: {
            if (expr.kets.empty() || expr.kets.front().empty()) {
                throw Error(ErrorCode::BadProjectionExpr, "span needs at least one ket");
            }
            size_t w = expr.kets.front().front().label.size();
            for (const auto &sum : expr.kets) {
                for (const auto &t : sum) {
                    if (t.label.size() != w) {
                        throw Error(ErrorCode::BadProjectionExpr, "kets in one span must have equal length");
                    }
                }
            }
            return w;
        }
        case ProjExpr::Kind::Identity:
            if (expr.width == 0) {
                throw Error(ErrorCode::BadProjectionExpr, "identity needs at least one qubit");
            }
            return expr.width;
        case ProjExpr::Kind::Complement:
            return expr_width(expr.operands.at(0));
        case ProjExpr::Kind::Meet:
        case ProjExpr::Kind::Join: {
            size_t a = expr_width(expr.operands.at(0));
            size_t b = expr_width(expr.operands.at(1));
            if (a != b) {
                throw Error(ErrorCode::BadProjectionExpr, "meet/join operands act on different qubit counts");
            }
            return a;
        }
        case ProjExpr::Kind::Tensor:
            return expr_width(expr.operands.at(0)) + expr_width(expr.operands.at(1));
    }
    throw Error(ErrorCode::BadProjectionExpr, "unknown expression kind");
}

Projection evaluate(const ProjExpr &expr) {
    switch (expr.kind) {
        case ProjExpr::Kind::Span: {
            size_t w = expr_width(expr);
            std::vector<ComplexVector> vectors;
            for (const auto &sum : expr.kets) {
                ComplexVector v = ket_vector(sum);
                if (v.norm() < 1e-12) {
                    throw Error(ErrorCode::BadProjectionExpr, "ket sum is the zero vector");
                }
                vectors.push_back(std::move(v));
            }
            return from_kets(vectors, w);
        }
        case ProjExpr::Kind::Identity:
            return Projection::identity(expr_width(expr));
        case ProjExpr::Kind::Complement:
            return complement(evaluate(expr.operands.at(0)));
        case ProjExpr::Kind::Meet:
            expr_width(expr);
            return meet(evaluate(expr.operands.at(0)), evaluate(expr.operands.at(1)));
        case ProjExpr::Kind::Join:
            expr_width(expr);
            return join(evaluate(expr.operands.at(0)), evaluate(expr.operands.at(1)));
        case ProjExpr::Kind::Tensor:
            return tensor(evaluate(expr.operands.at(0)), evaluate(expr.operands.at(1)));
    }
    throw Error(ErrorCode::BadProjectionExpr, "unknown expression kind");
}

ProjExpr expr_from_projection(const Projection &p) {
    const size_t n = p.ambient_qubits();
    if (p.rank() == 0) {
        ProjExpr id;
        id.kind = ProjExpr::Kind::Identity;
        id.width = n;
        ProjExpr out;
        out.kind = ProjExpr::Kind::Complement;
        out.operands.push_back(std::move(id));
        return out;
    }
    ProjExpr out;
    out.kind = ProjExpr::Kind::Span;
    for (Eigen::Index c = 0; c < p.frame().cols(); c++) {
        KetSum sum;
        for (Eigen::Index i = 0; i < p.frame().rows(); i++) {
            Complex v = p.frame()(i, c);
            if (v == Complex(0, 0)) {
                continue;
            }
            std::string label(n, '0');
            for (size_t b = 0; b < n; b++) {
                if ((static_cast<size_t>(i) >> (n - 1 - b)) & 1) {
                    label[b] = '1';
                }
            }
            sum.push_back(KetTerm{v, label});
        }
        out.kets.push_back(std::move(sum));
    }
    return out;
}

namespace {

void collect_sites(const Block &block, std::vector<std::pair<const AssertStmt *, SourceLocation>> &out) {
    for (const auto &stmt : block) {
        if (const auto *a = std::get_if<AssertStmt>(&stmt.node)) {
            out.emplace_back(a, stmt.location);
        } else if (const auto *i = std::get_if<IfStmt>(&stmt.node)) {
            collect_sites(i->then_body, out);
            collect_sites(i->else_body, out);
        } else if (const auto *w = std::get_if<WhileStmt>(&stmt.node)) {
            collect_sites(w->body, out);
        }
    }
}

}  // namespace

std::vector<std::pair<const AssertStmt *, SourceLocation>> assert_sites_with_locations(const Program &program) {
    std::vector<std::pair<const AssertStmt *, SourceLocation>> out;
    collect_sites(program.body, out);
    return out;
}

std::vector<const AssertStmt *> assert_sites(const Program &program) {
    std::vector<const AssertStmt *> out;
    for (const auto &[site, loc] : assert_sites_with_locations(program)) {
        out.push_back(site);
    }
    return out;
}

}  // namespace qassert
