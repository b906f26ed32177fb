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

#include "qassert/printer.h"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace qassert {

namespace {

std::string qubit_list(const std::vector<size_t> &qubits) {
    std::string out;
    for (size_t k = 0; k < qubits.size(); k++) {
        if (k) {
            out += ", ";
        }
        out += "q" + std::to_string(qubits[k]);
    }
    return out;
}

std::string bitset(const std::vector<std::string> &outcomes) {
    std::string out = "{";
    for (size_t k = 0; k < outcomes.size(); k++) {
        if (k) {
            out += ", ";
        }
        out += outcomes[k];
    }
    return out + "}";
}

std::string wire_name(size_t wire) {
    return wire == kAuxWire ? "aux" : "q" + std::to_string(wire);
}

int precedence(ProjExpr::Kind kind) {
    switch (kind) {
        case ProjExpr::Kind::Join:
            return 1;
        case ProjExpr::Kind::Meet:
            return 2;
        case ProjExpr::Kind::Tensor:
            return 3;
        default:
            return 4;
    }
}

std::string ket_sum(const KetSum &sum, int digits) {
    std::string out;
    for (size_t k = 0; k < sum.size(); k++) {
        const KetTerm &t = sum[k];
        bool real = t.coefficient.imag() == 0;
        bool negative = real && std::signbit(t.coefficient.real());
        double magnitude = std::abs(t.coefficient.real());
        if (k == 0) {
            if (negative) {
                out += "-";
            }
        } else {
            out += negative ? " - " : " + ";
        }
        if (!real) {
            out += "(" + format_complex(t.coefficient, digits) + ")*";
        } else if (magnitude != 1) {
            out += format_real(magnitude, digits) + "*";
        }
        out += "|" + t.label + ">";
    }
    return out;
}

std::string expr_text(const ProjExpr &e, int min_prec, int digits) {
    std::string body;
    int prec = precedence(e.kind);
    switch (e.kind) {
        case ProjExpr::Kind::Span: {
            body = "span{";
            for (size_t k = 0; k < e.kets.size(); k++) {
                if (k) {
                    body += ", ";
                }
                body += ket_sum(e.kets[k], digits);
            }
            body += "}";
            break;
        }
        case ProjExpr::Kind::Identity:
            body = "I[" + std::to_string(e.width) + "]";
            break;
        case ProjExpr::Kind::Complement:
            body = "~" + expr_text(e.operands.at(0), 4, digits);
            break;
        case ProjExpr::Kind::Meet:
        case ProjExpr::Kind::Join:
        case ProjExpr::Kind::Tensor: {
            const char *op = e.kind == ProjExpr::Kind::Meet ? " & " : e.kind == ProjExpr::Kind::Join ? " | " : " (x) ";
            body = expr_text(e.operands.at(0), prec, digits) + op + expr_text(e.operands.at(1), prec + 1, digits);
            break;
        }
    }
    if (prec < min_prec) {
        return "(" + body + ")";
    }
    return body;
}

void print_block(std::ostringstream &out, const Block &block, int depth, int digits);

void print_statement(std::ostringstream &out, const Statement &stmt, int depth, int digits) {
    std::string pad(static_cast<size_t>(depth) * 4, ' ');
    std::visit(
        [&](const auto &node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, SkipStmt>) {
                out << pad << "skip;\n";
            } else if constexpr (std::is_same_v<T, InitStmt>) {
                out << pad << "init " << qubit_list(node.qubits) << ";\n";
            } else if constexpr (std::is_same_v<T, GateStmt>) {
                out << pad << node.name << " " << qubit_list(node.qubits) << ";\n";
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                out << pad << "if measure(" << qubit_list(node.qubits) << ") in " << bitset(node.outcomes) << " {\n";
                print_block(out, node.then_body, depth + 1, digits);
                out << pad << "}";
                if (node.has_else) {
                    out << " else {\n";
                    print_block(out, node.else_body, depth + 1, digits);
                    out << pad << "}";
                }
                out << "\n";
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
                out << pad << "while measure(" << qubit_list(node.qubits) << ") in " << bitset(node.outcomes);
                if (node.cap) {
                    out << " cap " << *node.cap;
                }
                out << " {\n";
                print_block(out, node.body, depth + 1, digits);
                out << pad << "}\n";
            } else {
                out << pad << "assert " << node.site << ": " << format_expr(node.expr, digits) << " on "
                    << qubit_list(node.qubits);
                if (!node.lowered) {
                    out << ";\n";
                    return;
                }
                out << " lowered {\n";
                std::string inner(static_cast<size_t>(depth + 1) * 4, ' ');
                for (const auto &step : *node.lowered) {
                    out << inner;
                    switch (step.kind) {
                        case HandStep::Kind::Check:
                            out << "check " << wire_name(step.wires.at(0));
                            if (step.expected) {
                                out << " = 1";
                            }
                            break;
                        case HandStep::Kind::Abort:
                            out << "abort";
                            break;
                        case HandStep::Kind::Gate:
                            out << step.gate;
                            for (size_t k = 0; k < step.wires.size(); k++) {
                                out << (k ? ", " : " ") << wire_name(step.wires[k]);
                            }
                            break;
                    }
                    out << ";\n";
                }
                out << pad << "}\n";
            }
        },
        stmt.node);
}

void print_block(std::ostringstream &out, const Block &block, int depth, int digits) {
    for (const auto &stmt : block) {
        print_statement(out, stmt, depth, digits);
    }
}

}  // namespace

std::string format_real(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
    return buf;
}

std::string format_complex(Complex value, int digits) {
    double re = value.real();
    double im = value.imag();
    if (im == 0) {
        return format_real(re, digits);
    }
    if (re == 0) {
        return format_real(im, digits) + "i";
    }
    std::string out = format_real(re, digits);
    if (std::signbit(im)) {
        out += "-" + format_real(-im, digits) + "i";
    } else {
        out += "+" + format_real(im, digits) + "i";
    }
    return out;
}

std::string format_expr(const ProjExpr &expr, int digits) {
    return expr_text(expr, 0, digits);
}

std::string print_program(const Program &program, int digits) {
    std::ostringstream out;
    for (const auto &[key, value] : program.metadata) {
        out << "# " << key << ": " << value << "\n";
    }
    out << "qubits " << program.qubit_count << ";\n";
    for (const auto &[name, m] : program.gate_definitions) {
        out << "defgate " << name << " = [";
        for (Eigen::Index r = 0; r < m.rows(); r++) {
            out << (r ? ",\n    [" : "\n    [");
            for (Eigen::Index c = 0; c < m.cols(); c++) {
                out << (c ? ", " : "") << format_complex(m(r, c), digits);
            }
            out << "]";
        }
        out << "];\n";
    }
    print_block(out, program.body, 0, digits);
    return out.str();
}

}  // namespace qassert
