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

#include "qassert/cases.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qassert/error.h"
#include "qassert/gates.h"
#include "qassert/parser.h"
#include "qassert/printer.h"

namespace qassert {

namespace {

constexpr int kCaseDigits = 12;

std::string qubit_list(std::initializer_list<size_t> qubits) {
    std::string out;
    for (size_t q : qubits) {
        out += (out.empty() ? "q" : ", q") + std::to_string(q);
    }
    return out;
}

std::string matrix_literal(const ComplexMatrix &m) {
    std::string out = "[";
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        out += i ? ",\n    [" : "\n    [";
        for (Eigen::Index j = 0; j < m.cols(); j++) {
            // Round-off below 1e-14 is printed as an exact zero.
            Complex v = m(i, j);
            v = Complex(std::abs(v.real()) < 1e-14 ? 0 : v.real(), std::abs(v.imag()) < 1e-14 ? 0 : v.imag());
            out += (j ? ", " : "") + format_complex(v, kCaseDigits);
        }
        out += "]";
    }
    return out + "\n]";
}

std::string defgate(const std::string &name, const ComplexMatrix &m) {
    return "defgate " + name + " = " + matrix_literal(m) + ";\n";
}

// Real amplitudes over two-qubit labels as a ket sum.
std::string ket_sum(const ComplexVector &v) {
    static const char *const labels[] = {"00", "01", "10", "11"};
    std::string out;
    for (Eigen::Index k = 0; k < v.size(); k++) {
        double c = v[k].real();
        if (out.empty()) {
            out += c < 0 ? "-" : "";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        out += format_real(std::abs(c), kCaseDigits) + "*|" + labels[k] + ">";
    }
    return out;
}

// Unitary whose first column is v.
ComplexMatrix completion(const ComplexVector &v) {
    ComplexMatrix u(v.size(), v.size());
    ComplexMatrix column = v;
    u << column, orthonormal_complement(column);
    return u;
}

ComplexMatrix ry(double theta) {
    ComplexMatrix r(2, 2);
    r << std::cos(theta / 2), -std::sin(theta / 2), std::sin(theta / 2), std::cos(theta / 2);
    return r;
}

}  // namespace

std::string shor_source() {
    const std::string all = qubit_list({0, 1, 2, 3, 4});
    std::ostringstream s;
    s << "# Order finding for N = 15, a = 11.\n"
      << "qubits 5;\n"
      << "while measure(q0, q1, q2) in {000, 100, 101, 110, 111} {\n"
      << "    init " << all << ";\n"
      << "    assert A0: span{|00000>} on " << all << " lowered {\n"
      << "        check q0; check q1; check q2; check q3; check q4;\n"
      << "    }\n"
      << "    H q0;\n    H q1;\n    H q2;\n"
      << "    assert A1: span{|+++>} (x) span{|00>} on " << all << " lowered {\n"
      << "        H q0; H q1; H q2;\n"
      << "        check q0; check q1; check q2;\n"
      << "        H q0; H q1; H q2;\n"
      << "    }\n"
      << "    CNOT q2, q3;\n    CNOT q2, q4;\n"
      << "    assert A2: span{|++>} (x) span{|000> + |111>} on " << all << " lowered {\n"
      << "        CNOT q2, q3; CNOT q2, q4; H q2; H q0; H q1;\n"
      << "        check q0; check q1; check q2; check q3; check q4;\n"
      << "        H q1; H q0; H q2; CNOT q2, q4; CNOT q2, q3;\n"
      << "    }\n"
      << "    IQFT q0, q1, q2;\n"
      << "    assert A3: span{|000> + |001>} (x) span{|00> + |11>} on " << all << " lowered {\n"
      << "        check q0; check q1; H q2; check q2; H q2;\n"
      << "    }\n"
      << "}\n";
    return s.str();
}

Program build_shor() {
    return parse_program(shor_source());
}

HhlData hhl_data() {
    HhlData d;
    d.a_printed.resize(4, 4);
    d.a_printed << 1.951, -0.863, 0.332, -0.377,  //
        -0.863, 2.239, -0.011, -0.444,            //
        0.332, -0.011, 1.301, -0.634,             //
        -0.377, -0.444, -0.634, 2.509;
    ComplexVector b(4);
    b << -0.486, -0.345, -0.494, -0.633;
    d.b = b / b.norm();

    EigenDecomposition eig = hermitian_eig(d.a_printed);
    const double expected[] = {3, 3, 1, 1};
    Eigen::VectorXd snapped(4);
    for (Eigen::Index k = 0; k < 4; k++) {
        double v = eig.values[k];
        d.eigenvalues.push_back(v);
        if (std::abs(v - expected[k]) > 0.02) {
            throw Error(ErrorCode::EigenvalueMismatch, "eigenvalue " + std::to_string(v) + " is not near 1 or 3");
        }
        snapped[k] = std::round(v);
    }
    d.a_snapped = eig.vectors * snapped.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    ComplexVector x = d.a_snapped.lu().solve(d.b);
    d.x = x / x.norm();
    ComplexVector xp = d.a_printed.lu().solve(d.b);
    d.x_printed = xp / xp.norm();
    return d;
}

std::string hhl_source() {
    HhlData d = hhl_data();
    EigenDecomposition eig = hermitian_eig(d.a_snapped);
    const double pi = std::numbers::pi;
    const size_t clock = 4;

    // Controlled evolution exp(i A tau 2 pi / T) for each clock value tau.
    ComplexMatrix uf = ComplexMatrix::Zero(16, 16);
    for (size_t tau = 0; tau < clock; tau++) {
        ComplexVector phases(4);
        for (Eigen::Index k = 0; k < 4; k++) {
            phases[k] = std::polar(1.0, std::round(eig.values[k]) * 2 * pi * static_cast<double>(tau) / clock);
        }
        Eigen::Index at = static_cast<Eigen::Index>(4 * tau);
        uf.block(at, at, 4, 4) = eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
    }

    // Ancilla rotation with sin(theta / 2) = 1 / i for clock value i >= 1.
    ComplexMatrix uc = ComplexMatrix::Zero(8, 8);
    for (size_t i = 0; i < clock; i++) {
        ComplexMatrix r = i == 0 ? ComplexMatrix::Identity(2, 2) : ry(2 * std::asin(1.0 / static_cast<double>(i)));
        Eigen::Index at = static_cast<Eigen::Index>(2 * i);
        uc.block(at, at, 2, 2) = r;
    }

    ComplexMatrix ux = completion(d.x).adjoint();

    // Flips aux when r = 1 and q is not |00>; wires r, q2, q3, aux.
    ComplexMatrix ur = ComplexMatrix::Zero(16, 16);
    for (Eigen::Index in = 0; in < 16; in++) {
        bool r = (in >> 3) & 1;
        bool q_nonzero = ((in >> 1) & 3) != 0;
        ur(r && q_nonzero ? in ^ 1 : in, in) = 1;
    }

    const std::string x = ket_sum(d.x);
    std::ostringstream s;
    s << "# HHL on a 4x4 system with eigenvalues 1 and 3.\n"
      << "# p = q0, q1 (clock); q = q2, q3 (system); r = q4 (ancilla).\n"
      << "qubits 5;\n"
      << defgate("UB", completion(d.b)) << defgate("UF", uf) << defgate("UFDG", uf.adjoint()) << defgate("UC", uc)
      << defgate("UX", ux) << defgate("UXDG", ux.adjoint()) << defgate("UR", ur)
      << "while measure(q4) in {0} {\n"
      << "    assert P: span{|00>} (x) span{|0>} on q0, q1, q4 lowered { check q0; check q1; check q4; }\n"
      << "    init q2, q3;\n"
      << "    UB q2, q3;\n"
      << "    H q0;\n    H q1;\n"
      << "    UF q0, q1, q2, q3;\n"
      << "    IQFT q0, q1;\n"
      << "    assert S: span{|01>, |11>} on q0, q1 lowered { check q1 = 1; }\n"
      << "    UC q0, q1, q4;\n"
      << "    QFT q0, q1;\n"
      << "    UFDG q0, q1, q2, q3;\n"
      << "    H q0;\n    H q1;\n"
      << "    assert R: span{|00>} (x) (span{|0>} (x) I[2] | span{|1>} (x) span{" << x
      << "}) on q0, q1, q4, q2, q3 lowered {\n"
      << "        check q0; check q1;\n"
      << "        UX q2, q3; UR q4, q2, q3, aux; check aux; UR q4, q2, q3, aux; UXDG q2, q3;\n"
      << "    }\n"
      << "}\n"
      << "assert Q: span{" << x << "} on q2, q3 lowered { UX q2, q3; check q2; check q3; UXDG q2, q3; }\n";
    return s.str();
}

Program build_hhl() {
    return parse_program(hhl_source());
}

namespace {

struct Located {
    Block *block;
    size_t index;
};

Located locate(Block &body, const std::vector<size_t> &path) {
    if (path.empty()) {
        throw Error(ErrorCode::BadTarget, "empty statement path");
    }
    Block *block = &body;
    for (size_t k = 0;; k++) {
        size_t index = path[k];
        if (index >= block->size()) {
            throw Error(ErrorCode::BadTarget, "statement path leaves its block");
        }
        if (k + 1 == path.size()) {
            if (!std::holds_alternative<GateStmt>((*block)[index].node)) {
                throw Error(ErrorCode::BadTarget, "statement path does not end at a gate");
            }
            return {block, index};
        }
        Statement &s = (*block)[index];
        if (auto *w = std::get_if<WhileStmt>(&s.node)) {
            block = &w->body;
        } else if (auto *i = std::get_if<IfStmt>(&s.node)) {
            k++;
            if (k + 1 >= path.size() || path[k] > 1) {
                throw Error(ErrorCode::BadTarget, "an if needs a branch selector 0 or 1");
            }
            block = path[k] == 0 ? &i->then_body : &i->else_body;
        } else {
            throw Error(ErrorCode::BadTarget, "statement path descends into a non-block statement");
        }
    }
}

const char *kind_name(BugSpec::Kind kind) {
    switch (kind) {
        case BugSpec::Kind::DropGate:
            return "DropGate";
        case BugSpec::Kind::ReplaceGate:
            return "ReplaceGate";
        case BugSpec::Kind::InsertGate:
            return "InsertGate";
        case BugSpec::Kind::SwapOperands:
            return "SwapOperands";
    }
    return "?";
}

void check_gate(const Program &program, const GateStmt &g) {
    for (size_t q : g.qubits) {
        if (q >= program.qubit_count) {
            throw Error(ErrorCode::BadTarget, "mutated gate names an undeclared qubit");
        }
    }
    gate_matrix(program, g.name, g.qubits.size());
}

}  // namespace

Program inject_bug(const Program &program, const BugSpec &bug) {
    Program out = program;
    Located at = locate(out.body, bug.target);
    Statement &stmt = (*at.block)[at.index];
    auto &gate = std::get<GateStmt>(stmt.node);
    switch (bug.kind) {
        case BugSpec::Kind::DropGate:
            at.block->erase(at.block->begin() + static_cast<std::ptrdiff_t>(at.index));
            break;
        case BugSpec::Kind::ReplaceGate: {
            GateStmt g{bug.gate, bug.qubits.value_or(gate.qubits)};
            check_gate(out, g);
            gate = std::move(g);
            break;
        }
        case BugSpec::Kind::InsertGate: {
            if (!bug.qubits) {
                throw Error(ErrorCode::BadTarget, "InsertGate needs qubits");
            }
            GateStmt g{bug.gate, *bug.qubits};
            check_gate(out, g);
            Statement inserted{std::move(g), stmt.location};
            at.block->insert(at.block->begin() + static_cast<std::ptrdiff_t>(at.index + 1), std::move(inserted));
            break;
        }
        case BugSpec::Kind::SwapOperands:
            if (gate.qubits.size() < 2) {
                throw Error(ErrorCode::BadTarget, "SwapOperands needs a gate on two or more qubits");
            }
            std::swap(gate.qubits[0], gate.qubits[1]);
            break;
    }
    std::string path;
    for (size_t k : bug.target) {
        path += (path.empty() ? "" : ".") + std::to_string(k);
    }
    std::string desc = std::string(kind_name(bug.kind)) + " at " + path;
    if (!bug.gate.empty()) {
        desc += " gate " + bug.gate;
    }
    auto [it, fresh] = out.metadata.try_emplace("bug", desc);
    if (!fresh) {
        it->second += "; " + desc;
    }
    return out;
}

std::vector<BugExample> shor_bug_examples() {
    // Loop body: 0 init, 1 A0, 2-4 H, 5 A1, 6 CNOT q2,q3, 7 CNOT q2,q4, 8 A2.
    BugSpec drop{BugSpec::Kind::DropGate, {0, 2}, "", std::nullopt};
    BugSpec replace{BugSpec::Kind::ReplaceGate, {0, 7}, "CNOT", std::vector<size_t>{2, 3}};
    BugSpec insert{BugSpec::Kind::InsertGate, {0, 7}, "X", std::vector<size_t>{4}};
    return {
        {"drop-first-H", drop, "A1"},
        {"cnot-q4-to-q3", replace, "A2"},
        {"insert-X-q4", insert, "A2"},
    };
}

}  // namespace qassert
