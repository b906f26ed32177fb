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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "qassert/error.h"
#include "qassert/interpreter.h"
#include "qassert/lower.h"
#include "qassert/parser.h"
#include "test_util.h"

using namespace qassert;
using namespace qassert::testing;

namespace {

DensityOperator ground(size_t n) {
    return DensityOperator::from_state(StateVector::zero_state(n));
}

ResourceCount hand_counts(const Program &program, const std::string &site) {
    for (const AssertStmt *a : assert_sites(program)) {
        if (a->site == site) {
            LoweredAssertion hand = hand_lowering(*a, program);
            return count_resources(lower_projection(site, hand_target(*a, hand)), hand);
        }
    }
    throw std::runtime_error("no site " + site);
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

ResourceCount counts(size_t h, size_t cnot, size_t measure, size_t aux) {
    ResourceCount c;
    c.h_gates = h;
    c.cnot_gates = cnot;
    c.measurements = measure;
    c.aux_qubits = aux;
    return c;
}

}  // namespace

TEST(Shor, structure) {
    Program p = build_shor();
    EXPECT_EQ(p.qubit_count, 5u);
    auto sites = assert_sites(p);
    ASSERT_EQ(sites.size(), 4u);
    EXPECT_EQ(sites[0]->site, "A0");
    EXPECT_EQ(sites[3]->site, "A3");
    const auto &loop = std::get<WhileStmt>(p.body.at(0).node);
    EXPECT_EQ(loop.outcomes, (std::vector<std::string>{"000", "100", "101", "110", "111"}));
}

TEST(Shor, hand_circuit_counts) {
    Program p = build_shor();
    EXPECT_EQ(hand_counts(p, "A0"), counts(0, 0, 5, 0));
    EXPECT_EQ(hand_counts(p, "A1"), counts(6, 0, 3, 0));
    EXPECT_EQ(hand_counts(p, "A2"), counts(6, 4, 5, 0));
    EXPECT_EQ(hand_counts(p, "A3"), counts(2, 0, 3, 0));
}

TEST(Shor, first_three_assertions_hold) {
    Program p = build_shor();
    SemanticResult r = semantic_function(p, ground(5), 8);
    for (const char *site : {"A0", "A1", "A2"}) {
        EXPECT_LE(std::abs(r.abort_mass.at(site)), 1e-9) << site;
        EXPECT_LE(site_violation(p, r, site), 1e-9) << site;
    }
}

TEST(Shor, state_at_a2) {
    Program p = build_shor();
    SemanticResult r = semantic_function(p, ground(5), 1);
    ComplexMatrix rho = r.site_states.at("A2");
    rho /= rho.trace();
    ComplexVector plus = ComplexVector::Constant(2, Complex(1 / std::sqrt(2.0), 0));
    ComplexVector ghz = ComplexVector::Zero(8);
    ghz[0] = ghz[7] = 1 / std::sqrt(2.0);
    ComplexVector expected = kron(plus, kron(plus, ghz));
    EXPECT_NEAR(std::abs((expected.adjoint() * rho * expected)(0, 0)), 1, 1e-12);
}

// After the inverse transform the readout register stays entangled with
// q3,q4, so the product predicate at A3 passes only a quarter of the time.
TEST(Shor, a3_violation_is_three_quarters) {
    Program p = build_shor();
    SemanticResult r = semantic_function(p, ground(5), 1);
    EXPECT_NEAR(site_violation(p, r, "A3"), 0.75, 1e-12);
}

TEST(Shor, loop_exit_after_a3_passes) {
    // Per iteration: A3 passes with 1/4, then 001 exits with 1/2.
    Program p = build_shor();
    SemanticResult r = semantic_function(p, ground(5), 1);
    EXPECT_NEAR(r.completion_mass(), 0.125, 1e-12);
    EXPECT_NEAR(r.abort_mass.at("A3"), 0.75, 1e-12);
    EXPECT_NEAR(r.residual_loop_mass, 0.125, 1e-12);
}

TEST(Shor, golden_program_file) {
    EXPECT_EQ(read_file(QASSERT_SOURCE_DIR "/programs/shor.qw"), shor_source());
    EXPECT_EQ(parse_program(read_file(QASSERT_SOURCE_DIR "/programs/shor.qw")), build_shor());
}

TEST(Hhl, eigenvalues_and_rhs) {
    HhlData d = hhl_data();
    const double expected[] = {3, 3, 1, 1};
    for (size_t k = 0; k < 4; k++) {
        EXPECT_NEAR(d.eigenvalues[k], expected[k], 0.02);
    }
    ComplexVector b(4);
    b << -0.486, -0.345, -0.494, -0.633;
    EXPECT_NEAR(b.norm(), 1, 1e-3);
    EXPECT_NEAR(d.b.norm(), 1, 1e-15);
    EXPECT_GE(std::norm(d.x.dot(d.x_printed)), 1 - 1e-6);
}

TEST(Hhl, s_predicate) {
    Program p = build_hhl();
    for (const AssertStmt *a : assert_sites(p)) {
        if (a->site == "S") {
            ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
            expected(1, 1) = expected(3, 3) = 1;
            EXPECT_NEAR(frob(a->projection->as_matrix() - expected), 0, 1e-12);
        }
    }
}

TEST(Hhl, all_assertions_hold_and_solution_is_encoded) {
    Program p = build_hhl();
    HhlData d = hhl_data();
    for (Mode mode : {Mode::Direct, Mode::Lowered}) {
        SemanticResult r = semantic_function(p, ground(5), 8, mode);
        for (const char *site : {"P", "S", "R", "Q"}) {
            EXPECT_LE(std::abs(r.abort_mass.at(site)), 1e-9) << site;
        }
        double mass = r.completion_mass();
        EXPECT_GT(mass, 0.99);
        std::vector<size_t> keep{2, 3};
        ComplexMatrix q = partial_trace(r.rho_out, 5, keep) / mass;
        EXPECT_GE((d.x.adjoint() * q * d.x)(0, 0).real(), 1 - 1e-6);
        EXPECT_GE((d.x_printed.adjoint() * q * d.x_printed)(0, 0).real(), 1 - 1e-6);
    }
}

TEST(Hhl, hand_circuits_verify) {
    Program p = build_hhl();
    EXPECT_NO_THROW(Executor(p, Mode::Lowered));
    EXPECT_EQ(Executor(p, Mode::Lowered).aux_qubits(), 1u);
    ResourceCount r = hand_counts(p, "R");
    EXPECT_EQ(r.aux_qubits, 1u);
    EXPECT_EQ(r.measurements, 3u);
}

TEST(Hhl, golden_program_file) {
    EXPECT_EQ(read_file(QASSERT_SOURCE_DIR "/programs/hhl.qw"), hhl_source());
}

TEST(Bugs, examples_raise_downstream_violation) {
    Program shor = build_shor();
    for (const auto &example : shor_bug_examples()) {
        Program bugged = inject_bug(shor, example.bug);
        EXPECT_TRUE(bugged.metadata.count("bug"));
        SemanticResult r = semantic_function(bugged, ground(5), 1);
        EXPECT_GT(site_violation(bugged, r, example.site), 0.01) << example.name;
        // Upstream assertions are untouched.
        EXPECT_LE(site_violation(bugged, r, "A0"), 1e-9);
    }
}

TEST(Bugs, dropped_hadamard_halves_a1) {
    Program bugged = inject_bug(build_shor(), shor_bug_examples()[0].bug);
    SemanticResult r = semantic_function(bugged, ground(5), 1);
    EXPECT_NEAR(site_violation(bugged, r, "A1"), 0.5, 1e-12);
    EXPECT_NEAR(r.abort_mass.at("A1"), 0.5, 1e-12);
}

TEST(Bugs, original_is_untouched) {
    Program shor = build_shor();
    Program copy = shor;
    inject_bug(shor, shor_bug_examples()[2].bug);
    EXPECT_EQ(shor, copy);
    EXPECT_TRUE(shor.metadata.empty());
}

TEST(Bugs, insert_goes_after_target_and_swap_operands) {
    Program p = parse_program("qubits 2; if measure(q0) in {1} { H q0; } else { CNOT q0, q1; }");
    BugSpec insert{BugSpec::Kind::InsertGate, {0, 0, 0}, "X", std::vector<size_t>{1}};
    Program a = inject_bug(p, insert);
    const auto &then_body = std::get<IfStmt>(a.body[0].node).then_body;
    ASSERT_EQ(then_body.size(), 2u);
    EXPECT_EQ(std::get<GateStmt>(then_body[1].node).name, "X");
    BugSpec swap{BugSpec::Kind::SwapOperands, {0, 1, 0}, "", std::nullopt};
    Program b = inject_bug(p, swap);
    const auto &g = std::get<GateStmt>(std::get<IfStmt>(b.body[0].node).else_body[0].node);
    EXPECT_EQ(g.qubits, (std::vector<size_t>{1, 0}));
}

TEST(Bugs, bad_targets) {
    Program shor = build_shor();
    for (std::vector<size_t> path : {std::vector<size_t>{}, {5}, {0, 1}, {0, 99}, {0, 2, 0}}) {
        BugSpec bug{BugSpec::Kind::DropGate, path, "", std::nullopt};
        try {
            inject_bug(shor, bug);
            ADD_FAILURE();
        } catch (const Error &e) {
            EXPECT_EQ(e.code(), ErrorCode::BadTarget);
        }
    }
}
