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

#include "qassert/interpreter.h"

#include <cmath>

#include "qassert/error.h"
#include "qassert/gates.h"
#include "qassert/lower.h"

namespace qassert {

namespace {

struct CompiledStep {
    LoweredStep::Kind kind = LoweredStep::Kind::Unitary;
    ComplexMatrix matrix;
    std::vector<size_t> targets;
    int expected = 0;
};

struct Node {
    enum class Kind { Skip, Init, Gate, If, While, Assert };
    Kind kind = Kind::Skip;
    std::vector<size_t> targets;
    ComplexMatrix matrix;
    /// Indexed by packed outcome bits.
    std::vector<bool> accept;
    size_t cap = 0;
    std::vector<Node> body;
    std::vector<Node> else_body;
    size_t site_index = 0;
    std::string site;
    std::vector<CompiledStep> steps;
};

size_t outcome_index(const std::string &bits) {
    size_t v = 0;
    for (char c : bits) {
        v = (v << 1) | static_cast<size_t>(c == '1');
    }
    return v;
}

std::string outcome_string(size_t v, size_t width) {
    std::string s(width, '0');
    for (size_t k = 0; k < width; k++) {
        if ((v >> (width - 1 - k)) & 1) {
            s[k] = '1';
        }
    }
    return s;
}

std::vector<bool> accept_table(const std::vector<std::string> &outcomes, size_t width) {
    std::vector<bool> table(size_t{1} << width, false);
    for (const auto &o : outcomes) {
        table[outcome_index(o)] = true;
    }
    return table;
}

// Computational-basis measurement of `targets`; collapses and renormalizes.
size_t measure_bits(ComplexVector &psi, const std::vector<size_t> &targets, size_t total, Rng &rng) {
    std::vector<double> weights(size_t{1} << targets.size(), 0.0);
    for (Eigen::Index i = 0; i < psi.size(); i++) {
        weights[extract_bits(static_cast<size_t>(i), targets, total)] += std::norm(psi[i]);
    }
    size_t outcome = sample_index(weights, rng);
    for (Eigen::Index i = 0; i < psi.size(); i++) {
        if (extract_bits(static_cast<size_t>(i), targets, total) != outcome) {
            psi[i] = 0;
        }
    }
    psi /= std::sqrt(weights[outcome]);
    return outcome;
}

void flip(ComplexVector &psi, size_t qubit, size_t total) {
    const size_t mask = size_t{1} << (total - 1 - qubit);
    for (Eigen::Index i = 0; i < psi.size(); i++) {
        size_t u = static_cast<size_t>(i);
        if (!(u & mask)) {
            std::swap(psi[i], psi[static_cast<Eigen::Index>(u | mask)]);
        }
    }
}

void reset_qubit(ComplexVector &psi, size_t qubit, size_t total, Rng &rng) {
    if (measure_bits(psi, {qubit}, total, rng) == 1) {
        flip(psi, qubit, total);
    }
}

// Op * rho * Op^H with Op acting on `targets`.
void conjugate(ComplexMatrix &rho, const ComplexMatrix &op, const std::vector<size_t> &targets, size_t total) {
    for (int pass = 0; pass < 2; pass++) {
        for (Eigen::Index c = 0; c < rho.cols(); c++) {
            ComplexVector col = rho.col(c);
            apply_to_qubits(col, op, targets, total);
            rho.col(c) = col;
        }
        rho.adjointInPlace();
    }
}

// Keeps the blocks of rho whose measured outcome on `targets` is accepted.
ComplexMatrix select(const ComplexMatrix &rho, const std::vector<size_t> &targets, size_t total, const std::vector<bool> &accept) {
    const Eigen::Index d = rho.rows();
    std::vector<size_t> out(static_cast<size_t>(d));
    for (Eigen::Index i = 0; i < d; i++) {
        out[static_cast<size_t>(i)] = extract_bits(static_cast<size_t>(i), targets, total);
    }
    ComplexMatrix r = ComplexMatrix::Zero(d, d);
    for (Eigen::Index j = 0; j < d; j++) {
        size_t oj = out[static_cast<size_t>(j)];
        if (!accept[oj]) {
            continue;
        }
        for (Eigen::Index i = 0; i < d; i++) {
            if (out[static_cast<size_t>(i)] == oj) {
                r(i, j) = rho(i, j);
            }
        }
    }
    return r;
}

void reset_density(ComplexMatrix &rho, size_t qubit, size_t total) {
    const size_t mask = size_t{1} << (total - 1 - qubit);
    const Eigen::Index d = rho.rows();
    ComplexMatrix r = ComplexMatrix::Zero(d, d);
    for (Eigen::Index j = 0; j < d; j++) {
        for (Eigen::Index i = 0; i < d; i++) {
            size_t ui = static_cast<size_t>(i);
            size_t uj = static_cast<size_t>(j);
            if ((ui & mask) == (uj & mask)) {
                r(static_cast<Eigen::Index>(ui & ~mask), static_cast<Eigen::Index>(uj & ~mask)) += rho(i, j);
            }
        }
    }
    rho = std::move(r);
}

}  // namespace

const char *status_name(Status status) {
    switch (status) {
        case Status::Completed:
            return "Completed";
        case Status::Aborted:
            return "Aborted";
        case Status::LoopCapExceeded:
            return "LoopCapExceeded";
    }
    return "?";
}

struct Executor::Impl {
    Program program;
    Mode mode;
    size_t aux = 0;
    size_t total = 0;
    std::vector<Node> body;
    std::vector<std::string> sites;

    struct Walk {
        Status status = Status::Completed;
        std::string site;
    };

    Impl(const Program &p, Mode m) : program(p), mode(m) {
        std::vector<LoweredAssertion> lowered;
        if (mode == Mode::Lowered) {
            for (const AssertStmt *a : assert_sites(program)) {
                if (a->lowered) {
                    LoweredAssertion hand = hand_lowering(*a, program);
                    verify_hand_lowering(*a, hand);
                    lowered.push_back(std::move(hand));
                } else {
                    lowered.push_back(lower_assertion(*a, program.qubit_count));
                }
                aux = std::max(aux, lowered.back().aux_qubits);
            }
        }
        total = program.qubit_count + aux;
        size_t next_site = 0;
        body = compile_block(program.body, lowered, next_site);
    }

    std::vector<size_t> global(const std::vector<size_t> &qubits) const {
        std::vector<size_t> g;
        for (size_t q : qubits) {
            g.push_back(q + aux);
        }
        return g;
    }

    std::vector<Node> compile_block(const Block &block, const std::vector<LoweredAssertion> &lowered, size_t &next_site) {
        std::vector<Node> out;
        for (const auto &stmt : block) {
            Node n;
            if (std::holds_alternative<SkipStmt>(stmt.node)) {
                n.kind = Node::Kind::Skip;
            } else if (const auto *s = std::get_if<InitStmt>(&stmt.node)) {
                n.kind = Node::Kind::Init;
                n.targets = global(s->qubits);
            } else if (const auto *s = std::get_if<GateStmt>(&stmt.node)) {
                n.kind = Node::Kind::Gate;
                n.targets = global(s->qubits);
                n.matrix = gate_matrix(program, s->name, s->qubits.size());
            } else if (const auto *s = std::get_if<IfStmt>(&stmt.node)) {
                n.kind = Node::Kind::If;
                n.targets = global(s->qubits);
                n.accept = accept_table(s->outcomes, s->qubits.size());
                n.body = compile_block(s->then_body, lowered, next_site);
                n.else_body = compile_block(s->else_body, lowered, next_site);
            } else if (const auto *s = std::get_if<WhileStmt>(&stmt.node)) {
                n.kind = Node::Kind::While;
                n.targets = global(s->qubits);
                n.accept = accept_table(s->outcomes, s->qubits.size());
                n.cap = s->effective_cap();
                n.body = compile_block(s->body, lowered, next_site);
            } else {
                const auto &a = std::get<AssertStmt>(stmt.node);
                n.kind = Node::Kind::Assert;
                n.site = a.site;
                n.site_index = next_site++;
                sites.push_back(a.site);
                n.targets = global(a.qubits);
                n.matrix = a.projection->as_matrix();
                if (mode == Mode::Lowered) {
                    const LoweredAssertion &l = lowered[n.site_index];
                    for (const auto &step : l.steps) {
                        CompiledStep c;
                        c.kind = step.kind;
                        c.matrix = step.matrix;
                        c.expected = step.expected;
                        for (size_t w : step.wires) {
                            if (w < l.aux_qubits) {
                                c.targets.push_back(0);
                            } else {
                                c.targets.push_back(a.qubits[w - l.aux_qubits] + aux);
                            }
                        }
                        n.steps.push_back(std::move(c));
                    }
                }
            }
            out.push_back(std::move(n));
        }
        return out;
    }

    // Program-qubit amplitudes; valid while the auxiliary qubit reads 0.
    ComplexVector user_part(const ComplexVector &psi) const {
        if (!aux) {
            return psi;
        }
        return psi.head(psi.size() / 2);
    }

    Walk run_block(const std::vector<Node> &nodes, ComplexVector &psi, Rng &rng, TrajectoryResult &result,
                   const TrajectoryOptions &options) const {
        for (const Node &n : nodes) {
            Walk w = run_node(n, psi, rng, result, options);
            if (w.status != Status::Completed) {
                return w;
            }
        }
        return {};
    }

    Walk run_node(const Node &n, ComplexVector &psi, Rng &rng, TrajectoryResult &result,
                  const TrajectoryOptions &options) const {
        switch (n.kind) {
            case Node::Kind::Skip:
                return {};
            case Node::Kind::Init:
                for (size_t q : n.targets) {
                    reset_qubit(psi, q, total, rng);
                }
                return {};
            case Node::Kind::Gate:
                apply_to_qubits(psi, n.matrix, n.targets, total);
                return {};
            case Node::Kind::If: {
                size_t o = measure_bits(psi, n.targets, total, rng);
                result.measurement_log.push_back({user_qubits(n.targets), outcome_string(o, n.targets.size())});
                return run_block(n.accept[o] ? n.body : n.else_body, psi, rng, result, options);
            }
            case Node::Kind::While: {
                const size_t cap = options.loop_cap.value_or(n.cap);
                for (size_t iteration = 0;; iteration++) {
                    size_t o = measure_bits(psi, n.targets, total, rng);
                    result.measurement_log.push_back({user_qubits(n.targets), outcome_string(o, n.targets.size())});
                    if (!n.accept[o]) {
                        return {};
                    }
                    if (iteration == cap) {
                        return {Status::LoopCapExceeded, ""};
                    }
                    Walk w = run_block(n.body, psi, rng, result, options);
                    if (w.status != Status::Completed) {
                        return w;
                    }
                }
            }
            case Node::Kind::Assert:
                return run_assert(n, psi, rng, result, options);
        }
        return {};
    }

    std::vector<size_t> user_qubits(const std::vector<size_t> &targets) const {
        std::vector<size_t> out;
        for (size_t t : targets) {
            out.push_back(t - aux);
        }
        return out;
    }

    Walk run_assert(const Node &n, ComplexVector &psi, Rng &rng, TrajectoryResult &result,
                    const TrajectoryOptions &options) const {
        result.site_visits[n.site_index]++;
        if (aux && mode == Mode::Lowered) {
            reset_qubit(psi, 0, total, rng);
        }
        ComplexVector before;
        if (options.on_assert) {
            before = user_part(psi);
        }
        bool passed = true;
        if (mode == Mode::Direct) {
            ComplexVector inside = psi;
            apply_to_qubits(inside, n.matrix, n.targets, total);
            double p = std::min(1.0, inside.squaredNorm());
            std::vector<double> weights{p, 1 - p};
            if (sample_index(weights, rng) == 0) {
                psi = inside / std::sqrt(p);
            } else {
                psi -= inside;
                psi /= psi.norm();
                passed = false;
            }
        } else {
            for (const auto &step : n.steps) {
                if (step.kind == LoweredStep::Kind::Abort) {
                    passed = false;
                } else if (step.kind == LoweredStep::Kind::Check) {
                    passed = measure_bits(psi, step.targets, total, rng) == static_cast<size_t>(step.expected);
                } else {
                    apply_to_qubits(psi, step.matrix, step.targets, total);
                }
                if (!passed) {
                    break;
                }
            }
        }
        if (options.on_assert) {
            options.on_assert(n.site, before, passed ? user_part(psi) : before);
        }
        if (!passed) {
            return {Status::Aborted, n.site};
        }
        return {};
    }

    // Exact semantics. rho is updated in place to the completed-branch state.
    void eval_block(const std::vector<Node> &nodes, ComplexMatrix &rho, SemanticResult &out,
                    std::optional<size_t> loop_cap) const {
        for (const Node &n : nodes) {
            eval_node(n, rho, out, loop_cap);
        }
    }

    void eval_node(const Node &n, ComplexMatrix &rho, SemanticResult &out, std::optional<size_t> loop_cap) const {
        switch (n.kind) {
            case Node::Kind::Skip:
                return;
            case Node::Kind::Init:
                for (size_t q : n.targets) {
                    reset_density(rho, q, total);
                }
                return;
            case Node::Kind::Gate:
                conjugate(rho, n.matrix, n.targets, total);
                return;
            case Node::Kind::If: {
                std::vector<bool> reject(n.accept.size());
                for (size_t k = 0; k < reject.size(); k++) {
                    reject[k] = !n.accept[k];
                }
                ComplexMatrix then_rho = select(rho, n.targets, total, n.accept);
                ComplexMatrix else_rho = select(rho, n.targets, total, reject);
                eval_block(n.body, then_rho, out, loop_cap);
                eval_block(n.else_body, else_rho, out, loop_cap);
                rho = then_rho + else_rho;
                return;
            }
            case Node::Kind::While: {
                std::vector<bool> reject(n.accept.size());
                for (size_t k = 0; k < reject.size(); k++) {
                    reject[k] = !n.accept[k];
                }
                const size_t cap = loop_cap.value_or(n.cap);
                ComplexMatrix exited = ComplexMatrix::Zero(rho.rows(), rho.cols());
                ComplexMatrix current = rho;
                for (size_t iteration = 0;; iteration++) {
                    exited += select(current, n.targets, total, reject);
                    current = select(current, n.targets, total, n.accept);
                    if (iteration == cap) {
                        out.residual_loop_mass += current.trace().real();
                        break;
                    }
                    eval_block(n.body, current, out, loop_cap);
                }
                rho = exited;
                return;
            }
            case Node::Kind::Assert:
                eval_assert(n, rho, out);
                return;
        }
    }

    ComplexMatrix strip(const ComplexMatrix &rho) const {
        if (!aux) {
            return rho;
        }
        std::vector<size_t> keep;
        for (size_t q = 1; q < total; q++) {
            keep.push_back(q);
        }
        return partial_trace(rho, total, keep);
    }

    void eval_assert(const Node &n, ComplexMatrix &rho, SemanticResult &out) const {
        if (aux && mode == Mode::Lowered) {
            reset_density(rho, 0, total);
        }
        ComplexMatrix arriving = strip(rho);
        auto [it, fresh] = out.site_states.try_emplace(n.site, arriving);
        if (!fresh) {
            it->second += arriving;
        }
        const double before = rho.trace().real();
        if (mode == Mode::Direct) {
            conjugate(rho, n.matrix, n.targets, total);
        } else {
            for (const auto &step : n.steps) {
                if (step.kind == LoweredStep::Kind::Abort) {
                    rho.setZero();
                } else if (step.kind == LoweredStep::Kind::Check) {
                    std::vector<bool> accept(2, false);
                    accept[static_cast<size_t>(step.expected)] = true;
                    rho = select(rho, step.targets, total, accept);
                } else {
                    conjugate(rho, step.matrix, step.targets, total);
                }
            }
        }
        out.abort_mass[n.site] += before - rho.trace().real();
    }
};

Executor::Executor(const Program &program, Mode mode) : impl_(std::make_unique<Impl>(program, mode)) {
}

Executor::~Executor() = default;
Executor::Executor(Executor &&) noexcept = default;
Executor &Executor::operator=(Executor &&) noexcept = default;

Mode Executor::mode() const {
    return impl_->mode;
}

const Program &Executor::program() const {
    return impl_->program;
}

size_t Executor::aux_qubits() const {
    return impl_->aux;
}

TrajectoryResult Executor::run(uint64_t seed, const TrajectoryOptions &options) const {
    const Impl &m = *impl_;
    Rng rng(seed);
    TrajectoryResult result;
    result.site_visits.assign(m.sites.size(), 0);
    ComplexVector psi = ComplexVector::Zero(Eigen::Index{1} << m.total);
    psi[0] = 1;
    Impl::Walk w = m.run_block(m.body, psi, rng, result, options);
    result.status = w.status;
    result.aborted_site = w.site;
    if (m.aux) {
        reset_qubit(psi, 0, m.total, rng);
    }
    ComplexVector user = m.user_part(psi);
    user /= user.norm();
    result.final_state = StateVector(std::move(user), m.program.qubit_count);
    return result;
}

SemanticResult Executor::semantics(const DensityOperator &rho_in, std::optional<size_t> loop_cap) const {
    const Impl &m = *impl_;
    if (rho_in.qubit_count() != m.program.qubit_count) {
        throw Error(ErrorCode::DimensionMismatch, "input state does not match the program's qubit count");
    }
    if (loop_cap && *loop_cap == 0) {
        throw Error(ErrorCode::BadArgs, "loop cap must be at least 1");
    }
    SemanticResult out;
    for (const auto &site : m.sites) {
        out.abort_mass[site] = 0;
    }
    ComplexMatrix rho = rho_in.matrix();
    if (m.aux) {
        ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
        zero(0, 0) = 1;
        rho = kron(zero, rho);
    }
    m.eval_block(m.body, rho, out, loop_cap);
    out.rho_out = m.strip(rho);
    return out;
}

TrajectoryResult run_trajectory(const Program &program, uint64_t seed, Mode mode) {
    return Executor(program, mode).run(seed);
}

SemanticResult semantic_function(
    const Program &program, const DensityOperator &rho_in, std::optional<size_t> loop_cap, Mode mode) {
    return Executor(program, mode).semantics(rho_in, loop_cap);
}

double site_violation(const Program &program, const SemanticResult &result, const std::string &site) {
    for (const AssertStmt *a : assert_sites(program)) {
        if (a->site != site) {
            continue;
        }
        auto it = result.site_states.find(site);
        if (it == result.site_states.end()) {
            return 0;
        }
        double mass = it->second.trace().real();
        if (mass <= kGhostBranchProbability) {
            return 0;
        }
        ComplexMatrix reduced = partial_trace(it->second, program.qubit_count, a->qubits);
        double inside = (a->projection->as_matrix() * reduced).trace().real();
        return std::clamp(1 - inside / mass, 0.0, 1.0);
    }
    throw Error(ErrorCode::BadArgs, "no assertion named " + site);
}

}  // namespace qassert
