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

#include "qassert/lower.h"

#include <algorithm>
#include <set>

#include "qassert/error.h"
#include "qassert/gates.h"

namespace qassert {

namespace {

bool is_power_of_two(size_t v) {
    return v != 0 && (v & (v - 1)) == 0;
}

size_t log2_exact(size_t v) {
    size_t m = 0;
    while ((size_t{1} << m) < v) {
        m++;
    }
    return m;
}

bool near_identity(const ComplexMatrix &u) {
    return (u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= 1e-12;
}

std::vector<size_t> all_wires(size_t count) {
    std::vector<size_t> w(count);
    for (size_t k = 0; k < count; k++) {
        w[k] = k;
    }
    return w;
}

void push_unitary(LoweredAssertion &out, const std::string &label, const ComplexMatrix &u, size_t wires) {
    if (near_identity(u)) {
        return;
    }
    LoweredStep step;
    step.kind = LoweredStep::Kind::Unitary;
    step.label = label;
    step.matrix = u;
    step.wires = all_wires(wires);
    out.steps.push_back(std::move(step));
}

void push_checks(LoweredAssertion &out, const IcbForm &form) {
    for (size_t k = 0; k < form.measured_qubits.size(); k++) {
        LoweredStep step;
        step.kind = LoweredStep::Kind::Check;
        step.wires = {form.measured_qubits[k]};
        step.expected = form.expected_bits[k];
        out.steps.push_back(std::move(step));
    }
}

// Pass-branch operator on all wires, auxiliary included.
ComplexMatrix full_pass_operator(const LoweredAssertion &lowered) {
    const size_t w = lowered.wire_count();
    const Eigen::Index d = Eigen::Index{1} << w;
    ComplexMatrix m = ComplexMatrix::Identity(d, d);
    for (const auto &step : lowered.steps) {
        switch (step.kind) {
            case LoweredStep::Kind::Unitary:
            case LoweredStep::Kind::Gate:
                m = embed_operator(step.matrix, step.wires, w) * m;
                break;
            case LoweredStep::Kind::Check: {
                size_t shift = w - 1 - step.wires.at(0);
                for (Eigen::Index i = 0; i < d; i++) {
                    if (static_cast<int>((static_cast<size_t>(i) >> shift) & 1) != step.expected) {
                        m.row(i).setZero();
                    }
                }
                break;
            }
            case LoweredStep::Kind::Abort:
                m.setZero();
                break;
        }
    }
    return m;
}

}  // namespace

bool LoweredAssertion::always_aborts() const {
    return std::any_of(steps.begin(), steps.end(), [](const LoweredStep &s) { return s.kind == LoweredStep::Kind::Abort; }) &&
           steps.size() == 1;
}

IcbForm icb(const Projection &p) {
    const size_t n = p.ambient_qubits();
    const size_t r = p.rank();
    if (!is_power_of_two(r)) {
        throw Error(ErrorCode::RankNotPowerOfTwo, "rank " + std::to_string(r) + " is not a power of two");
    }
    const size_t m = log2_exact(r);
    // Pattern kets are the first r standard basis vectors, so [T | T-perp] is
    // the identity and the unitary reduces to [B | B-perp]^H.
    ComplexMatrix basis(static_cast<Eigen::Index>(p.dimension()), static_cast<Eigen::Index>(p.dimension()));
    basis << p.frame(), orthonormal_complement(p.frame());
    IcbForm out;
    out.unitary = basis.adjoint();
    for (size_t q = 0; q < n - m; q++) {
        out.measured_qubits.push_back(q);
        out.expected_bits.push_back(0);
    }
    return out;
}

std::pair<Projection, Projection> split(const Projection &p) {
    const size_t n = p.ambient_qubits();
    const size_t r = p.rank();
    if (n == 0 || r == 0 || r > (size_t{1} << (n - 1))) {
        throw Error(
            ErrorCode::RankOutOfRange, "split needs 0 < rank <= 2^(n-1), got rank " + std::to_string(r));
    }
    const Eigen::Index d = static_cast<Eigen::Index>(p.dimension());
    const Eigen::Index half = d / 2;
    const Eigen::Index rr = static_cast<Eigen::Index>(r);
    ComplexMatrix u(d, d);
    u << p.frame(), orthonormal_complement(p.frame());
    // First factor keeps the leading half of the columns. The second keeps the
    // first r columns and the next half - r columns after the midpoint.
    ComplexMatrix first = u.leftCols(half);
    ComplexMatrix second(d, half);
    second << u.leftCols(rr), u.middleCols(half, half - rr);
    return {Projection(first, n), Projection(second, n)};
}

Projection aux_lift(const Projection &p) {
    const size_t n = p.ambient_qubits();
    if (n > 0 && p.rank() <= (size_t{1} << (n - 1))) {
        throw Error(ErrorCode::NotNeeded, "rank fits without an auxiliary qubit");
    }
    ComplexMatrix zero = ComplexMatrix::Zero(2, 1);
    zero(0, 0) = 1;
    return Projection(kron(zero, p.frame()), n + 1);
}

LoweredAssertion lower_projection(const std::string &site, const Projection &p) {
    LoweredAssertion out;
    out.site = site;
    out.site_qubits = p.ambient_qubits();
    const size_t k = p.ambient_qubits();
    const size_t r = p.rank();
    if (r == 0) {
        LoweredStep abort;
        abort.kind = LoweredStep::Kind::Abort;
        out.steps.push_back(std::move(abort));
        return out;
    }
    if (r == (size_t{1} << k)) {
        return out;
    }
    Projection target = p;
    if (r > (size_t{1} << (k - 1))) {
        target = aux_lift(p);
        out.aux_qubits = 1;
    }
    const size_t wires = target.ambient_qubits();
    if (is_power_of_two(r)) {
        IcbForm form = icb(target);
        push_unitary(out, "U", form.unitary, wires);
        push_checks(out, form);
        push_unitary(out, "U^H", form.unitary.adjoint(), wires);
        return out;
    }
    auto [first, second] = split(target);
    IcbForm f1 = icb(first);
    IcbForm f2 = icb(second);
    push_unitary(out, "U1", f1.unitary, wires);
    push_checks(out, f1);
    push_unitary(out, "U2*U1^H", f2.unitary * f1.unitary.adjoint(), wires);
    push_checks(out, f2);
    push_unitary(out, "U2^H", f2.unitary.adjoint(), wires);
    return out;
}

LoweredAssertion lower_assertion(const AssertStmt &site, size_t ambient_qubits) {
    for (size_t q : site.qubits) {
        if (q >= ambient_qubits) {
            throw Error(ErrorCode::QubitOutOfRange, "assertion " + site.site + " names an undeclared qubit");
        }
    }
    if (!site.projection) {
        throw Error(ErrorCode::BadProjectionExpr, "assertion " + site.site + " has no evaluated predicate");
    }
    return lower_projection(site.site, *site.projection);
}

LoweredAssertion hand_lowering(const AssertStmt &site, const Program &program) {
    if (!site.lowered) {
        throw Error(ErrorCode::BadArgs, "assertion " + site.site + " has no hand-lowered circuit");
    }
    LoweredAssertion out;
    out.site = site.site;
    out.site_qubits = site.qubits.size();
    for (const auto &step : *site.lowered) {
        for (size_t w : step.wires) {
            if (w == kAuxWire) {
                out.aux_qubits = 1;
            }
        }
    }
    auto local = [&](size_t wire) -> size_t {
        if (wire == kAuxWire) {
            return 0;
        }
        for (size_t k = 0; k < site.qubits.size(); k++) {
            if (site.qubits[k] == wire) {
                return out.aux_qubits + k;
            }
        }
        throw Error(ErrorCode::QubitOutOfRange, "hand circuit of " + site.site + " touches a foreign qubit");
    };
    for (const auto &step : *site.lowered) {
        LoweredStep s;
        for (size_t w : step.wires) {
            s.wires.push_back(local(w));
        }
        switch (step.kind) {
            case HandStep::Kind::Gate:
                s.kind = LoweredStep::Kind::Gate;
                s.label = step.gate;
                s.matrix = gate_matrix(program, step.gate, step.wires.size());
                break;
            case HandStep::Kind::Check:
                s.kind = LoweredStep::Kind::Check;
                s.expected = step.expected;
                break;
            case HandStep::Kind::Abort:
                s.kind = LoweredStep::Kind::Abort;
                break;
        }
        out.steps.push_back(std::move(s));
    }
    return out;
}

std::vector<size_t> touched_positions(const LoweredAssertion &lowered) {
    std::set<size_t> seen;
    for (const auto &step : lowered.steps) {
        for (size_t w : step.wires) {
            if (w >= lowered.aux_qubits) {
                seen.insert(w - lowered.aux_qubits);
            }
        }
    }
    return {seen.begin(), seen.end()};
}

ComplexMatrix pass_operator(const LoweredAssertion &lowered) {
    ComplexMatrix full = full_pass_operator(lowered);
    if (lowered.aux_qubits == 0) {
        return full;
    }
    Eigen::Index d = Eigen::Index{1} << lowered.site_qubits;
    return full.topLeftCorner(d, d);
}

Projection hand_target(const AssertStmt &site, const LoweredAssertion &hand) {
    const Projection &p = *site.projection;
    std::vector<size_t> touched = touched_positions(hand);
    if (touched.empty() || touched.size() == p.ambient_qubits()) {
        return p;
    }
    return embed(local_projection(p, touched), touched, p.ambient_qubits());
}

void verify_hand_lowering(const AssertStmt &site, const LoweredAssertion &hand) {
    const size_t k = site.projection->ambient_qubits();
    ComplexMatrix expected = hand_target(site, hand).as_matrix();
    ComplexMatrix full = full_pass_operator(hand);
    Eigen::Index d = Eigen::Index{1} << k;
    double leak = 0;
    if (hand.aux_qubits) {
        leak = full.bottomLeftCorner(d, d).norm();
    }
    double diff = (pass_operator(hand) - expected).norm();
    if (diff > 1e-8 || leak > 1e-8) {
        throw Error(
            ErrorCode::DecompositionMismatch,
            "hand circuit of " + site.site + " does not implement its predicate (deviation " + std::to_string(diff) +
                ")");
    }
}

ResourceCount count_resources(const LoweredAssertion &lowered, const std::optional<LoweredAssertion> &decomposition) {
    const LoweredAssertion *counted = &lowered;
    if (decomposition) {
        if (decomposition->site_qubits != lowered.site_qubits) {
            throw Error(ErrorCode::DecompositionMismatch, "decomposition acts on a different number of qubits");
        }
        if ((pass_operator(*decomposition) - pass_operator(lowered)).norm() > 1e-8) {
            throw Error(ErrorCode::DecompositionMismatch, "decomposition does not compose to the lowered form");
        }
        counted = &*decomposition;
    }
    ResourceCount out;
    out.aux_qubits = counted->aux_qubits;
    for (const auto &step : counted->steps) {
        switch (step.kind) {
            case LoweredStep::Kind::Unitary:
                out.generic_unitaries++;
                break;
            case LoweredStep::Kind::Check:
                out.measurements++;
                break;
            case LoweredStep::Kind::Abort:
                break;
            case LoweredStep::Kind::Gate: {
                if (step.label == "H") {
                    out.h_gates++;
                    break;
                }
                if (step.label == "CNOT") {
                    out.cnot_gates++;
                    break;
                }
                auto arity = builtin_arity(step.label);
                if (!arity) {
                    out.generic_unitaries++;
                } else if (*arity == 1) {
                    out.other_1q++;
                } else if (*arity == 2) {
                    out.other_2q++;
                } else {
                    out.other_3q++;
                }
                break;
            }
        }
    }
    return out;
}

}  // namespace qassert
