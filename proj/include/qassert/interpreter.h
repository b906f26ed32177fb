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

#ifndef QASSERT_INTERPRETER_H
#define QASSERT_INTERPRETER_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qassert/ast.h"
#include "qassert/states.h"

namespace qassert {

/// How assert statements execute. Direct measures {P, I - P}; Lowered runs the
/// compiled (or hand-written) single-qubit check circuit.
enum class Mode { Direct, Lowered };

enum class Status { Completed, Aborted, LoopCapExceeded };

const char *status_name(Status status);

struct MeasurementRecord {
    std::vector<size_t> qubits;
    std::string outcome;

    bool operator==(const MeasurementRecord &) const = default;
};

struct TrajectoryResult {
    Status status = Status::Completed;
    /// Set when status is Aborted.
    std::string aborted_site;
    /// Program qubits only; the auxiliary qubit is reset and dropped.
    StateVector final_state = StateVector::zero_state(1);
    /// If and while measurements in execution order.
    std::vector<MeasurementRecord> measurement_log;
    /// Executions of each assert site, indexed like assert_sites(program).
    std::vector<size_t> site_visits;
};

struct TrajectoryOptions {
    /// Overrides every loop's cap when set.
    std::optional<size_t> loop_cap;
    /// Called around each assert with the program-qubit state before the check
    /// and after it passed (after equals before on failure).
    std::function<void(const std::string &site, const ComplexVector &before, const ComplexVector &after)> on_assert;
};

struct SemanticResult {
    /// Unnormalized; its trace is the completion mass.
    ComplexMatrix rho_out;
    std::map<std::string, double> abort_mass;
    /// Mass still inside a loop when its cap ran out.
    double residual_loop_mass = 0;
    /// Unnormalized state arriving at each site, summed over visits.
    std::map<std::string, ComplexMatrix> site_states;

    double completion_mass() const {
        return rho_out.trace().real();
    }
};

/// A program prepared for repeated execution. Immutable and safe to share
/// between threads once constructed.
class Executor {
   public:
    /// Lowered mode compiles every assert and verifies hand-written circuits
    /// (DecompositionMismatch when one does not implement its predicate).
    Executor(const Program &program, Mode mode);
    ~Executor();
    Executor(Executor &&) noexcept;
    Executor &operator=(Executor &&) noexcept;

    Mode mode() const;
    const Program &program() const;
    /// 1 when some lowered assert needs the auxiliary qubit.
    size_t aux_qubits() const;

    TrajectoryResult run(uint64_t seed, const TrajectoryOptions &options = {}) const;
    /// Exact branch-summed semantics. Requires loop_cap >= 1 when given.
    SemanticResult semantics(const DensityOperator &rho_in, std::optional<size_t> loop_cap = std::nullopt) const;

   private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

TrajectoryResult run_trajectory(const Program &program, uint64_t seed, Mode mode = Mode::Direct);
SemanticResult semantic_function(
    const Program &program, const DensityOperator &rho_in, std::optional<size_t> loop_cap = std::nullopt,
    Mode mode = Mode::Direct);

/// 1 - tr(P rho) / tr(rho) for the state arriving at `site`; 0 when the site
/// is never reached.
double site_violation(const Program &program, const SemanticResult &result, const std::string &site);

}  // namespace qassert

#endif
