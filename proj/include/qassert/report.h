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

#ifndef QASSERT_REPORT_H
#define QASSERT_REPORT_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qassert/ast.h"
#include "qassert/interpreter.h"
#include "qassert/lower.h"

namespace qassert {

inline constexpr const char *kReportSchema = "proq-report/1";
/// Significant digits for every number in a report.
inline constexpr int kReportDigits = 12;

struct CampaignOptions {
    uint64_t shots = 0;
    uint64_t seed = 0;
    double alpha = 0.05;
    std::optional<std::vector<double>> epsilons;
    std::optional<size_t> loop_cap;
    size_t jobs = 1;
};

struct SiteTally {
    std::string site;
    SourceLocation location;
    /// Shots that executed the site at least once.
    uint64_t reached = 0;
    /// Shots that aborted at the site.
    uint64_t failures = 0;
};

struct CampaignResult {
    std::vector<SiteTally> sites;
    uint64_t completed = 0;
    uint64_t aborted = 0;
    uint64_t loop_cap_exceeded = 0;
};

/// Runs shot i with seed Rng::derive_seed(seed, i). The tallies do not depend
/// on `jobs`.
CampaignResult run_campaign(const Executor &executor, const CampaignOptions &options);

/// Hex SHA-256 of the program text.
std::string sha256_hex(std::string_view text);

/// The JSON run report. Byte-identical for identical inputs.
std::string run_report(
    std::string_view program_text, const Executor &executor, const CampaignOptions &options,
    const CampaignResult &result);

/// Exit status for a finished campaign: 1 when any failure was observed or a
/// segment is judged Incorrect, else 0.
int campaign_exit_code(const CampaignResult &result, const CampaignOptions &options);

/// Fixed-width text table of per-site reached and failure counts.
std::string tally_table(const CampaignResult &result);

/// JSON with the shot-count distance and fidelity bounds and, when failures
/// are given, the per-segment confidence report.
std::string stats_report(
    uint64_t l, uint64_t k, const std::optional<std::vector<uint64_t>> &failures,
    const std::optional<std::vector<double>> &epsilons, double alpha);

struct CompiledSite {
    /// Points into the compiled program, which must outlive this record.
    const AssertStmt *site = nullptr;
    /// True when the program supplies the circuit.
    bool hand = false;
    LoweredAssertion lowered;
    ResourceCount counts;
};

/// Lowers every assertion: the hand circuit when present (verified), else the
/// automatic compilation.
std::vector<CompiledSite> compile_program(const Program &program);

/// Step listing for each site; the bottom predicate shows as ABORT-ALWAYS.
std::string compile_listing(const std::vector<CompiledSite> &sites);

/// Columns: site, H, CNOT, other, generic-U, measure, aux.
std::string counts_table(const std::vector<CompiledSite> &sites);

/// The program with every assertion carrying an explicit lowered block;
/// generic unitaries become gate definitions named <site>_<label>.
std::string lowered_program(const Program &program, const std::vector<CompiledSite> &sites);

/// CSV "basis,probability" of the normalized state arriving at `site` under
/// the exact semantics from |0...0>.
std::string state_histogram(const Executor &executor, const std::string &site, size_t loop_cap);

}  // namespace qassert

#endif
