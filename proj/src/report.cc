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

#include "qassert/report.h"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <map>
#include <functional>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "qassert/error.h"
#include "qassert/printer.h"
#include "qassert/stats.h"

namespace qassert {

namespace {

using Json = nlohmann::ordered_json;

double round_digits(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", kReportDigits, v);
    return std::strtod(buf, nullptr);
}

Json number(double v) {
    return round_digits(v);
}

std::string dump(const Json &j) {
    return j.dump(2) + "\n";
}

Json theorem1_json(uint64_t l, uint64_t k) {
    DistanceBounds b = theorem1_intervals(l, k);
    return Json{{"d_hi", number(b.d_hi)}, {"f_lo", number(b.f_lo)}, {"small_sample_warning", b.small_sample_warning}};
}

struct Shot {
    Status status = Status::Completed;
    size_t aborted = 0;
    std::vector<bool> reached;
};

std::string wire_name(const CompiledSite &c, size_t wire) {
    if (wire < c.lowered.aux_qubits) {
        return "aux";
    }
    return "q" + std::to_string(c.site->qubits[wire - c.lowered.aux_qubits]);
}

std::string wire_list(const CompiledSite &c, const std::vector<size_t> &wires) {
    std::string out;
    for (size_t w : wires) {
        out += (out.empty() ? "" : ", ") + wire_name(c, w);
    }
    return out;
}

std::string gate_name_for(const std::string &site, const std::string &label) {
    std::string out = site + "_";
    for (char ch : label) {
        if (std::isalnum(static_cast<unsigned char>(ch))) {
            out += ch;
        }
    }
    return out;
}

}  // namespace

CampaignResult run_campaign(const Executor &executor, const CampaignOptions &options) {
    if (options.shots == 0) {
        throw Error(ErrorCode::ZeroShots, "a campaign needs at least one shot");
    }
    std::vector<const AssertStmt *> sites;
    CampaignResult result;
    std::map<std::string, size_t> index;
    for (const auto &[a, location] : assert_sites_with_locations(executor.program())) {
        index[a->site] = result.sites.size();
        result.sites.push_back({a->site, location, 0, 0});
    }
    TrajectoryOptions trajectory;
    trajectory.loop_cap = options.loop_cap;

    std::vector<Shot> shots(options.shots);
    auto work = [&](size_t worker, size_t workers) {
        for (uint64_t i = worker; i < options.shots; i += workers) {
            TrajectoryResult r = executor.run(Rng::derive_seed(options.seed, i), trajectory);
            Shot &s = shots[i];
            s.status = r.status;
            if (r.status == Status::Aborted) {
                s.aborted = index.at(r.aborted_site);
            }
            s.reached.resize(r.site_visits.size());
            for (size_t k = 0; k < r.site_visits.size(); k++) {
                s.reached[k] = r.site_visits[k] > 0;
            }
        }
    };
    const size_t jobs = std::max<size_t>(1, std::min<uint64_t>(options.jobs, options.shots));
    if (jobs == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> threads;
        for (size_t j = 0; j < jobs; j++) {
            threads.emplace_back(work, j, jobs);
        }
        for (auto &t : threads) {
            t.join();
        }
    }

    for (const Shot &s : shots) {
        for (size_t k = 0; k < s.reached.size(); k++) {
            result.sites[k].reached += s.reached[k];
        }
        switch (s.status) {
            case Status::Completed:
                result.completed++;
                break;
            case Status::Aborted:
                result.aborted++;
                result.sites[s.aborted].failures++;
                break;
            case Status::LoopCapExceeded:
                result.loop_cap_exceeded++;
                break;
        }
    }
    return result;
}

std::string sha256_hex(std::string_view text) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    std::string hex;
    char buf[3];
    for (unsigned int k = 0; k < length; k++) {
        std::snprintf(buf, sizeof buf, "%02x", digest[k]);
        hex += buf;
    }
    return hex;
}

std::string run_report(
    std::string_view program_text, const Executor &executor, const CampaignOptions &options,
    const CampaignResult &result) {
    const uint64_t l = result.sites.size();
    const uint64_t k = options.shots;

    Json report;
    report["schema"] = kReportSchema;
    report["program"] = Json{
        {"sha256", sha256_hex(program_text)},
        {"qubits", executor.program().qubit_count},
        {"sites", l},
    };
    report["mode"] = executor.mode() == Mode::Lowered ? "lowered" : "direct";
    report["shots"] = k;
    report["seed"] = options.seed;
    report["alpha"] = number(options.alpha);
    report["loop_cap"] = options.loop_cap ? Json(*options.loop_cap) : Json(nullptr);
    report["outcomes"] = Json{
        {"completed", result.completed},
        {"aborted", result.aborted},
        {"loop_cap_exceeded", result.loop_cap_exceeded},
    };

    std::optional<SegmentReport> segments;
    Json analysis_error = nullptr;
    if (l > 0) {
        AssertionCounts counts;
        counts.shots = k;
        for (const auto &s : result.sites) {
            counts.failures.push_back(s.failures);
        }
        try {
            if (options.epsilons) {
                segments = theorem2_report(counts, std::span<const double>(*options.epsilons), options.alpha);
            } else {
                segments = theorem2_report(counts, std::nullopt, options.alpha);
            }
        } catch (const Error &e) {
            analysis_error = e.what();
        }
    }

    Json sites = Json::array();
    for (size_t m = 0; m < l; m++) {
        const SiteTally &s = result.sites[m];
        Interval cp = clopper_pearson(s.failures, k, options.alpha);
        Json site{
            {"site", s.site},
            {"line", s.location.line},
            {"column", s.location.column},
            {"reached", s.reached},
            {"failures", s.failures},
            {"cp_interval", Json::array({number(cp.lo), number(cp.hi)})},
        };
        if (segments) {
            const SegmentVerdict &v = segments->segments[m];
            site["w_minus"] = number(v.w_minus);
            site["w_center"] = number(v.w_center);
            site["w_plus"] = number(v.w_plus);
        } else {
            site["w_minus"] = site["w_center"] = site["w_plus"] = nullptr;
        }
        site["epsilon"] = options.epsilons ? number((*options.epsilons)[m]) : Json(nullptr);
        if (segments && segments->segments[m].verdict) {
            site["verdict"] = verdict_name(*segments->segments[m].verdict);
        } else {
            site["verdict"] = nullptr;
        }
        sites.push_back(std::move(site));
    }
    report["sites"] = std::move(sites);

    report["global"] = Json{
        {"l", l},
        {"theorem1", l > 0 ? theorem1_json(l, k) : Json(nullptr)},
        {"delta", segments ? number(segments->delta) : Json(nullptr)},
        {"loop_cap_exceeded", result.loop_cap_exceeded},
        {"analysis_error", analysis_error},
    };
    return dump(report);
}

int campaign_exit_code(const CampaignResult &result, const CampaignOptions &options) {
    if (result.aborted > 0) {
        return 1;
    }
    if (options.epsilons && !result.sites.empty()) {
        AssertionCounts counts;
        counts.shots = options.shots;
        for (const auto &s : result.sites) {
            counts.failures.push_back(s.failures);
        }
        SegmentReport r = theorem2_report(counts, std::span<const double>(*options.epsilons), options.alpha);
        for (const auto &v : r.segments) {
            if (v.verdict == Verdict::Incorrect) {
                return 1;
            }
        }
    }
    return 0;
}

std::string tally_table(const CampaignResult &result) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line, "%-10s %10s %10s\n", "site", "reached", "failures");
    out << line;
    for (const auto &s : result.sites) {
        std::snprintf(
            line, sizeof line, "%-10s %10llu %10llu\n", s.site.c_str(), static_cast<unsigned long long>(s.reached),
            static_cast<unsigned long long>(s.failures));
        out << line;
    }
    std::snprintf(
        line, sizeof line, "completed %llu, aborted %llu, loop cap exceeded %llu\n",
        static_cast<unsigned long long>(result.completed), static_cast<unsigned long long>(result.aborted),
        static_cast<unsigned long long>(result.loop_cap_exceeded));
    out << line;
    return out.str();
}

std::string stats_report(
    uint64_t l, uint64_t k, const std::optional<std::vector<uint64_t>> &failures,
    const std::optional<std::vector<double>> &epsilons, double alpha) {
    if (failures && failures->size() != l) {
        throw Error(ErrorCode::BadArgs, "--failures needs one count per site");
    }
    if (epsilons && epsilons->size() != l) {
        throw Error(ErrorCode::BadArgs, "--epsilons needs one value per site");
    }
    Json report;
    report["l"] = l;
    report["k"] = k;
    report["alpha"] = number(alpha);
    report["theorem1"] = theorem1_json(l, k);
    if (failures) {
        AssertionCounts counts{*failures, k};
        SegmentReport r = epsilons ? theorem2_report(counts, std::span<const double>(*epsilons), alpha)
                                   : theorem2_report(counts, std::nullopt, alpha);
        Json segments = Json::array();
        for (size_t m = 0; m < l; m++) {
            const SegmentVerdict &v = r.segments[m];
            segments.push_back(Json{
                {"site", m + 1},
                {"failures", (*failures)[m]},
                {"w_minus", number(v.w_minus)},
                {"w_center", number(v.w_center)},
                {"w_plus", number(v.w_plus)},
                {"epsilon", epsilons ? number((*epsilons)[m]) : Json(nullptr)},
                {"verdict", v.verdict ? Json(verdict_name(*v.verdict)) : Json(nullptr)},
            });
        }
        report["theorem2"] = Json{{"segments", std::move(segments)}, {"delta", number(r.delta)}};
    }
    return dump(report);
}

std::vector<CompiledSite> compile_program(const Program &program) {
    std::vector<CompiledSite> out;
    for (const AssertStmt *a : assert_sites(program)) {
        CompiledSite c;
        c.site = a;
        if (a->lowered) {
            c.hand = true;
            c.lowered = hand_lowering(*a, program);
            verify_hand_lowering(*a, c.lowered);
            c.counts = count_resources(lower_projection(a->site, hand_target(*a, c.lowered)), c.lowered);
        } else {
            c.lowered = lower_assertion(*a, program.qubit_count);
            c.counts = count_resources(c.lowered);
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::string compile_listing(const std::vector<CompiledSite> &sites) {
    std::ostringstream out;
    for (const auto &c : sites) {
        std::vector<size_t> qubits = c.site->qubits;
        std::string on;
        for (size_t q : qubits) {
            on += (on.empty() ? "q" : ", q") + std::to_string(q);
        }
        out << c.site->site << " on " << on << " (" << (c.hand ? "hand" : "compiled") << ", rank "
            << c.site->projection->rank() << ", aux " << c.lowered.aux_qubits << ")\n";
        if (c.lowered.always_aborts()) {
            out << "    ABORT-ALWAYS\n";
            continue;
        }
        if (c.lowered.steps.empty()) {
            out << "    (identity predicate, nothing to check)\n";
        }
        for (const auto &step : c.lowered.steps) {
            switch (step.kind) {
                case LoweredStep::Kind::Unitary:
                    out << "    " << step.label << " " << wire_list(c, step.wires) << "    # generic unitary\n";
                    break;
                case LoweredStep::Kind::Gate:
                    out << "    " << step.label << " " << wire_list(c, step.wires) << "\n";
                    break;
                case LoweredStep::Kind::Check:
                    out << "    check " << wire_list(c, step.wires) << " = " << step.expected << "\n";
                    break;
                case LoweredStep::Kind::Abort:
                    out << "    abort\n";
                    break;
            }
        }
    }
    return out.str();
}

std::string counts_table(const std::vector<CompiledSite> &sites) {
    std::ostringstream out;
    char line[160];
    const char *format = "%-10s %6s %6s %6s %10s %8s %4s\n";
    std::snprintf(line, sizeof line, format, "site", "H", "CNOT", "other", "generic-U", "measure", "aux");
    out << line;
    for (const auto &c : sites) {
        const ResourceCount &r = c.counts;
        std::snprintf(
            line, sizeof line, format, c.site->site.c_str(), std::to_string(r.h_gates).c_str(),
            std::to_string(r.cnot_gates).c_str(), std::to_string(r.other_gates()).c_str(),
            std::to_string(r.generic_unitaries).c_str(), std::to_string(r.measurements).c_str(),
            std::to_string(r.aux_qubits).c_str());
        out << line;
    }
    return out.str();
}

std::string lowered_program(const Program &program, const std::vector<CompiledSite> &sites) {
    Program out = program;
    std::map<std::string, std::vector<HandStep>> steps_by_site;
    for (const auto &c : sites) {
        if (c.hand) {
            continue;
        }
        std::vector<HandStep> steps;
        for (const auto &step : c.lowered.steps) {
            HandStep h;
            for (size_t w : step.wires) {
                h.wires.push_back(w < c.lowered.aux_qubits ? kAuxWire : c.site->qubits[w - c.lowered.aux_qubits]);
            }
            switch (step.kind) {
                case LoweredStep::Kind::Unitary:
                case LoweredStep::Kind::Gate: {
                    h.kind = HandStep::Kind::Gate;
                    h.gate = step.kind == LoweredStep::Kind::Gate ? step.label : gate_name_for(c.site->site, step.label);
                    if (step.kind == LoweredStep::Kind::Unitary) {
                        std::string base = h.gate;
                        for (int suffix = 2; out.gate_definitions.count(h.gate); suffix++) {
                            h.gate = base + "_" + std::to_string(suffix);
                        }
                        out.gate_definitions[h.gate] = step.matrix;
                    }
                    break;
                }
                case LoweredStep::Kind::Check:
                    h.kind = HandStep::Kind::Check;
                    h.expected = step.expected;
                    break;
                case LoweredStep::Kind::Abort:
                    h.kind = HandStep::Kind::Abort;
                    break;
            }
            steps.push_back(std::move(h));
        }
        steps_by_site[c.site->site] = std::move(steps);
    }
    std::function<void(Block &)> rewrite = [&](Block &block) {
        for (auto &stmt : block) {
            if (auto *a = std::get_if<AssertStmt>(&stmt.node)) {
                auto it = steps_by_site.find(a->site);
                if (it != steps_by_site.end()) {
                    a->lowered = it->second;
                }
            } else if (auto *i = std::get_if<IfStmt>(&stmt.node)) {
                rewrite(i->then_body);
                rewrite(i->else_body);
            } else if (auto *w = std::get_if<WhileStmt>(&stmt.node)) {
                rewrite(w->body);
            }
        }
    };
    rewrite(out.body);
    return print_program(out);
}

std::string state_histogram(const Executor &executor, const std::string &site, size_t loop_cap) {
    const size_t n = executor.program().qubit_count;
    SemanticResult r = executor.semantics(DensityOperator::from_state(StateVector::zero_state(n)), loop_cap);
    auto it = r.site_states.find(site);
    if (it == r.site_states.end()) {
        throw Error(ErrorCode::BadArgs, "assertion " + site + " is never reached");
    }
    double mass = it->second.trace().real();
    if (mass <= kGhostBranchProbability) {
        throw Error(ErrorCode::BadArgs, "assertion " + site + " is reached with zero probability");
    }
    std::ostringstream out;
    out << "basis,probability\n";
    char buf[40];
    for (Eigen::Index i = 0; i < it->second.rows(); i++) {
        std::string basis(n, '0');
        for (size_t q = 0; q < n; q++) {
            if ((static_cast<size_t>(i) >> (n - 1 - q)) & 1) {
                basis[q] = '1';
            }
        }
        std::snprintf(buf, sizeof buf, "%.*g", kReportDigits, std::max(0.0, it->second(i, i).real() / mass));
        out << basis << "," << buf << "\n";
    }
    return out.str();
}

}  // namespace qassert
