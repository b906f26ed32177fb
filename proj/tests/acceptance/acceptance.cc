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

// Acceptance suite: one PASS/FAIL line per criterion. With an argument N only
// criterion N runs; the exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "../test_util.h"
#include "qassert/cases.h"
#include "qassert/interpreter.h"
#include "qassert/lower.h"
#include "qassert/parser.h"
#include "qassert/projections.h"
#include "qassert/report.h"
#include "qassert/states.h"
#include "qassert/stats.h"

using namespace qassert;
using namespace qassert::testing;
using Json = nlohmann::ordered_json;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char *format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

std::filesystem::path scratch(const std::string &name) {
    return std::filesystem::temp_directory_path() / ("qassert_acceptance_" + std::to_string(::getpid()) + "_" + name);
}

std::string slurp(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

// Runs the command-line tool; returns its exit status and captured stdout.
std::pair<int, std::string> cli(const std::string &args) {
    std::filesystem::path out = scratch("stdout.txt");
    std::string command = std::string(QASSERT_CLI) + " " + args + " > " + out.string();
    int status = std::system(command.c_str());
    std::string text = slurp(out);
    std::filesystem::remove(out);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text};
}

std::string program_path(const char *name) {
    return std::string(QASSERT_SOURCE_DIR) + "/programs/" + name;
}

Outcome shor_end_to_end() {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    std::filesystem::path report = scratch("shor.json");
    auto [status, out] = cli("run --program " + program_path("shor.qw") + " --shots 1000 --seed 7 --out " + report.string());
    double elapsed = seconds_since(start);
    Json j = Json::parse(slurp(report));
    std::filesystem::remove(report);
    for (const auto &site : j["sites"]) {
        uint64_t failures = site["failures"];
        o.require(failures == 0, site["site"].get<std::string>() + " failures " + std::to_string(failures) + "/1000");
    }
    o.require(j["global"]["loop_cap_exceeded"] == 0, "loop cap exceeded");
    o.require(status == 0, "exit status " + std::to_string(status));
    Program shor = build_shor();
    SemanticResult exact =
        semantic_function(shor, DensityOperator::from_state(StateVector::zero_state(5)), 8, Mode::Direct);
    for (const AssertStmt *a : assert_sites(shor)) {
        double v = site_violation(shor, exact, a->site);
        o.require(v <= 1e-9, a->site + " exact violation " + fmt("%.6g", v));
    }
    o.require(elapsed < 10, "runtime " + fmt("%.2f", elapsed) + " s");
    return o;
}

Outcome gate_count_table() {
    Outcome o;
    auto [status, out] = cli("compile --program " + program_path("shor.qw") + " --counts");
    o.require(status == 0, "exit status " + std::to_string(status));
    std::map<std::string, std::vector<int>> rows;
    std::istringstream in(out.substr(out.find("site ")));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::istringstream cells(line);
        std::string site;
        int h, cnot, other, generic, measure, aux;
        if (cells >> site >> h >> cnot >> other >> generic >> measure >> aux) {
            rows[site] = {h, cnot, measure, aux};
        }
    }
    const std::map<std::string, std::vector<int>> expected{
        {"A0", {0, 0, 5, 0}},
        {"A1", {6, 0, 3, 0}},
        {"A3", {2, 0, 3, 0}},
    };
    for (const auto &[site, want] : expected) {
        o.require(rows.count(site) && rows[site] == want, site + " row differs");
    }
    return o;
}

Outcome hhl_end_to_end() {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    HhlData d = hhl_data();
    const double spectrum[] = {3, 3, 1, 1};
    for (size_t k = 0; k < 4; k++) {
        o.require(std::abs(d.eigenvalues[k] - spectrum[k]) <= 0.02, "eigenvalue " + fmt("%.6f", d.eigenvalues[k]));
    }
    std::filesystem::path report = scratch("hhl.json");
    auto [status, out] = cli("run --program " + program_path("hhl.qw") + " --shots 200 --seed 1 --out " + report.string());
    Json j = Json::parse(slurp(report));
    std::filesystem::remove(report);
    for (const auto &site : j["sites"]) {
        uint64_t failures = site["failures"];
        o.require(failures == 0, site["site"].get<std::string>() + " failures " + std::to_string(failures));
    }
    o.require(status == 0, "exit status " + std::to_string(status));

    // Fidelity of the system register with the classical solution on every
    // completed shot.
    Executor ex(build_hhl(), Mode::Lowered);
    double worst = 1;
    size_t completed = 0;
    std::vector<size_t> keep{2, 3};
    for (uint64_t i = 0; i < 200; i++) {
        TrajectoryResult r = ex.run(Rng::derive_seed(1, i));
        if (r.status != Status::Completed) {
            continue;
        }
        completed++;
        const ComplexVector &psi = r.final_state.amplitudes();
        ComplexMatrix q = partial_trace(psi * psi.adjoint(), 5, keep);
        worst = std::min(worst, (d.x_printed.adjoint() * q * d.x_printed)(0, 0).real());
    }
    o.require(completed > 0, "no completed shots");
    o.require(worst >= 1 - 1e-6, "fidelity " + fmt("%.10f", worst));
    double elapsed = seconds_since(start);
    o.require(elapsed < 30, "runtime " + fmt("%.2f", elapsed) + " s");
    if (o.pass) {
        o.detail = "worst fidelity " + fmt("%.10f", worst);
    }
    return o;
}

Program single_assert(const Projection &p) {
    AssertStmt a;
    a.site = "E";
    for (size_t q = 0; q < p.ambient_qubits(); q++) {
        a.qubits.push_back(q);
    }
    a.expr = expr_from_projection(p);
    a.projection = std::make_shared<const Projection>(p);
    Program program;
    program.qubit_count = p.ambient_qubits();
    program.body.push_back(Statement{std::move(a), {}});
    return program;
}

Outcome lowering_equivalence() {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(404);
    size_t cases = 0;
    double worst_pass = 0, worst_state = 0;
    for (size_t n = 1; n <= 3; n++) {
        for (size_t r = 1; r <= (size_t{1} << n); r++) {
            for (int rep = 0; rep < 2; rep++) {
                Program program = single_assert(random_projection(rng, n, r));
                Executor direct(program, Mode::Direct);
                Executor lowered(program, Mode::Lowered);
                cases++;
                for (int trial = 0; trial < 10; trial++) {
                    DensityOperator rho = random_density(rng, n, 1 + trial % 3);
                    SemanticResult a = direct.semantics(rho);
                    SemanticResult b = lowered.semantics(rho);
                    double pa = a.completion_mass(), pb = b.completion_mass();
                    worst_pass = std::max(worst_pass, std::abs(pa - pb));
                    if (pa > 1e-6) {
                        double td = trace_distance(DensityOperator(a.rho_out / pa, n), DensityOperator(b.rho_out / pb, n));
                        worst_state = std::max(worst_state, td);
                    }
                }
            }
        }
    }
    o.require(cases >= 20, "only " + std::to_string(cases) + " projections");
    o.require(worst_pass <= 1e-9, "pass probability gap " + fmt("%.3g", worst_pass));
    o.require(worst_state <= 1e-9, "post-state distance " + fmt("%.3g", worst_state));
    double elapsed = seconds_since(start);
    o.require(elapsed < 20, "runtime " + fmt("%.2f", elapsed) + " s");
    if (o.pass) {
        o.detail = std::to_string(cases) + " projections, max gaps " + fmt("%.2g", worst_pass) + " / " +
                   fmt("%.2g", worst_state);
    }
    return o;
}

Outcome bug_detection() {
    Outcome o;
    Program shor = build_shor();
    for (const auto &example : shor_bug_examples()) {
        Program bugged = inject_bug(shor, example.bug);
        Executor ex(bugged, Mode::Lowered);
        SemanticResult exact = ex.semantics(DensityOperator::from_state(StateVector::zero_state(5)), 1000);
        double oracle = exact.abort_mass.at(example.site);
        CampaignOptions options;
        options.shots = 1000;
        options.seed = 2026;
        CampaignResult r = run_campaign(ex, options);
        uint64_t failures = 0;
        for (const auto &s : r.sites) {
            if (s.site == example.site) {
                failures = s.failures;
            }
        }
        Interval cp = clopper_pearson(failures, options.shots, 0.05);
        o.require(oracle > 0.01, example.name + " oracle violation " + fmt("%.4f", oracle));
        o.require(cp.lo <= oracle && oracle <= cp.hi,
                  example.name + " oracle " + fmt("%.4f", oracle) + " outside CP interval of " + std::to_string(failures) +
                      "/1000");
        o.detail += (o.detail.empty() ? "" : ", ") + example.name + " " + std::to_string(failures) + "/1000 vs " +
                    fmt("%.3f", oracle);
    }
    return o;
}

Outcome gentle_measurement() {
    Outcome o;
    std::mt19937_64 rng(606);
    size_t violations = 0;
    for (int trial = 0; trial < 1000; trial++) {
        size_t n = 1 + trial % 3;
        size_t dim = size_t{1} << n;
        Projection p = random_projection(rng, n, 1 + rng() % dim);
        DensityOperator rho = random_density(rng, n, 1 + static_cast<Eigen::Index>(rng() % dim));
        ComplexMatrix pm = p.as_matrix();
        double pass = (pm * rho.matrix()).trace().real();
        if (pass < 1e-9) {
            continue;
        }
        double eps = std::clamp(1 - pass, 0.0, 1.0);
        DensityOperator post(pm * rho.matrix() * pm / pass, n);
        GentleBounds g = gentle_bounds(eps);
        if (trace_distance(rho, post) > g.d_upper + 1e-9 || fidelity(rho, post) < g.f_lower - 1e-9) {
            violations++;
        }
    }
    o.require(violations == 0, std::to_string(violations) + " of 1000 trials break a bound");
    return o;
}

Outcome statistics_numerics() {
    Outcome o;
    double worst = 0;
    for (double p : {0.025, 0.5, 0.975}) {
        for (double b = 1; b <= 1e4; b *= 1.5) {
            double shape = std::round(b);
            worst = std::max(worst, std::abs(beta_quantile(p, 1, shape) - (1 - std::pow(1 - p, 1 / shape))));
        }
    }
    o.require(worst <= 1e-10, "beta quantile closed-form gap " + fmt("%.3g", worst));
    double cp = cp_zero_interval(100, 0.05).hi;
    o.require(std::abs(cp - 0.036221) <= 1e-6, "cp_zero_interval(100, 0.05) = " + fmt("%.9f", cp) + ", expected 0.036221");
    DistanceBounds t1 = theorem1_intervals(4, 10000);
    o.require(std::abs(t1.d_hi - 0.056) <= 1e-15 && std::abs(t1.f_lo - std::cos(0.056)) <= 1e-15, "distance and fidelity bounds for l=4, k=10000");
    AssertionCounts counts{{0}, 100};
    double delta = theorem2_report(counts, std::nullopt).delta;
    o.require(std::abs(delta - 0.19025) <= 1e-4, "delta " + fmt("%.6f", delta));
    return o;
}

Outcome coverage() {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(808);
    std::binomial_distribution<uint64_t> draw(500, 0.01);
    size_t covered = 0;
    const size_t reps = 10000;
    for (size_t r = 0; r < reps; r++) {
        AssertionCounts counts{{draw(rng)}, 500};
        SegmentVerdict v = theorem2_report(counts, std::nullopt).segments[0];
        covered += v.w_minus <= 0.01 && 0.01 <= v.w_plus;
    }
    double rate = static_cast<double>(covered) / reps;
    o.require(rate >= 0.94, "coverage " + fmt("%.4f", rate));
    double elapsed = seconds_since(start);
    o.require(elapsed < 10, "runtime " + fmt("%.2f", elapsed) + " s");
    if (o.pass) {
        o.detail = "coverage " + fmt("%.4f", rate);
    }
    return o;
}

Outcome lattice_properties() {
    Outcome o;
    std::mt19937_64 rng(909);
    size_t broken = 0;
    for (int trial = 0; trial < 100; trial++) {
        size_t n = 1 + trial % 3;
        size_t dim = size_t{1} << n;
        Projection p = random_projection(rng, n, rng() % (dim + 1));
        Projection q = random_projection(rng, n, rng() % (dim + 1));
        ComplexMatrix pm = p.as_matrix();
        bool ok = (pm * pm - pm).norm() <= 1e-9 && (pm - pm.adjoint()).norm() <= 1e-9;
        Projection np = complement(p);
        ok = ok && meet(p, np).rank() == 0 && join(p, np).rank() == dim && p.rank() + np.rank() == dim;
        ok = ok && same_subspace(complement(np), p);
        Projection m = meet(p, q), j = join(p, q);
        ok = ok && m.rank() + j.rank() == p.rank() + q.rank();
        ComplexMatrix mm = m.as_matrix(), jm = j.as_matrix();
        ok = ok && (pm * mm - mm).norm() <= 1e-8 && (q.as_matrix() * mm - mm).norm() <= 1e-8;
        ok = ok && (jm * pm - pm).norm() <= 1e-8 && (jm * q.as_matrix() - q.as_matrix()).norm() <= 1e-8;
        if (n >= 2 && p.rank() > 0) {
            std::vector<size_t> keep{static_cast<size_t>(rng() % n)};
            DensityOperator rho = random_density_inside(rng, p, 2);
            Projection lp = local_projection(p, keep);
            ComplexMatrix reduced = partial_trace(rho.matrix(), n, keep);
            ok = ok && std::abs((lp.as_matrix() * reduced).trace().real() - 1) <= 1e-9;
            ok = ok && satisfies(rho, embed(lp, keep, n));
        }
        broken += !ok;
    }
    o.require(broken == 0, std::to_string(broken) + " of 100 trials break a law");
    return o;
}

Outcome determinism() {
    Outcome o;
    for (const char *name : {"shor.qw", "hhl.qw"}) {
        std::string base = "run --program " + program_path(name) + " --shots 500 --seed 99";
        auto [s1, one] = cli(base + " --jobs 1");
        auto [s8, eight] = cli(base + " --jobs 8");
        o.require(!one.empty() && one == eight, std::string(name) + " reports differ between --jobs 1 and 8");
    }
    return o;
}

struct Criterion {
    const char *name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char **argv) {
    const std::vector<Criterion> criteria{
        {"Shor end-to-end", shor_end_to_end},
        {"gate-count table", gate_count_table},
        {"HHL end-to-end", hhl_end_to_end},
        {"lowering equivalence", lowering_equivalence},
        {"bug detection", bug_detection},
        {"gentle measurement bounds", gentle_measurement},
        {"statistics numerics", statistics_numerics},
        {"coverage Monte Carlo", coverage},
        {"projection lattice properties", lattice_properties},
        {"report determinism", determinism},
    };
    size_t only = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 0;
    bool all_pass = true;
    for (size_t k = 0; k < criteria.size(); k++) {
        if (only && only != k + 1) {
            continue;
        }
        Outcome o;
        try {
            o = criteria[k].run();
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        all_pass = all_pass && o.pass;
        std::cout << "criterion " << k + 1 << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[k].name
                  << (o.detail.empty() ? "" : ": " + o.detail) << std::endl;
    }
    return all_pass ? 0 : 1;
}
