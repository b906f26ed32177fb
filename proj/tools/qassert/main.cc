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

// Command-line front end: run campaigns, compile assertions, evaluate the
// statistics and emit the case-study programs.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qassert/cases.h"
#include "qassert/error.h"
#include "qassert/interpreter.h"
#include "qassert/parser.h"
#include "qassert/printer.h"
#include "qassert/report.h"

using namespace qassert;

namespace {

constexpr int kUsageError = 2;

// Thrown for bad input files or flags; reported on stderr with exit status 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot open " + path);
    }
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw UsageError("cannot write " + path);
    }
}

Program load(const std::string &path, std::string &text) {
    text = read_file(path);
    try {
        return parse_program(text);
    } catch (const Error &e) {
        throw UsageError(path + ":" + e.what());
    }
}

struct RunArgs {
    std::string program;
    uint64_t shots = 0;
    uint64_t seed = 0;
    double alpha = 0.05;
    std::vector<double> epsilons;
    std::string mode = "lowered";
    std::string out;
    size_t loop_cap = 0;
    size_t jobs = 1;
    std::string dump_site;
    std::string dump_file;
};

int cmd_run(const RunArgs &args) {
    std::string text;
    Program program = load(args.program, text);
    Mode mode = args.mode == "direct" ? Mode::Direct : Mode::Lowered;
    std::optional<Executor> executor;
    try {
        executor.emplace(program, mode);
    } catch (const Error &e) {
        throw UsageError(e.what());
    }
    CampaignOptions options;
    options.shots = args.shots;
    options.seed = args.seed;
    options.alpha = args.alpha;
    options.jobs = args.jobs;
    if (args.loop_cap) {
        options.loop_cap = args.loop_cap;
    }
    if (!args.epsilons.empty()) {
        if (args.epsilons.size() != assert_sites(program).size()) {
            throw UsageError("--epsilons needs one value per assertion");
        }
        options.epsilons = args.epsilons;
    }
    if (!args.dump_site.empty()) {
        std::string csv = state_histogram(*executor, args.dump_site, args.loop_cap ? args.loop_cap : 64);
        write_file(args.dump_file.empty() ? "state_" + args.dump_site + ".csv" : args.dump_file, csv);
    }
    CampaignResult result = run_campaign(*executor, options);
    std::string report = run_report(text, *executor, options, result);
    if (args.out.empty()) {
        std::cout << report;
    } else {
        write_file(args.out, report);
        std::cout << tally_table(result);
    }
    return campaign_exit_code(result, options);
}

struct CompileArgs {
    std::string program;
    std::string site;
    std::string emit;
    bool counts = false;
};

int cmd_compile(const CompileArgs &args) {
    std::string text;
    Program program = load(args.program, text);
    std::vector<CompiledSite> sites;
    try {
        sites = compile_program(program);
    } catch (const Error &e) {
        throw UsageError(e.what());
    }
    if (!args.emit.empty()) {
        write_file(args.emit, lowered_program(program, sites));
    }
    if (!args.site.empty()) {
        std::erase_if(sites, [&](const CompiledSite &c) { return c.site->site != args.site; });
        if (sites.empty()) {
            throw UsageError("no assertion named " + args.site);
        }
    }
    std::cout << compile_listing(sites);
    if (args.counts) {
        std::cout << "\n" << counts_table(sites);
    }
    return 0;
}

struct StatsArgs {
    uint64_t l = 0;
    uint64_t k = 0;
    std::vector<uint64_t> failures;
    std::vector<double> epsilons;
    double alpha = 0.05;
};

int cmd_stats(const StatsArgs &args) {
    std::optional<std::vector<uint64_t>> failures;
    std::optional<std::vector<double>> epsilons;
    if (!args.failures.empty()) {
        failures = args.failures;
    }
    if (!args.epsilons.empty()) {
        epsilons = args.epsilons;
    }
    try {
        std::cout << stats_report(args.l, args.k, failures, epsilons, args.alpha);
    } catch (const Error &e) {
        throw UsageError(e.what());
    }
    return 0;
}

struct EmitArgs {
    std::string which;
    std::string bug;
    std::string out;
};

int cmd_emit(const EmitArgs &args) {
    std::string text;
    if (args.which == "shor") {
        text = shor_source();
        if (!args.bug.empty()) {
            std::optional<BugExample> chosen;
            for (const auto &example : shor_bug_examples()) {
                if (example.name == args.bug) {
                    chosen = example;
                }
            }
            if (!chosen) {
                throw UsageError("unknown bug " + args.bug);
            }
            text = print_program(inject_bug(build_shor(), chosen->bug));
        }
    } else {
        if (!args.bug.empty()) {
            throw UsageError("--bug applies to the shor program only");
        }
        text = hhl_source();
    }
    if (args.out.empty()) {
        std::cout << text;
    } else {
        write_file(args.out, text);
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Runtime assertions for quantum while-programs"};
    app.require_subcommand(1);

    RunArgs run;
    CLI::App *run_cmd = app.add_subcommand("run", "Execute seeded shots and write a JSON report");
    run_cmd->add_option("--program", run.program, "DSL file")->required();
    run_cmd->add_option("--shots", run.shots, "Number of shots")->required()->check(CLI::PositiveNumber);
    run_cmd->add_option("--seed", run.seed, "Master seed")->required();
    run_cmd->add_option("--alpha", run.alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
    run_cmd->add_option("--epsilons", run.epsilons, "Declared tolerance per assertion")->delimiter(',');
    run_cmd->add_option("--mode", run.mode, "lowered or direct")->check(CLI::IsMember({"lowered", "direct"}));
    run_cmd->add_option("--out", run.out, "Report path (default: stdout)");
    run_cmd->add_option("--loop-cap", run.loop_cap, "Override every loop's iteration cap")->check(CLI::PositiveNumber);
    run_cmd->add_option("--jobs", run.jobs, "Worker threads")->check(CLI::PositiveNumber);
    run_cmd->add_option("--dump-state", run.dump_site, "Write the exact state histogram at this assertion");
    run_cmd->add_option("--dump-file", run.dump_file, "CSV path for --dump-state (default: state_<site>.csv)");

    CompileArgs compile;
    CLI::App *compile_cmd = app.add_subcommand("compile", "Lower assertions to single-qubit checks");
    compile_cmd->add_option("--program", compile.program, "DSL file")->required();
    compile_cmd->add_option("--site", compile.site, "Only this assertion");
    compile_cmd->add_option("--emit", compile.emit, "Write the program with explicit lowered blocks");
    compile_cmd->add_flag("--counts", compile.counts, "Print the resource table");

    StatsArgs stats;
    CLI::App *stats_cmd = app.add_subcommand("stats", "Confidence intervals for l assertions over k shots");
    stats_cmd->add_option("--l", stats.l, "Number of assertions")->required();
    stats_cmd->add_option("--k", stats.k, "Number of shots")->required();
    stats_cmd->add_option("--failures", stats.failures, "Failures per assertion")->delimiter(',');
    stats_cmd->add_option("--epsilons", stats.epsilons, "Declared tolerance per assertion")->delimiter(',');
    stats_cmd->add_option("--alpha", stats.alpha, "Significance level")->check(CLI::Range(0.0, 1.0));

    EmitArgs emit;
    CLI::App *emit_cmd = app.add_subcommand("emit", "Print a case-study program");
    emit_cmd->add_option("case", emit.which, "shor or hhl")->required()->check(CLI::IsMember({"shor", "hhl"}));
    emit_cmd->add_option("--bug", emit.bug, "Inject a named bug (drop-first-H, cnot-q4-to-q3, insert-X-q4)");
    emit_cmd->add_option("--out", emit.out, "Output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : kUsageError;
    }

    try {
        if (*run_cmd) {
            return cmd_run(run);
        }
        if (*compile_cmd) {
            return cmd_compile(compile);
        }
        if (*stats_cmd) {
            return cmd_stats(stats);
        }
        return cmd_emit(emit);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    }
}
