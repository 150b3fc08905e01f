// Copyright 2026 The qfix Authors.
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include "qfix/cli.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qfix/analysis.hpp"
#include "qfix/expander.hpp"
#include "qfix/experiment.hpp"
#include "qfix/generator.hpp"
#include "qfix/io.hpp"
#include "qfix/reducer.hpp"
#include "qfix/solvers.hpp"

namespace qfix::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Writes to a file when a path is given, otherwise to the fallback stream.
class Sink {
 public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (path.empty() || path == "-") {
            stream_ = &fallback;
        } else {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw InputError("cannot write " + path);
            stream_ = file_.get();
        }
    }
    std::ostream& get() { return *stream_; }

 private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
};

std::uint64_t default_seed() {
    const char* env = std::getenv("QPRO_SEED");
    if (env == nullptr || *env == '\0') return 1;
    std::string_view text(env);
    std::uint64_t seed = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw UsageError("QPRO_SEED must be an unsigned integer, got '" + std::string(text) + "'");
    }
    return seed;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return in;
}

std::string describe(const GeneratorConfig& g) {
    std::ostringstream s;
    s << "n=" << g.n << " edges=" << g.edges << " ub=" << g.ub << " lin_mult=" << g.lin_mult
      << " quad_mult=" << g.quad_mult << " pct_quad_mult=" << g.pct_quad_mult
      << " pct_lin_mult=" << g.pct_lin_mult << " pct_lin_nonzero=" << g.pct_lin_nonzero
      << " hub_fraction=" << g.hub_fraction << " hub_edge_share=" << g.hub_edge_share
      << " seed=" << g.seed;
    return s.str();
}

// Generator flags shared by `generate` and `experiment`.
struct GeneratorFlags {
    std::string preset = "P1";
    std::optional<Index> n;
    std::optional<std::size_t> edges;
    std::optional<Coeff> ub, lin_mult, quad_mult;
    std::optional<double> pct_quad_mult, pct_lin_mult, pct_lin_nonzero;
    std::optional<double> hub_fraction, hub_edge_share;
    std::optional<std::uint64_t> seed;

    void add_size(CLI::App* cmd) {
        cmd->add_option("--preset", preset, "Problem size preset P1..P6")->capture_default_str();
        cmd->add_option("--n", n, "Override node count");
        cmd->add_option("--edges", edges, "Override off-diagonal entry count");
        cmd->add_option("--hub-fraction", hub_fraction, "Fraction of nodes that are hubs");
        cmd->add_option("--hub-edge-share", hub_edge_share,
                        "Fraction of non-tree edges anchored at a hub");
        cmd->add_option("--seed", seed, "Random seed (default: $QPRO_SEED or 1)");
    }

    void add_factors(CLI::App* cmd) {
        cmd->add_option("--ub", ub, "Coefficient bound");
        cmd->add_option("--lin-mult", lin_mult, "Linear multiplier");
        cmd->add_option("--quad-mult", quad_mult, "Quadratic multiplier");
        cmd->add_option("--pct-quad-mult", pct_quad_mult, "Fraction of quadratic entries multiplied");
        cmd->add_option("--pct-lin-mult", pct_lin_mult, "Fraction of linear entries multiplied");
        cmd->add_option("--pct-lin-nonzero", pct_lin_nonzero,
                        "Fraction of variables with a linear term");
    }

    ProblemSize size() const {
        ProblemSize s = size_preset(preset);
        if (n) s.n = *n;
        if (edges) s.edges = *edges;
        return s;
    }
};

int cmd_reduce(const std::string& input, const std::string& output, const std::string& log_path,
               std::ostream& out) {
    const QuboInstance q = read_instance_file(input);
    const auto start = std::chrono::steady_clock::now();
    ReductionResult result = reduce(q);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    std::vector<std::string> comments = {
        "reduced from " + input,
        "offset " + std::to_string(result.log.offset) + " (add to reduced objective)",
    };
    write_instance_file(output, result.reduced, comments);

    ReductionReport report{result.log, entry_count(q), entry_count(result.reduced),
                           elapsed.count()};
    Sink sink(log_path, out);
    sink.get() << report_to_json(report).dump(2) << '\n';
    return kExitOk;
}

int cmd_generate(const GeneratorFlags& flags, int test, const std::string& output,
                 std::ostream& out) {
    GeneratorConfig g;
    const ProblemSize size = flags.size();
    g.n = size.n;
    g.edges = size.edges;
    apply_design(g, design_point(test));
    if (flags.ub) g.ub = *flags.ub;
    if (flags.lin_mult) g.lin_mult = *flags.lin_mult;
    if (flags.quad_mult) g.quad_mult = *flags.quad_mult;
    if (flags.pct_quad_mult) g.pct_quad_mult = *flags.pct_quad_mult;
    if (flags.pct_lin_mult) g.pct_lin_mult = *flags.pct_lin_mult;
    if (flags.pct_lin_nonzero) g.pct_lin_nonzero = *flags.pct_lin_nonzero;
    if (flags.hub_fraction) g.hub_fraction = *flags.hub_fraction;
    if (flags.hub_edge_share) g.hub_edge_share = *flags.hub_edge_share;
    g.seed = flags.seed ? *flags.seed : default_seed();

    const QuboInstance q = generate(g);
    std::vector<std::string> comments = {
        "generated preset=" + flags.preset + " test=" + std::to_string(test),
        describe(g),
    };
    Sink sink(output, out);
    write_instance(sink.get(), q, comments);
    return kExitOk;
}

int cmd_solve(const std::string& input, const std::string& method, const TabuParams& params,
              const std::string& output, std::ostream& out) {
    const QuboInstance q = read_instance_file(input);
    Solution s;
    if (method == "brute") {
        BruteForceResult r = brute_force(q);
        s = {std::move(r.assignment), r.value};
    } else {
        s = tabu_search(q, params);
    }
    Sink sink(output, out);
    write_solution(sink.get(), s);
    return kExitOk;
}

int cmd_lift(const std::string& report_path, const std::string& solution_path,
             const std::string& original_path, const std::string& output, std::ostream& out) {
    auto report_in = open_input(report_path);
    const ReductionLog log = read_reduction_report(report_in, report_path);
    auto solution_in = open_input(solution_path);
    const Solution reduced = read_solution(solution_in, solution_path);

    Solution full;
    full.assignment = extend(log, reduced.assignment);
    full.objective = checked_add(reduced.objective, log.offset);
    if (!original_path.empty()) {
        const QuboInstance original = read_instance_file(original_path);
        if (original.size() != log.original_size) {
            throw InputError(original_path + " does not match the report's original size");
        }
        const Coeff actual = evaluate(original, full.assignment);
        if (actual != full.objective) {
            throw InputError("lifted objective " + std::to_string(actual) +
                             " disagrees with reduced objective plus offset " +
                             std::to_string(full.objective));
        }
    }
    Sink sink(output, out);
    write_solution(sink.get(), full);
    return kExitOk;
}

int cmd_expand(const std::string& input, std::size_t max_degree, std::optional<Coeff> penalty,
               const std::string& output, const std::string& log_path, std::ostream& out) {
    const QuboInstance q = read_instance_file(input);
    ExpansionResult r = enforce_degree_cap(q, max_degree, penalty);
    std::vector<std::string> comments = {
        "expanded from " + input + " to max degree " + std::to_string(max_degree),
        "penalty " + std::to_string(r.log.penalty) + ", " + std::to_string(r.log.groups.size()) +
            " coupled groups",
    };
    write_instance_file(output, r.expanded, comments);
    if (!log_path.empty()) {
        Sink sink(log_path, out);
        sink.get() << log_to_json(r.log).dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_sensitivity(const std::string& input, const std::string& output, std::ostream& out) {
    const QuboInstance q = read_instance_file(input);
    Sink sink(output, out);
    auto& o = sink.get();
    o << "variable,rule,slack,neighbor,allowable_change\n";
    for (const auto& r : sensitivity(q)) {
        if (r.per_coefficient.empty()) {
            o << r.variable + 1 << ',' << to_string(r.rule) << ',' << r.slack << ",,\n";
        }
        for (const auto& [j, bound] : r.per_coefficient) {
            o << r.variable + 1 << ',' << to_string(r.rule) << ',' << r.slack << ',' << j + 1 << ','
              << bound << '\n';
        }
    }
    return kExitOk;
}

int cmd_stats(const std::string& input, Coeff width, const std::string& output, std::ostream& out) {
    const QuboInstance q = read_instance_file(input);
    Sink sink(output, out);
    auto& o = sink.get();
    o << "bin_lower,bin_upper,count\n";
    for (const auto& b : histogram(q, width)) {
        o << b.lower << ',' << b.lower + width << ',' << b.count << '\n';
    }
    return kExitOk;
}

int cmd_experiment(const GeneratorFlags& flags, const std::string& tests, std::size_t seeds,
                   const std::string& dir, std::ostream& out) {
    ExperimentConfig config;
    config.size = flags.size();
    config.tests = parse_test_list(tests);
    config.seeds = seeds;
    config.first_seed = flags.seed ? *flags.seed : default_seed();
    if (flags.hub_fraction) config.hub_fraction = *flags.hub_fraction;
    if (flags.hub_edge_share) config.hub_edge_share = *flags.hub_edge_share;

    const ExperimentResult result = run_experiment(config);

    std::filesystem::create_directories(dir);
    const std::filesystem::path base(dir);
    {
        Sink s((base / "runs.csv").string(), out);
        write_runs_csv(s.get(), result.runs);
    }
    {
        Sink s((base / "summary.csv").string(), out);
        write_summary_csv(s.get(), result.summary);
    }
    if (result.effects) {
        Sink e((base / "effects.csv").string(), out);
        write_effects_csv(e.get(), *result.effects);
        Sink i((base / "interactions.csv").string(), out);
        write_interactions_csv(i.get(), *result.effects);
    }

    out << "experiment n=" << config.size.n << " edges=" << config.size.edges
        << " seeds=" << config.first_seed << ".." << config.first_seed + seeds - 1
        << " runs=" << result.runs.size() << '\n';
    for (const auto& s : result.summary) {
        out << "test " << s.test << ": mean reduction " << s.mean_percent << "% (min "
            << s.min_percent << ", max " << s.max_percent << "), mean passes " << s.mean_passes
            << '\n';
    }
    if (result.effects) {
        for (std::size_t f = 0; f < kFactors; ++f) {
            out << "effect factor " << f + 1 << ": " << result.effects->main[f] << '\n';
        }
    }
    return kExitOk;
}

}  // namespace

std::vector<int> parse_test_list(const std::string& text) {
    auto number = [&](std::string_view s) {
        int v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            throw UsageError("bad test list '" + text + "'");
        }
        return v;
    };
    std::vector<int> out;
    std::string_view rest(text);
    while (!rest.empty()) {
        auto comma = rest.find(',');
        std::string_view item = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        if (auto dots = item.find(".."); dots != std::string_view::npos) {
            int lo = number(item.substr(0, dots));
            int hi = number(item.substr(dots + 2));
            if (lo > hi) throw UsageError("bad test range '" + std::string(item) + "'");
            for (int t = lo; t <= hi; ++t) out.push_back(t);
        } else {
            out.push_back(number(item));
        }
    }
    if (out.empty()) throw UsageError("empty test list");
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"qfix: QUBO preprocessing by variable fixing, degree-cap expansion and "
                 "instance generation"};
    app.require_subcommand(1);

    std::string input, output, log_path;

    auto* reduce_cmd = app.add_subcommand("reduce", "Fix variables and write the reduced instance");
    reduce_cmd->add_option("input", input, "Instance file")->required();
    reduce_cmd->add_option("-o,--output", output, "Reduced instance file")->required();
    reduce_cmd->add_option("--log", log_path, "Reduction report (JSON); stdout if omitted");

    GeneratorFlags gen;
    int test = 1;
    auto* generate_cmd = app.add_subcommand("generate", "Generate a test instance");
    gen.add_size(generate_cmd);
    gen.add_factors(generate_cmd);
    generate_cmd->add_option("--test", test, "Experimental design test id 1..16")
        ->capture_default_str();
    generate_cmd->add_option("-o,--output", output, "Instance file (stdout if omitted)");

    std::string method = "tabu";
    TabuParams tabu;
    tabu.time_limit = 10.0;
    tabu.max_iterations = 100000;
    auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
    solve_cmd->add_option("input", input, "Instance file")->required();
    solve_cmd->add_option("--method", method, "brute or tabu")
        ->check(CLI::IsMember({"brute", "tabu"}))
        ->capture_default_str();
    solve_cmd->add_option("--time-limit", tabu.time_limit, "Tabu wall-clock limit (s)")
        ->capture_default_str();
    solve_cmd->add_option("--iterations", tabu.max_iterations, "Tabu iteration budget")
        ->capture_default_str();
    solve_cmd->add_option("--tenure", tabu.tenure, "Tabu tenure")->capture_default_str();
    std::optional<std::uint64_t> tabu_seed;
    solve_cmd->add_option("--seed", tabu_seed, "Tabu seed (default: $QPRO_SEED or 1)");
    solve_cmd->add_option("-o,--output", output, "Solution file (stdout if omitted)");

    std::string report_path, solution_path, original_path;
    auto* lift_cmd = app.add_subcommand("lift", "Map a reduced solution back to the original");
    lift_cmd->add_option("report", report_path, "Reduction report from `reduce`")->required();
    lift_cmd->add_option("solution", solution_path, "Solution of the reduced instance")->required();
    lift_cmd->add_option("--original", original_path, "Original instance, to verify the objective");
    lift_cmd->add_option("-o,--output", output, "Solution file (stdout if omitted)");

    std::size_t max_degree = 0;
    std::optional<Coeff> penalty;
    auto* expand_cmd = app.add_subcommand("expand", "Enforce a per-node degree cap");
    expand_cmd->add_option("input", input, "Instance file")->required();
    expand_cmd->add_option("--max-degree", max_degree, "Degree cap m >= 2")->required();
    expand_cmd->add_option("--penalty", penalty, "Coupling penalty M < 0 (default: safe bound)");
    expand_cmd->add_option("-o,--output", output, "Expanded instance file")->required();
    expand_cmd->add_option("--log", log_path, "Expansion report (JSON)");

    auto* sensitivity_cmd =
        app.add_subcommand("sensitivity", "Slack of every Rule 1 / Rule 2 determined row (CSV)");
    sensitivity_cmd->add_option("input", input, "Instance file")->required();
    sensitivity_cmd->add_option("-o,--output", output, "CSV file (stdout if omitted)");

    Coeff width = 1;
    auto* stats_cmd = app.add_subcommand("stats", "Coefficient histogram (CSV)");
    stats_cmd->add_option("input", input, "Instance file")->required();
    stats_cmd->add_option("--hist", width, "Bin width")->required();
    stats_cmd->add_option("-o,--output", output, "CSV file (stdout if omitted)");

    GeneratorFlags exp_gen;
    std::string tests = "1..16";
    std::size_t seeds = 1;
    std::string dir;
    auto* experiment_cmd =
        app.add_subcommand("experiment", "Generate, reduce and analyze a design grid");
    exp_gen.add_size(experiment_cmd);
    experiment_cmd->add_option("--tests", tests, "Test ids, e.g. 1..16 or 3,15")
        ->capture_default_str();
    experiment_cmd->add_option("--seeds", seeds, "Seeds per test")->capture_default_str();
    experiment_cmd->add_option("-o,--output", dir, "Output directory")->required();

    std::vector<char*> argv;
    std::vector<std::string> storage(args);
    if (storage.empty()) storage.emplace_back("qfix");
    for (auto& a : storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*reduce_cmd) return cmd_reduce(input, output, log_path, out);
        if (*generate_cmd) return cmd_generate(gen, test, output, out);
        if (*solve_cmd) {
            tabu.seed = tabu_seed ? *tabu_seed : default_seed();
            return cmd_solve(input, method, tabu, output, out);
        }
        if (*lift_cmd) return cmd_lift(report_path, solution_path, original_path, output, out);
        if (*expand_cmd) return cmd_expand(input, max_degree, penalty, output, log_path, out);
        if (*sensitivity_cmd) return cmd_sensitivity(input, output, out);
        if (*stats_cmd) return cmd_stats(input, width, output, out);
        if (*experiment_cmd) return cmd_experiment(exp_gen, tests, seeds, dir, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}

}  // namespace qfix::cli
