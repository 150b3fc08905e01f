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

#include "qfix/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <ostream>
#include <string>

#include "qfix/reducer.hpp"
#include "qfix/solvers.hpp"

namespace qfix {

GeneratorConfig cell_config(const ExperimentConfig& config, int test, std::uint64_t seed) {
    GeneratorConfig g;
    g.n = config.size.n;
    g.edges = config.size.edges;
    g.hub_fraction = config.hub_fraction;
    g.hub_edge_share = config.hub_edge_share;
    g.seed = seed;
    apply_design(g, design_point(test));
    return g;
}

RunRecord run_cell(const ExperimentConfig& config, int test, std::uint64_t seed) {
    const QuboInstance q = generate(cell_config(config, test, seed));

    const auto start = std::chrono::steady_clock::now();
    ReductionResult result = reduce(q);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    const auto& log = result.log;
    RunRecord r;
    r.test = test;
    r.seed = seed;
    r.n = q.size();
    r.edges = q.num_interactions();
    r.fixed = log.fixings.size();
    r.percent_reduction = q.size() == 0 ? 0.0
                                        : 100.0 * static_cast<double>(r.fixed) /
                                              static_cast<double>(q.size());
    r.r1 = log.count(Rule::R1);
    r.r2 = log.count(Rule::R2);
    r.r3 = log.count(Rule::R3);
    r.r5 = log.count(Rule::R5);
    r.passes = log.passes;
    r.reduce_seconds = elapsed.count();
    if (q.size() <= config.oracle_limit) {
        r.optimum_match =
            brute_force(q).value == checked_add(brute_force(result.reduced).value, log.offset);
    }
    return r;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    if (config.tests.empty()) throw InputError("experiment needs at least one test id");
    if (config.seeds == 0) throw InputError("experiment needs at least one seed");
    for (int t : config.tests) design_point(t);

    ExperimentResult out;
    std::vector<int> tests = config.tests;
    std::sort(tests.begin(), tests.end());
    tests.erase(std::unique(tests.begin(), tests.end()), tests.end());

    for (int t : tests) {
        TestSummary s;
        s.test = t;
        s.min_percent = 100.0;
        for (std::size_t k = 0; k < config.seeds; ++k) {
            RunRecord r = run_cell(config, t, config.first_seed + k);
            ++s.runs;
            s.mean_percent += r.percent_reduction;
            s.min_percent = std::min(s.min_percent, r.percent_reduction);
            s.max_percent = std::max(s.max_percent, r.percent_reduction);
            s.mean_passes += static_cast<double>(r.passes);
            s.max_passes = std::max(s.max_passes, r.passes);
            s.mean_r1 += static_cast<double>(r.r1);
            s.mean_r2 += static_cast<double>(r.r2);
            s.mean_r3 += static_cast<double>(r.r3);
            s.mean_r5 += static_cast<double>(r.r5);
            s.mean_seconds += r.reduce_seconds;
            out.runs.push_back(r);
        }
        const double k = static_cast<double>(s.runs);
        for (double* v : {&s.mean_percent, &s.mean_passes, &s.mean_r1, &s.mean_r2, &s.mean_r3,
                          &s.mean_r5, &s.mean_seconds}) {
            *v /= k;
        }
        out.summary.push_back(s);
    }

    if (tests.size() == kRuns) {
        std::vector<double> responses;
        for (const auto& s : out.summary) responses.push_back(s.mean_percent);
        out.effects = main_effects(DesignMatrix::standard(), responses);
    }
    return out;
}

void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& runs) {
    out << "test,seed,n,edges,fixed,percent_reduction,r1,r2,r3,r5,passes,reduce_seconds,"
           "optimum_match\n";
    for (const auto& r : runs) {
        out << r.test << ',' << r.seed << ',' << r.n << ',' << r.edges << ',' << r.fixed << ','
            << r.percent_reduction << ',' << r.r1 << ',' << r.r2 << ',' << r.r3 << ',' << r.r5
            << ',' << r.passes << ',' << r.reduce_seconds << ',';
        if (r.optimum_match) out << (*r.optimum_match ? "yes" : "no");
        out << '\n';
    }
}

void write_summary_csv(std::ostream& out, const std::vector<TestSummary>& summary) {
    out << "test,runs,mean_percent,min_percent,max_percent,mean_passes,max_passes,mean_r1,"
           "mean_r2,mean_r3,mean_r5,mean_seconds\n";
    for (const auto& s : summary) {
        out << s.test << ',' << s.runs << ',' << s.mean_percent << ',' << s.min_percent << ','
            << s.max_percent << ',' << s.mean_passes << ',' << s.max_passes << ',' << s.mean_r1
            << ',' << s.mean_r2 << ',' << s.mean_r3 << ',' << s.mean_r5 << ',' << s.mean_seconds
            << '\n';
    }
}

void write_effects_csv(std::ostream& out, const EffectsTable& effects) {
    out << "factor,effect\n";
    for (std::size_t f = 0; f < kFactors; ++f) out << f + 1 << ',' << effects.main[f] << '\n';
}

void write_interactions_csv(std::ostream& out, const EffectsTable& effects) {
    out << "first,second,effect,alias_group,aliases\n";
    for (const auto& e : effects.interactions) {
        out << e.first << ',' << e.second << ',' << e.effect << ',';
        if (e.alias_group >= 0) {
            out << e.alias_group + 1 << ',';
            const auto& group = effects.alias_groups[static_cast<std::size_t>(e.alias_group)];
            bool first = true;
            for (const auto& [a, b] : group) {
                if (a == e.first && b == e.second) continue;
                out << (first ? "" : " ") << a << '-' << b;
                first = false;
            }
        } else {
            out << ',';
        }
        out << '\n';
    }
}

}  // namespace qfix
