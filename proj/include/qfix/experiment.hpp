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

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "qfix/analysis.hpp"
#include "qfix/generator.hpp"

namespace qfix {

/// Generate -> reduce -> record, over a grid of test ids and seeds.
struct ExperimentConfig {
    ProblemSize size{1000, 5000};
    std::vector<int> tests;  // ids 1..16
    std::uint64_t first_seed = 1;
    std::size_t seeds = 1;
    double hub_fraction = GeneratorConfig{}.hub_fraction;
    double hub_edge_share = GeneratorConfig{}.hub_edge_share;
    /// Instances at or below this size are also checked against brute force.
    Index oracle_limit = 20;
};

struct RunRecord {
    int test = 0;
    std::uint64_t seed = 0;
    Index n = 0;
    std::size_t edges = 0;
    std::size_t fixed = 0;
    double percent_reduction = 0.0;
    std::size_t r1 = 0, r2 = 0, r3 = 0, r5 = 0;
    std::size_t passes = 0;
    double reduce_seconds = 0.0;
    std::optional<bool> optimum_match;
};

struct TestSummary {
    int test = 0;
    std::size_t runs = 0;
    double mean_percent = 0.0;
    double min_percent = 0.0;
    double max_percent = 0.0;
    double mean_passes = 0.0;
    std::size_t max_passes = 0;
    double mean_r1 = 0.0, mean_r2 = 0.0, mean_r3 = 0.0, mean_r5 = 0.0;
    double mean_seconds = 0.0;
};

struct ExperimentResult {
    std::vector<RunRecord> runs;        // sorted by (test, seed)
    std::vector<TestSummary> summary;   // sorted by test
    /// Present when all 16 test ids were run.
    std::optional<EffectsTable> effects;
};

GeneratorConfig cell_config(const ExperimentConfig& config, int test, std::uint64_t seed);
RunRecord run_cell(const ExperimentConfig& config, int test, std::uint64_t seed);
ExperimentResult run_experiment(const ExperimentConfig& config);

void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& runs);
void write_summary_csv(std::ostream& out, const std::vector<TestSummary>& summary);
/// One row per factor: factor,effect.
void write_effects_csv(std::ostream& out, const EffectsTable& effects);
/// One row per factor pair: first,second,effect,alias_group,aliases.
void write_interactions_csv(std::ostream& out, const EffectsTable& effects);

}  // namespace qfix
