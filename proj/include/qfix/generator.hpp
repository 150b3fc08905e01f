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
#include <random>
#include <string_view>
#include <vector>

#include "qfix/core.hpp"

namespace qfix {

/// Instance generator settings. Fractions are in [0, 1].
struct GeneratorConfig {
    Index n = 1000;
    std::size_t edges = 5000;
    Coeff ub = 10;                  // draws are nonzero integers in [-ub, ub]
    Coeff lin_mult = 5;
    Coeff quad_mult = 10;
    double pct_quad_mult = 0.05;    // share of quadratic entries multiplied
    double pct_lin_mult = 0.10;     // share of nonzero linear entries multiplied
    double pct_lin_nonzero = 0.05;  // share of variables with a linear term
    double hub_fraction = 0.01;
    double hub_edge_share = 0.20;   // share of non-tree edges anchored at a hub
    std::uint64_t seed = 1;

    /// Throws InputError for an unusable configuration.
    void validate() const;
};

/// The coefficient factors of one experimental run.
struct DesignSettings {
    Coeff ub = 10;
    Coeff lin_mult = 5;
    Coeff quad_mult = 10;
    double pct_quad_mult = 0.05;
    double pct_lin_mult = 0.10;
    double pct_lin_nonzero = 0.05;

    friend bool operator==(const DesignSettings&, const DesignSettings&) = default;
};

/// Factor settings of test id 1..16.
DesignSettings design_point(int test_id);
void apply_design(GeneratorConfig& config, const DesignSettings& settings);

struct ProblemSize {
    Index n = 0;
    std::size_t edges = 0;

    friend bool operator==(const ProblemSize&, const ProblemSize&) = default;
};

/// "P1".."P6".
ProblemSize size_preset(std::string_view id);

/// Deterministic in config.seed: random spanning tree, then extra edges (a
/// share anchored at hub nodes), then coefficient draws with outliers.
QuboInstance generate(const GeneratorConfig& config);

/// Bounded draws on top of mt19937_64 that do not depend on the standard
/// library's distribution implementations.
class Rng {
 public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound);
    /// Uniform in [0, 1) with 53 bits.
    double unit();
    bool chance(double p) { return unit() < p; }
    /// Uniform nonzero integer in [-ub, ub].
    Coeff nonzero(Coeff ub);

 private:
    std::mt19937_64 engine_;
};

struct HistogramBin {
    Coeff lower = 0;  // bin covers [lower, lower + width)
    std::size_t count = 0;

    friend bool operator==(const HistogramBin&, const HistogramBin&) = default;
};

/// Counts every diagonal value (zeros included) and every stored
/// off-diagonal value; totals n + num_interactions.
std::vector<HistogramBin> histogram(const QuboInstance& instance, Coeff width);

/// Whether the off-diagonal support graph is connected (n <= 1 counts).
bool is_connected(const QuboInstance& instance);

}  // namespace qfix
