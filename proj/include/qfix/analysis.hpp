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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qfix/core.hpp"
#include "qfix/reducer.hpp"

namespace qfix {

// ---------------------------------------------------------------------------
// Sensitivity of determined variables
// ---------------------------------------------------------------------------

/// c_ii + C_i^-. Nonnegative exactly when Rule 1 determines x_i = 1; the
/// magnitude of a negative value is the increase of c_ii (or the decrease in
/// negative coupling mass) still needed for determination.
Coeff rule1_slack(const QuboInstance& instance, Index i);

/// -(c_ii + C_i^+). Nonnegative exactly when Rule 2 determines x_i = 0.
Coeff rule2_slack(const QuboInstance& instance, Index i);

/// Total extra negative magnitude that may be spread over row i's negative
/// couplings while Rule 1 keeps firing. Throws ContractViolation if Rule 1
/// does not hold for i.
Coeff total_allowable_change(const QuboInstance& instance, Index i);

struct SlackReport {
    Index variable = 0;
    Rule rule = Rule::R1;  // R1 or R2
    Coeff slack = 0;
    /// R1: allowable decrease of each negative c_ij.
    /// R2: allowable increase of each positive c_ij.
    std::vector<std::pair<Index, Coeff>> per_coefficient;
};

/// Report for a row determined by Rule 1 or Rule 2, or nullopt. All-zero rows
/// are left out (they are eliminated, not determined).
std::optional<SlackReport> slack_report(const QuboInstance& instance, Index i);

/// Reports for every currently determined row, ascending by variable.
std::vector<SlackReport> sensitivity(const QuboInstance& instance);

// ---------------------------------------------------------------------------
// Two-level fractional factorial analysis
// ---------------------------------------------------------------------------

inline constexpr std::size_t kFactors = 6;
inline constexpr std::size_t kRuns = 16;

/// 16 runs x 6 factors coded -1 (low) / +1 (high).
struct DesignMatrix {
    std::array<std::array<int, kFactors>, kRuns> codes{};

    /// The 2^(6-2) design used for the generator test ids 1..16.
    static DesignMatrix standard();

    /// Factors are 1-based.
    int code(std::size_t run, std::size_t factor) const { return codes.at(run).at(factor - 1); }
};

struct InteractionEffect {
    std::size_t first = 0;   // 1-based factor ids, first < second
    std::size_t second = 0;
    double effect = 0.0;
    /// Index into EffectsTable::alias_groups, or -1 when the column is unique.
    int alias_group = -1;
};

struct EffectsTable {
    std::array<double, kFactors> main{};
    std::vector<InteractionEffect> interactions;  // all 15 pairs in (f, g) order
    /// Pairs whose product columns coincide; only groups of two or more.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> alias_groups;
};

/// Low-to-high effects: mean response at +1 minus mean response at -1, for
/// each factor and for each pairwise product column.
EffectsTable main_effects(const DesignMatrix& design, std::span<const double> responses);

/// Percent-reduction response surface -3 f1 + 8 f3 + 16 f4 + 5 f3 f4 + 30,
/// each coded factor in [-1, 1]. Factors 2, 5 and 6 carry no weight.
double predict_reduction(const std::array<double, kFactors>& f);

}  // namespace qfix
