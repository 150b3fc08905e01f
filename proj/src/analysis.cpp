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

#include "qfix/analysis.hpp"

#include <cmath>
#include <map>
#include <string>

namespace qfix {

namespace {

struct RowSums {
    Coeff pos = 0;
    Coeff neg = 0;
};

RowSums row_sums(const QuboInstance& instance, Index i) {
    RowSums s;
    for (const auto& [j, v] : instance.neighbors(i)) {
        if (v > 0) {
            s.pos = checked_add(s.pos, v);
        } else {
            s.neg = checked_add(s.neg, v);
        }
    }
    return s;
}

}  // namespace

Coeff rule1_slack(const QuboInstance& instance, Index i) {
    return checked_add(instance.linear(i), row_sums(instance, i).neg);
}

Coeff rule2_slack(const QuboInstance& instance, Index i) {
    return checked_neg(checked_add(instance.linear(i), row_sums(instance, i).pos));
}

Coeff total_allowable_change(const QuboInstance& instance, Index i) {
    Coeff slack = rule1_slack(instance, i);
    if (slack < 0) {
        throw ContractViolation("Rule 1 does not hold for variable " + std::to_string(i));
    }
    return slack;
}

std::optional<SlackReport> slack_report(const QuboInstance& instance, Index i) {
    if (instance.linear(i) == 0 && instance.degree(i) == 0) return std::nullopt;
    SlackReport r;
    r.variable = i;
    if (Coeff s = rule1_slack(instance, i); s >= 0) {
        r.rule = Rule::R1;
        r.slack = s;
    } else if (Coeff s2 = rule2_slack(instance, i); s2 >= 0) {
        r.rule = Rule::R2;
        r.slack = s2;
    } else {
        return std::nullopt;
    }
    for (const auto& [j, v] : instance.sorted_neighbors(i)) {
        if ((r.rule == Rule::R1 && v < 0) || (r.rule == Rule::R2 && v > 0)) {
            r.per_coefficient.emplace_back(j, r.slack);
        }
    }
    return r;
}

std::vector<SlackReport> sensitivity(const QuboInstance& instance) {
    std::vector<SlackReport> out;
    for (Index i = 0; i < instance.size(); ++i) {
        if (auto r = slack_report(instance, i)) out.push_back(std::move(*r));
    }
    return out;
}

DesignMatrix DesignMatrix::standard() {
    // Upper limit, linear multiplier, quadratic multiplier, % quadratic
    // multiplied, % linear multiplied, % nonzero linear.
    static constexpr const char* kRows[kRuns] = {
        "-++--+", "++++++", "--++--", "+-+-+-", "-+--+-", "++-+--", "---+++", "+----+",
        "+--++-", "------", "++--++", "-+-+-+", "+-++-+", "--+-++", "+++---", "-++++-",
    };
    DesignMatrix d;
    for (std::size_t r = 0; r < kRuns; ++r) {
        for (std::size_t f = 0; f < kFactors; ++f) d.codes[r][f] = kRows[r][f] == '+' ? 1 : -1;
    }
    return d;
}

namespace {

double contrast(std::span<const int> column, std::span<const double> responses) {
    double hi = 0.0, lo = 0.0;
    std::size_t n_hi = 0, n_lo = 0;
    for (std::size_t r = 0; r < column.size(); ++r) {
        if (column[r] > 0) {
            hi += responses[r];
            ++n_hi;
        } else {
            lo += responses[r];
            ++n_lo;
        }
    }
    if (n_hi == 0 || n_lo == 0) throw InputError("design column has a single level");
    return hi / static_cast<double>(n_hi) - lo / static_cast<double>(n_lo);
}

}  // namespace

EffectsTable main_effects(const DesignMatrix& design, std::span<const double> responses) {
    if (responses.size() != kRuns) {
        throw InputError("expected " + std::to_string(kRuns) + " responses, got " +
                         std::to_string(responses.size()));
    }
    EffectsTable t;
    std::array<int, kRuns> column{};
    for (std::size_t f = 1; f <= kFactors; ++f) {
        for (std::size_t r = 0; r < kRuns; ++r) column[r] = design.code(r, f);
        t.main[f - 1] = contrast(column, responses);
    }

    std::map<std::array<int, kRuns>, std::vector<std::size_t>> by_column;
    for (std::size_t a = 1; a <= kFactors; ++a) {
        for (std::size_t b = a + 1; b <= kFactors; ++b) {
            for (std::size_t r = 0; r < kRuns; ++r) column[r] = design.code(r, a) * design.code(r, b);
            by_column[column].push_back(t.interactions.size());
            t.interactions.push_back({a, b, contrast(column, responses), -1});
        }
    }

    // Number alias groups in order of their first pair.
    for (auto& effect : t.interactions) {
        if (effect.alias_group >= 0) continue;
        for (const auto& [col, members] : by_column) {
            if (members.size() < 2 || &t.interactions[members.front()] != &effect) continue;
            const int id = static_cast<int>(t.alias_groups.size());
            auto& group = t.alias_groups.emplace_back();
            for (std::size_t m : members) {
                t.interactions[m].alias_group = id;
                group.emplace_back(t.interactions[m].first, t.interactions[m].second);
            }
        }
    }
    return t;
}

double predict_reduction(const std::array<double, kFactors>& f) {
    for (std::size_t k = 0; k < kFactors; ++k) {
        if (!(f[k] >= -1.0 && f[k] <= 1.0)) {
            throw InputError("coded factor " + std::to_string(k + 1) + " outside [-1, 1]");
        }
    }
    return -3.0 * f[0] + 8.0 * f[2] + 16.0 * f[3] + 5.0 * f[2] * f[3] + 30.0;
}

}  // namespace qfix
