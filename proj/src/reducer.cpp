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

#include "qfix/reducer.hpp"

#include <algorithm>
#include <string>

namespace qfix {

std::string_view to_string(Rule rule) {
    switch (rule) {
        case Rule::R1: return "R1";
        case Rule::R2: return "R2";
        case Rule::R3: return "R3";
        case Rule::R5: return "R5";
    }
    return "?";
}

std::string_view to_string(FixedValue value) {
    switch (value) {
        case FixedValue::Zero: return "0";
        case FixedValue::One: return "1";
        case FixedValue::Free: return "free";
    }
    return "?";
}

std::size_t ReductionLog::count(Rule rule) const {
    return static_cast<std::size_t>(std::count_if(
        fixings.begin(), fixings.end(), [rule](const Fixing& f) { return f.rule == rule; }));
}

Reducer::Reducer(QuboInstance instance)
    : work_(std::move(instance)), alive_(work_.instance().size(), 1),
      alive_count_(work_.instance().size()) {}

bool Reducer::alive(Index i) const { return i < alive_.size() && alive_[i]; }

void Reducer::require_alive(Index i) const {
    if (i >= alive_.size()) {
        throw InputError("variable " + std::to_string(i) + " out of range");
    }
    if (!alive_[i]) {
        throw InputError("variable " + std::to_string(i) + " was already removed");
    }
}

bool Reducer::rule1_holds(Index i) const {
    require_alive(i);
    return checked_add(work_.instance().linear(i), work_.aggregate(i).neg_sum) >= 0;
}

bool Reducer::rule2_holds(Index i) const {
    require_alive(i);
    return checked_add(work_.instance().linear(i), work_.aggregate(i).pos_sum) <= 0;
}

bool Reducer::rule5_holds(Index i) const {
    require_alive(i);
    return work_.instance().linear(i) == 0 && work_.aggregate(i).degree == 0;
}

bool Reducer::rule3_holds(Index i, Index h) const {
    require_alive(i);
    require_alive(h);
    if (i == h) throw InputError("Rule 3 needs two distinct variables");
    const auto& q = work_.instance();
    Coeff c_ih = q.coefficient(i, h);
    if (c_ih <= 0 || rule1_holds(i) || rule1_holds(h)) return false;
    Coeff sum = checked_add(q.linear(i), q.linear(h));
    sum = checked_add(sum, c_ih);
    sum = checked_add(sum, work_.aggregate(i).neg_sum);
    sum = checked_add(sum, work_.aggregate(h).neg_sum);
    return sum >= 0;
}

void Reducer::remove(Index i) {
    work_.clear_variable(i);
    alive_[i] = 0;
    --alive_count_;
}

Fixing Reducer::record(Index i, FixedValue value, Rule rule) {
    Fixing f{i, value, rule, current_pass_};
    fixings_.push_back(f);
    return f;
}

Fixing Reducer::apply_rule1(Index i) {
    if (!rule1_holds(i)) {
        throw ContractViolation("Rule 1 does not hold for variable " + std::to_string(i));
    }
    const auto& q = work_.instance();
    offset_ = checked_add(offset_, q.linear(i));
    std::vector<std::pair<Index, Coeff>> row(q.neighbors(i).begin(), q.neighbors(i).end());
    for (const auto& [j, v] : row) work_.add_linear(j, v);
    remove(i);
    return record(i, FixedValue::One, Rule::R1);
}

Fixing Reducer::apply_rule2(Index i) {
    if (!rule2_holds(i)) {
        throw ContractViolation("Rule 2 does not hold for variable " + std::to_string(i));
    }
    remove(i);
    return record(i, FixedValue::Zero, Rule::R2);
}

Fixing Reducer::apply_rule5(Index i) {
    if (!rule5_holds(i)) {
        throw ContractViolation("Rule 5 does not hold for variable " + std::to_string(i));
    }
    remove(i);
    return record(i, FixedValue::Free, Rule::R5);
}

std::pair<Fixing, Fixing> Reducer::apply_rule3(Index i, Index h) {
    if (!rule3_holds(i, h)) {
        throw ContractViolation("Rule 3 does not hold for pair " + std::to_string(i) + "," +
                                std::to_string(h));
    }
    const auto& q = work_.instance();
    Coeff gain = checked_add(checked_add(q.linear(i), q.linear(h)), q.coefficient(i, h));
    offset_ = checked_add(offset_, gain);
    for (Index src : {i, h}) {
        std::vector<std::pair<Index, Coeff>> row(q.neighbors(src).begin(), q.neighbors(src).end());
        for (const auto& [j, v] : row) {
            if (j != i && j != h) work_.add_linear(j, v);
        }
    }
    remove(i);
    remove(h);
    Fixing a = record(i, FixedValue::One, Rule::R3);
    Fixing b = record(h, FixedValue::One, Rule::R3);
    return {a, b};
}

std::size_t Reducer::run_pass() {
    ++current_pass_;
    const std::size_t before = fixings_.size();
    const Index n = alive_.size();

    for (Index i = 0; i < n; ++i) {
        if (!alive_[i]) continue;
        if (rule5_holds(i)) {
            apply_rule5(i);
        } else if (rule1_holds(i)) {
            apply_rule1(i);
        } else if (rule2_holds(i)) {
            apply_rule2(i);
        }
    }

    std::vector<Index> partners;
    for (Index i = 0; i < n; ++i) {
        if (!alive_[i]) continue;
        partners.clear();
        for (const auto& [h, v] : work_.instance().neighbors(i)) {
            if (h > i && v > 0) partners.push_back(h);
        }
        std::sort(partners.begin(), partners.end());
        for (Index h : partners) {
            if (!alive_[i]) break;
            if (!alive_[h]) continue;
            if (rule3_holds(i, h)) apply_rule3(i, h);
        }
    }

    const std::size_t fixed = fixings_.size() - before;
    if (fixed > 0) ++passes_;
    return fixed;
}

void Reducer::run_to_fixpoint() {
    while (run_pass() > 0) {
    }
}

Reducer::Result Reducer::finish() && {
    Result out;
    out.log.original_size = alive_.size();
    out.log.fixings = std::move(fixings_);
    out.log.offset = offset_;
    out.log.passes = passes_;

    std::vector<Index> compact(alive_.size(), 0);
    for (Index i = 0; i < alive_.size(); ++i) {
        if (alive_[i]) {
            compact[i] = out.log.remap.size();
            out.log.remap.push_back(i);
        }
    }
    const auto& q = work_.instance();
    out.reduced = QuboInstance(out.log.remap.size());
    for (Index r = 0; r < out.log.remap.size(); ++r) {
        Index i = out.log.remap[r];
        out.reduced.set_linear(r, q.linear(i));
        for (const auto& [j, v] : q.neighbors(i)) {
            if (j > i) out.reduced.set_quadratic(r, compact[j], v);
        }
    }
    return out;
}

ReductionResult reduce(const QuboInstance& instance) {
    Reducer reducer(instance);
    reducer.run_to_fixpoint();
    return std::move(reducer).finish();
}

std::vector<std::pair<Index, Index>> detect_rule4(const QuboInstance& instance, Rule4Mode mode) {
    const RowAggregates agg = recompute_aggregates(instance);
    auto rule2_fails = [&](Index i) {
        return checked_add(instance.linear(i), agg[i].pos_sum) > 0;
    };
    std::vector<std::pair<Index, Index>> out;
    for (const auto& [i, h, c_ih] : instance.sorted_interactions()) {
        const bool sign_ok = mode == Rule4Mode::Literal ? c_ih > 0 : c_ih < 0;
        if (!sign_ok || !rule2_fails(i) || !rule2_fails(h)) continue;
        Coeff sum = checked_add(instance.linear(i), instance.linear(h));
        sum = checked_add(sum, c_ih);
        sum = checked_add(sum, agg[i].pos_sum);
        sum = checked_add(sum, agg[h].pos_sum);
        if (sum <= 0) out.emplace_back(i, h);
    }
    return out;
}

std::vector<std::uint8_t> extend(const ReductionLog& log, std::span<const std::uint8_t> reduced) {
    if (reduced.size() != log.remap.size()) {
        throw InputError("reduced solution has length " + std::to_string(reduced.size()) +
                         ", expected " + std::to_string(log.remap.size()));
    }
    std::vector<std::uint8_t> full(log.original_size, 0);
    for (const auto& f : log.fixings) {
        if (f.variable >= full.size()) throw InputError("fixing index out of range");
        full[f.variable] = f.value == FixedValue::One ? 1 : 0;
    }
    for (Index r = 0; r < reduced.size(); ++r) {
        if (log.remap[r] >= full.size()) throw InputError("remap index out of range");
        full[log.remap[r]] = reduced[r] ? 1 : 0;
    }
    return full;
}

Solution lift(const QuboInstance& original, const ReductionLog& log,
              std::span<const std::uint8_t> reduced) {
    if (original.size() != log.original_size) {
        throw InputError("reduction log does not belong to this instance");
    }
    Solution s;
    s.assignment = extend(log, reduced);
    s.objective = evaluate(original, s.assignment);
    return s;
}

}  // namespace qfix
