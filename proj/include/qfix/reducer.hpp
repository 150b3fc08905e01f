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
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qfix/core.hpp"

namespace qfix {

enum class Rule : std::uint8_t { R1, R2, R3, R5 };

enum class FixedValue : std::uint8_t { Zero, One, Free };

std::string_view to_string(Rule rule);
std::string_view to_string(FixedValue value);

/// One determined (or eliminated) variable, in original coordinates.
struct Fixing {
    Index variable = 0;
    FixedValue value = FixedValue::Zero;
    Rule rule = Rule::R1;
    std::size_t pass = 0;

    friend bool operator==(const Fixing&, const Fixing&) = default;
};

struct ReductionLog {
    Index original_size = 0;
    std::vector<Fixing> fixings;
    /// Constant added to the reduced objective to recover the original one.
    Coeff offset = 0;
    /// Passes that fixed at least one variable.
    std::size_t passes = 0;
    /// remap[reduced index] = original index, ascending.
    std::vector<Index> remap;

    std::size_t count(Rule rule) const;

    friend bool operator==(const ReductionLog&, const ReductionLog&) = default;
};

/// Mutable reduction state over the original index space.
///
/// Each apply_* call folds the determined variables out of the working matrix
/// and keeps the row aggregates current. Predicates throw InputError for
/// indices that were already removed; apply_* throws ContractViolation when
/// the rule does not hold.
class Reducer {
 public:
    explicit Reducer(QuboInstance instance);

    bool alive(Index i) const;
    Index alive_count() const { return alive_count_; }

    bool rule1_holds(Index i) const;
    bool rule2_holds(Index i) const;
    bool rule5_holds(Index i) const;
    /// Requires distinct live i, h. False unless c_ih > 0 and Rule 1 fails for both.
    bool rule3_holds(Index i, Index h) const;

    Fixing apply_rule1(Index i);
    Fixing apply_rule2(Index i);
    Fixing apply_rule5(Index i);
    std::pair<Fixing, Fixing> apply_rule3(Index i, Index h);

    /// One row sweep (Rules 5/1/2) followed by one positive-edge sweep
    /// (Rule 3). Returns the number of variables fixed.
    std::size_t run_pass();
    void run_to_fixpoint();

    const TrackedInstance& working() const { return work_; }
    Coeff offset() const { return offset_; }
    const std::vector<Fixing>& fixings() const { return fixings_; }
    std::size_t passes() const { return passes_; }

    struct Result;
    /// Compacts the surviving variables into a fresh instance.
    Result finish() &&;

 private:
    void require_alive(Index i) const;
    void remove(Index i);
    Fixing record(Index i, FixedValue value, Rule rule);

    TrackedInstance work_;
    std::vector<std::uint8_t> alive_;
    Index alive_count_ = 0;
    std::vector<Fixing> fixings_;
    Coeff offset_ = 0;
    std::size_t current_pass_ = 0;
    std::size_t passes_ = 0;
};

struct Reducer::Result {
    QuboInstance reduced;
    ReductionLog log;
};

using ReductionResult = Reducer::Result;

/// Applies Rules 1, 2, 3 and 5 until a full pass fixes nothing.
ReductionResult reduce(const QuboInstance& instance);

enum class Rule4Mode : std::uint8_t { Literal, Analog };

/// Pairs (i, h), i < h, for which x_i + x_h <= 1 holds in some optimal
/// solution. Literal mode uses c_ih > 0 and can never fire together with the
/// requirement that Rule 2 fails for both; Analog mode uses c_ih < 0.
std::vector<std::pair<Index, Index>> detect_rule4(const QuboInstance& instance, Rule4Mode mode);

/// Full-length assignment: fixed values at fixed variables (free -> 0) and the
/// reduced assignment at the surviving ones.
std::vector<std::uint8_t> extend(const ReductionLog& log, std::span<const std::uint8_t> reduced);

/// extend() plus evaluation on the original instance.
Solution lift(const QuboInstance& original, const ReductionLog& log,
              std::span<const std::uint8_t> reduced);

}  // namespace qfix
