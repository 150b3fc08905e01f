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
#include <limits>
#include <span>
#include <vector>

#include "qfix/core.hpp"
#include "qfix/reducer.hpp"

namespace qfix {

/// An assignment under incremental one-flip moves.
///
/// Keeps field_i = c_ii + sum_j c_ij x_j for every variable, so the gain of
/// flipping i is (1 - 2 x_i) field_i and a flip costs O(degree).
class FlipState {
 public:
    /// Starts from the all-zero assignment.
    explicit FlipState(const QuboInstance& instance);

    Index size() const { return x_.size(); }
    Coeff objective() const { return objective_; }
    const std::vector<std::uint8_t>& assignment() const { return x_; }

    Coeff gain(Index i) const { return x_[i] ? -field_[i] : field_[i]; }
    /// Gain recomputed from the adjacency alone.
    Coeff gain_from_scratch(Index i) const;

    void flip(Index i);

 private:
    std::vector<std::size_t> offsets_;
    std::vector<Index> neighbor_;
    std::vector<Coeff> weight_;
    std::vector<Coeff> diag_;
    std::vector<Coeff> field_;
    std::vector<std::uint8_t> x_;
    Coeff objective_ = 0;
};

inline constexpr Index kBruteForceLimit = 25;

struct BruteForceResult {
    Coeff value = 0;
    /// Lexicographically smallest optimal assignment (x_0 most significant).
    std::vector<std::uint8_t> assignment;
    std::uint64_t optimum_count = 0;
};

/// Exhaustive Gray-code enumeration. Refuses n > 25.
BruteForceResult brute_force(const QuboInstance& instance);

struct VariableFix {
    Index variable = 0;
    bool value = false;
};

/// Best objective over assignments agreeing with every fix. Duplicate fixes
/// must agree; contradictory ones are an InputError.
Coeff brute_force_constrained(const QuboInstance& instance, std::span<const VariableFix> fixes);

/// The 0/1 fixings of a reduction log (free variables impose nothing).
std::vector<VariableFix> determined_values(const ReductionLog& log);

struct TabuParams {
    double time_limit = std::numeric_limits<double>::infinity();  // seconds
    std::uint64_t max_iterations = 10000;
    std::size_t tenure = 10;
    std::uint64_t seed = 1;
    /// Iterations without a new best before a random kick; 0 picks 20n (min 100).
    std::uint64_t stagnation_limit = 0;
};

struct TabuTrace {
    std::vector<Coeff> best_by_iteration;
};

/// One-flip tabu search from the all-zero assignment. The best non-tabu move
/// is taken each iteration (lowest index on ties); a tabu move is allowed when
/// it beats the best objective found so far.
Solution tabu_search(const QuboInstance& instance, const TabuParams& params,
                     TabuTrace* trace = nullptr);

}  // namespace qfix
