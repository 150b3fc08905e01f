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
#include <map>
#include <span>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qfix/errors.hpp"

namespace qfix {

using Coeff = std::int64_t;
using Index = std::size_t;

/// Per-row adjacency: neighbor index -> off-diagonal coefficient.
using Row = std::unordered_map<Index, Coeff>;

// Overflow-checked coefficient arithmetic.
Coeff checked_add(Coeff a, Coeff b);
Coeff checked_sub(Coeff a, Coeff b);
Coeff checked_mul(Coeff a, Coeff b);
Coeff checked_neg(Coeff a);

/// Sparse symmetric QUBO matrix in the maximization sense.
///
/// The diagonal holds the linear terms c_ii. Off-diagonal couplings are kept
/// once per unordered pair conceptually but mirrored in both rows, so a row's
/// neighbors can be walked and deleted in O(degree). Zero off-diagonal values
/// are never stored.
class QuboInstance {
 public:
    QuboInstance() = default;
    explicit QuboInstance(Index n);

    Index size() const { return linear_.size(); }
    std::size_t num_interactions() const { return num_interactions_; }

    Coeff linear(Index i) const;
    /// c_ij for i != j, c_ii for i == j. Absent entries read as zero.
    Coeff coefficient(Index i, Index j) const;

    const Row& neighbors(Index i) const;
    std::size_t degree(Index i) const { return neighbors(i).size(); }

    /// Neighbors of i sorted by index.
    std::vector<std::pair<Index, Coeff>> sorted_neighbors(Index i) const;

    void set_linear(Index i, Coeff value);
    void add_linear(Index i, Coeff delta);

    /// Sets c_ij (i != j). A zero value erases the entry.
    void set_quadratic(Index i, Index j, Coeff value);
    void add_quadratic(Index i, Index j, Coeff delta);
    /// Returns the erased value, or 0 when no entry existed.
    Coeff erase_quadratic(Index i, Index j);

    /// Appends a new isolated variable and returns its index.
    Index add_variable(Coeff linear = 0);

    /// Strictly-upper-triangular entries (i < j) in ascending (i, j) order.
    std::vector<std::tuple<Index, Index, Coeff>> sorted_interactions() const;

    friend bool operator==(const QuboInstance& a, const QuboInstance& b);

 private:
    void check_index(Index i) const;
    void check_pair(Index i, Index j) const;

    std::vector<Coeff> linear_;
    std::vector<Row> rows_;
    std::size_t num_interactions_ = 0;
};

/// A 0/1 assignment together with its objective value.
struct Solution {
    std::vector<std::uint8_t> assignment;
    Coeff objective = 0;

    friend bool operator==(const Solution&, const Solution&) = default;
};

/// Objective of a 0/1 assignment: sum of c_ii x_i plus each pair c_ij x_i x_j once.
Coeff evaluate(const QuboInstance& instance, std::span<const std::uint8_t> assignment);

/// Sum of every stored coefficient (the objective at the all-ones vector).
Coeff coefficient_sum(const QuboInstance& instance);

/// Ising model over spins s in {-1, +1}: energy sum h_i s_i + sum J_ij s_i s_j.
struct IsingModel {
    std::vector<Coeff> h;
    /// Couplings keyed by unordered pair. If both (i,j) and (j,i) are present
    /// they must agree and denote the same single coupling.
    std::map<std::pair<Index, Index>, Coeff> J;
};

struct IsingConversion {
    QuboInstance instance;
    /// evaluate(instance, x) + constant == ising energy at s = 2x - 1.
    Coeff constant = 0;
};

IsingConversion from_ising(const IsingModel& model);

/// Ising energy of a spin vector with entries -1 / +1.
Coeff ising_energy(const IsingModel& model, std::span<const int> spins);

struct RowAggregate {
    Coeff pos_sum = 0;   // C_i^+
    Coeff neg_sum = 0;   // C_i^-
    std::size_t degree = 0;

    friend bool operator==(const RowAggregate&, const RowAggregate&) = default;
};

/// Per-row sums of positive and negative off-diagonal coefficients.
class RowAggregates {
 public:
    RowAggregates() = default;
    explicit RowAggregates(Index n) : rows_(n) {}

    Index size() const { return rows_.size(); }
    const RowAggregate& operator[](Index i) const { return rows_.at(i); }

    void resize(Index n) { rows_.resize(n); }
    /// Accounts for an off-diagonal value entering (or leaving) row i.
    void add(Index i, Coeff value);
    void remove(Index i, Coeff value);
    void clear_row(Index i) { rows_.at(i) = RowAggregate{}; }

    friend bool operator==(const RowAggregates&, const RowAggregates&) = default;

 private:
    std::vector<RowAggregate> rows_;
};

RowAggregates recompute_aggregates(const QuboInstance& instance);

/// A QUBO instance paired with row aggregates kept in sync on every edit.
class TrackedInstance {
 public:
    TrackedInstance() = default;
    explicit TrackedInstance(QuboInstance instance);

    const QuboInstance& instance() const { return instance_; }
    const RowAggregates& aggregates() const { return aggregates_; }
    const RowAggregate& aggregate(Index i) const { return aggregates_[i]; }

    void set_linear(Index i, Coeff value) { instance_.set_linear(i, value); }
    void add_linear(Index i, Coeff delta) { instance_.add_linear(i, delta); }
    void set_quadratic(Index i, Index j, Coeff value);
    void add_quadratic(Index i, Index j, Coeff delta);
    Coeff erase_quadratic(Index i, Index j);
    Index add_variable(Coeff linear = 0);

    /// Removes every off-diagonal entry of row/column i and zeroes c_ii.
    void clear_variable(Index i);

    QuboInstance release() && { return std::move(instance_); }

 private:
    QuboInstance instance_;
    RowAggregates aggregates_;
};

}  // namespace qfix
