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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qfix/core.hpp"

namespace qfix {

/// Penalty weight for strong coupling. Must be negative (maximization).
struct PenaltyConfig {
    Coeff M = -1;
};

/// M = -(1 + sum of |c| over every stored coefficient). Breaking any single
/// coupling then costs more than the largest possible objective swing.
Coeff default_penalty(const QuboInstance& instance);

/// Adds a node k tied to node i by the penalty M (x_i - 2 x_i x_k + x_k):
/// c_ii += M, c_kk = M, c_ik = -2M. Returns k.
Index strong_couple(QuboInstance& instance, Index i, Coeff M);

struct ChainNode {
    Index node = 0;
    /// Edges (neighbor, value) relocated onto this node, as seen when moved.
    std::vector<std::pair<Index, Coeff>> moved;

    friend bool operator==(const ChainNode&, const ChainNode&) = default;
};

/// An over-capacity original node and the chain of nodes coupled behind it.
/// chain[0] is coupled to the original, chain[k] to chain[k-1].
struct CoupledGroup {
    Index original = 0;
    std::vector<ChainNode> chain;

    friend bool operator==(const CoupledGroup&, const CoupledGroup&) = default;
};

struct ExpansionLog {
    Coeff penalty = 0;
    Index original_size = 0;
    std::size_t max_degree = 0;
    std::vector<CoupledGroup> groups;

    /// Original node each expanded node stands for.
    std::vector<Index> owners(Index expanded_size) const;

    friend bool operator==(const ExpansionLog&, const ExpansionLog&) = default;
};

struct ExpansionResult {
    QuboInstance expanded;
    ExpansionLog log;
};

/// Splits every node of degree > m into a chain of strongly coupled nodes,
/// moving the highest-index excess edges down the chain, until every degree
/// is at most m. Uses default_penalty(instance) unless a penalty is given.
///
/// m == 2 is accepted only when no node exceeds degree 2: a coupled group of
/// any size carries at most two payload edges under that cap.
ExpansionResult enforce_degree_cap(const QuboInstance& instance, std::size_t m,
                                   std::optional<Coeff> penalty = std::nullopt);

/// Merges every group back into its original node. With a consistent
/// assignment the penalty terms vanish, so the result equals the original
/// instance coefficient for coefficient.
QuboInstance collapse(const QuboInstance& expanded, const ExpansionLog& log);

/// True when every member of every group carries the same value.
bool groups_consistent(const ExpansionLog& log, std::span<const std::uint8_t> assignment);

/// Original-space assignment read off the original nodes.
std::vector<std::uint8_t> collapse_assignment(const ExpansionLog& log,
                                              std::span<const std::uint8_t> assignment);

}  // namespace qfix
