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

#include "qfix/expander.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace qfix {

Coeff default_penalty(const QuboInstance& instance) {
    Coeff total = 1;
    for (Index i = 0; i < instance.size(); ++i) {
        total = checked_add(total, std::abs(instance.linear(i)));
        for (const auto& [j, v] : instance.neighbors(i)) {
            if (j > i) total = checked_add(total, std::abs(v));
        }
    }
    return checked_neg(total);
}

Index strong_couple(QuboInstance& instance, Index i, Coeff M) {
    if (M >= 0) throw InputError("coupling penalty must be negative, got " + std::to_string(M));
    if (i >= instance.size()) throw InputError("cannot couple unknown node " + std::to_string(i));
    Coeff link = checked_mul(-2, M);
    instance.add_linear(i, M);
    Index k = instance.add_variable(M);
    instance.set_quadratic(i, k, link);
    return k;
}

std::vector<Index> ExpansionLog::owners(Index expanded_size) const {
    std::vector<Index> owner(expanded_size);
    for (Index u = 0; u < expanded_size; ++u) owner[u] = u;
    for (const auto& g : groups) {
        for (const auto& c : g.chain) {
            if (c.node >= expanded_size) throw InputError("expansion log does not fit instance");
            owner[c.node] = g.original;
        }
    }
    return owner;
}

ExpansionResult enforce_degree_cap(const QuboInstance& instance, std::size_t m,
                                   std::optional<Coeff> penalty) {
    if (m < 2) throw InputError("degree cap must be at least 2, got " + std::to_string(m));
    const Index n = instance.size();
    if (m == 2) {
        for (Index i = 0; i < n; ++i) {
            if (instance.degree(i) > 2) {
                throw InputError("degree cap 2 is unreachable: node " + std::to_string(i + 1) +
                                 " has degree " + std::to_string(instance.degree(i)));
            }
        }
    }

    ExpansionResult out{instance, {}};
    const Coeff M = penalty.value_or(default_penalty(instance));
    if (M >= 0) throw InputError("coupling penalty must be negative, got " + std::to_string(M));
    out.log.penalty = M;
    out.log.original_size = n;
    out.log.max_degree = m;

    QuboInstance& q = out.expanded;
    // Nodes each node is coupled to; their edges never move.
    std::vector<std::vector<Index>> links(n);

    for (Index i = 0; i < n; ++i) {
        if (q.degree(i) <= m) continue;
        CoupledGroup group{i, {}};
        Index tail = i;
        while (q.degree(tail) > m) {
            Index k = strong_couple(q, tail, M);
            links.resize(q.size());
            links[tail].push_back(k);
            links[k].push_back(tail);

            std::size_t excess = q.degree(tail) - m;
            auto row = q.sorted_neighbors(tail);
            ChainNode member{k, {}};
            for (auto it = row.rbegin(); it != row.rend() && excess > 0; ++it) {
                auto [j, v] = *it;
                const auto& own = links[tail];
                if (std::find(own.begin(), own.end(), j) != own.end()) continue;
                q.erase_quadratic(tail, j);
                q.set_quadratic(k, j, v);
                member.moved.emplace_back(j, v);
                --excess;
            }
            group.chain.push_back(std::move(member));
            tail = k;
        }
        out.log.groups.push_back(std::move(group));
    }
    return out;
}

QuboInstance collapse(const QuboInstance& expanded, const ExpansionLog& log) {
    const auto owner = log.owners(expanded.size());
    QuboInstance out(log.original_size);
    for (Index u = 0; u < expanded.size(); ++u) {
        if (owner[u] >= log.original_size) throw InputError("expanded node without a group");
        out.add_linear(owner[u], expanded.linear(u));
        for (const auto& [v, c] : expanded.neighbors(u)) {
            if (v < u) continue;
            if (owner[u] == owner[v]) {
                out.add_linear(owner[u], c);
            } else {
                out.add_quadratic(owner[u], owner[v], c);
            }
        }
    }
    return out;
}

bool groups_consistent(const ExpansionLog& log, std::span<const std::uint8_t> assignment) {
    for (const auto& g : log.groups) {
        for (const auto& c : g.chain) {
            if (c.node >= assignment.size() || g.original >= assignment.size()) {
                throw InputError("assignment shorter than the expanded instance");
            }
            if ((assignment[c.node] != 0) != (assignment[g.original] != 0)) return false;
        }
    }
    return true;
}

std::vector<std::uint8_t> collapse_assignment(const ExpansionLog& log,
                                              std::span<const std::uint8_t> assignment) {
    if (assignment.size() < log.original_size) {
        throw InputError("assignment shorter than the original instance");
    }
    return {assignment.begin(), assignment.begin() + static_cast<std::ptrdiff_t>(log.original_size)};
}

}  // namespace qfix
