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

#include "qfix/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <string>

#include "qfix/generator.hpp"

namespace qfix {

FlipState::FlipState(const QuboInstance& instance) {
    const Index n = instance.size();
    // Every partial sum below stays within the total magnitude, so checking it
    // once makes the unchecked hot loop safe.
    Coeff magnitude = 0;
    offsets_.assign(n + 1, 0);
    diag_.resize(n);
    for (Index i = 0; i < n; ++i) {
        diag_[i] = instance.linear(i);
        magnitude = checked_add(magnitude, std::abs(diag_[i]));
        auto row = instance.sorted_neighbors(i);
        offsets_[i + 1] = offsets_[i] + row.size();
        for (const auto& [j, v] : row) {
            neighbor_.push_back(j);
            weight_.push_back(v);
            magnitude = checked_add(magnitude, std::abs(v));
        }
    }
    field_ = diag_;
    x_.assign(n, 0);
}

Coeff FlipState::gain_from_scratch(Index i) const {
    Coeff field = diag_[i];
    for (std::size_t e = offsets_[i]; e < offsets_[i + 1]; ++e) {
        if (x_[neighbor_[e]]) field += weight_[e];
    }
    return x_[i] ? -field : field;
}

void FlipState::flip(Index i) {
    objective_ += gain(i);
    const Coeff dir = x_[i] ? -1 : 1;
    x_[i] ^= 1;
    for (std::size_t e = offsets_[i]; e < offsets_[i + 1]; ++e) {
        field_[neighbor_[e]] += dir * weight_[e];
    }
}

BruteForceResult brute_force(const QuboInstance& instance) {
    const Index n = instance.size();
    if (n > kBruteForceLimit) {
        throw InputError("brute force refuses n=" + std::to_string(n) + " (limit " +
                         std::to_string(kBruteForceLimit) + ")");
    }
    FlipState state(instance);
    BruteForceResult out;
    out.value = 0;
    out.optimum_count = 1;
    std::uint64_t key = 0;
    std::uint64_t best_key = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t step = 1; step < total; ++step) {
        const auto k = static_cast<Index>(__builtin_ctzll(step));
        state.flip(k);
        key ^= std::uint64_t{1} << (n - 1 - k);
        const Coeff v = state.objective();
        if (v > out.value) {
            out.value = v;
            out.optimum_count = 1;
            best_key = key;
        } else if (v == out.value) {
            ++out.optimum_count;
            best_key = std::min(best_key, key);
        }
    }
    out.assignment.resize(n);
    for (Index i = 0; i < n; ++i) out.assignment[i] = (best_key >> (n - 1 - i)) & 1;
    return out;
}

Coeff brute_force_constrained(const QuboInstance& instance, std::span<const VariableFix> fixes) {
    const Index n = instance.size();
    if (n > kBruteForceLimit) {
        throw InputError("brute force refuses n=" + std::to_string(n) + " (limit " +
                         std::to_string(kBruteForceLimit) + ")");
    }
    std::vector<int> fixed(n, -1);
    for (const auto& f : fixes) {
        if (f.variable >= n) throw InputError("fixing refers to unknown variable");
        const int v = f.value ? 1 : 0;
        if (fixed[f.variable] >= 0 && fixed[f.variable] != v) {
            throw InputError("contradictory fixings for variable " + std::to_string(f.variable));
        }
        fixed[f.variable] = v;
    }

    // Condition on the fixed values: the free variables form a smaller QUBO
    // plus a constant.
    std::vector<Index> compact(n, 0);
    Index free_count = 0;
    for (Index i = 0; i < n; ++i) {
        if (fixed[i] < 0) compact[i] = free_count++;
    }
    QuboInstance sub(free_count);
    Coeff constant = 0;
    for (Index i = 0; i < n; ++i) {
        if (fixed[i] == 0) continue;
        if (fixed[i] == 1) {
            constant = checked_add(constant, instance.linear(i));
        } else {
            sub.add_linear(compact[i], instance.linear(i));
        }
        for (const auto& [j, v] : instance.neighbors(i)) {
            if (fixed[j] == 0) continue;
            if (fixed[i] == 1 && fixed[j] == 1) {
                if (j > i) constant = checked_add(constant, v);
            } else if (fixed[i] == 1) {
                sub.add_linear(compact[j], v);
            } else if (fixed[j] < 0 && j > i) {
                sub.set_quadratic(compact[i], compact[j], v);
            }
        }
    }
    return checked_add(brute_force(sub).value, constant);
}

std::vector<VariableFix> determined_values(const ReductionLog& log) {
    std::vector<VariableFix> out;
    for (const auto& f : log.fixings) {
        if (f.value != FixedValue::Free) out.push_back({f.variable, f.value == FixedValue::One});
    }
    return out;
}

Solution tabu_search(const QuboInstance& instance, const TabuParams& params, TabuTrace* trace) {
    if (std::isinf(params.time_limit) &&
        params.max_iterations == std::numeric_limits<std::uint64_t>::max()) {
        throw InputError("tabu search needs a finite time limit or iteration budget");
    }
    if (!(params.time_limit > 0.0)) throw InputError("tabu time limit must be positive");

    const Index n = instance.size();
    FlipState state(instance);
    Solution best{state.assignment(), state.objective()};
    if (n == 0) return best;

    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    Rng rng(params.seed);
    const std::uint64_t stagnation =
        params.stagnation_limit > 0 ? params.stagnation_limit
                                    : std::max<std::uint64_t>(100, 20 * static_cast<std::uint64_t>(n));
    const std::size_t kick = std::max<std::size_t>(1, n / 4);

    std::vector<std::uint64_t> tabu_until(n, 0);
    std::uint64_t last_improvement = 0;

    for (std::uint64_t it = 1; it <= params.max_iterations; ++it) {
        if ((it & 255) == 0 && std::isfinite(params.time_limit)) {
            std::chrono::duration<double> elapsed = Clock::now() - start;
            if (elapsed.count() >= params.time_limit) break;
        }

        Index pick = n;
        Coeff pick_gain = 0;
        for (Index i = 0; i < n; ++i) {
            const Coeff g = state.gain(i);
            const bool allowed = tabu_until[i] < it || state.objective() + g > best.objective;
            if (allowed && (pick == n || g > pick_gain)) {
                pick = i;
                pick_gain = g;
            }
        }
        if (pick == n) {
            // Everything is tabu; take the move that frees up soonest.
            pick = static_cast<Index>(std::min_element(tabu_until.begin(), tabu_until.end()) -
                                      tabu_until.begin());
        }

        state.flip(pick);
        tabu_until[pick] = it + params.tenure;

        if (state.objective() > best.objective) {
            best.objective = state.objective();
            best.assignment = state.assignment();
            last_improvement = it;
        } else if (it - last_improvement >= stagnation) {
            for (std::size_t k = 0; k < kick; ++k) state.flip(static_cast<Index>(rng.below(n)));
            std::fill(tabu_until.begin(), tabu_until.end(), 0);
            last_improvement = it;
            if (state.objective() > best.objective) {
                best.objective = state.objective();
                best.assignment = state.assignment();
            }
        }
        if (trace) trace->best_by_iteration.push_back(best.objective);
    }

    const Coeff verified = evaluate(instance, best.assignment);
    if (verified != best.objective) {
        throw ContractViolation("tabu search objective drifted from its assignment");
    }
    return best;
}

}  // namespace qfix
