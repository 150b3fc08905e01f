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

#include "qfix/core.hpp"

#include <algorithm>
#include <string>

namespace qfix {

Coeff checked_add(Coeff a, Coeff b) {
    Coeff r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("coefficient addition overflow");
    return r;
}

Coeff checked_sub(Coeff a, Coeff b) {
    Coeff r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("coefficient subtraction overflow");
    return r;
}

Coeff checked_mul(Coeff a, Coeff b) {
    Coeff r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("coefficient multiplication overflow");
    return r;
}

Coeff checked_neg(Coeff a) { return checked_sub(0, a); }

QuboInstance::QuboInstance(Index n) : linear_(n, 0), rows_(n) {}

void QuboInstance::check_index(Index i) const {
    if (i >= size()) {
        throw InputError("variable index " + std::to_string(i) + " out of range for n=" +
                         std::to_string(size()));
    }
}

void QuboInstance::check_pair(Index i, Index j) const {
    check_index(i);
    check_index(j);
    if (i == j) throw InputError("off-diagonal entry requires distinct indices");
}

Coeff QuboInstance::linear(Index i) const {
    check_index(i);
    return linear_[i];
}

Coeff QuboInstance::coefficient(Index i, Index j) const {
    if (i == j) return linear(i);
    check_pair(i, j);
    const auto& row = rows_[i];
    auto it = row.find(j);
    return it == row.end() ? 0 : it->second;
}

const Row& QuboInstance::neighbors(Index i) const {
    check_index(i);
    return rows_[i];
}

std::vector<std::pair<Index, Coeff>> QuboInstance::sorted_neighbors(Index i) const {
    const auto& row = neighbors(i);
    std::vector<std::pair<Index, Coeff>> out(row.begin(), row.end());
    std::sort(out.begin(), out.end());
    return out;
}

void QuboInstance::set_linear(Index i, Coeff value) {
    check_index(i);
    linear_[i] = value;
}

void QuboInstance::add_linear(Index i, Coeff delta) {
    check_index(i);
    linear_[i] = checked_add(linear_[i], delta);
}

void QuboInstance::set_quadratic(Index i, Index j, Coeff value) {
    check_pair(i, j);
    if (value == 0) {
        erase_quadratic(i, j);
        return;
    }
    auto [it, inserted] = rows_[i].insert_or_assign(j, value);
    rows_[j].insert_or_assign(i, value);
    if (inserted) ++num_interactions_;
}

void QuboInstance::add_quadratic(Index i, Index j, Coeff delta) {
    set_quadratic(i, j, checked_add(coefficient(i, j), delta));
}

Coeff QuboInstance::erase_quadratic(Index i, Index j) {
    check_pair(i, j);
    auto it = rows_[i].find(j);
    if (it == rows_[i].end()) return 0;
    Coeff value = it->second;
    rows_[i].erase(it);
    rows_[j].erase(i);
    --num_interactions_;
    return value;
}

Index QuboInstance::add_variable(Coeff linear) {
    linear_.push_back(linear);
    rows_.emplace_back();
    return linear_.size() - 1;
}

std::vector<std::tuple<Index, Index, Coeff>> QuboInstance::sorted_interactions() const {
    std::vector<std::tuple<Index, Index, Coeff>> out;
    out.reserve(num_interactions_);
    for (Index i = 0; i < size(); ++i) {
        for (const auto& [j, v] : rows_[i]) {
            if (i < j) out.emplace_back(i, j, v);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool operator==(const QuboInstance& a, const QuboInstance& b) {
    return a.linear_ == b.linear_ && a.rows_ == b.rows_;
}

Coeff evaluate(const QuboInstance& instance, std::span<const std::uint8_t> assignment) {
    if (assignment.size() != instance.size()) {
        throw InputError("assignment length " + std::to_string(assignment.size()) +
                         " does not match n=" + std::to_string(instance.size()));
    }
    Coeff total = 0;
    for (Index i = 0; i < instance.size(); ++i) {
        if (!assignment[i]) continue;
        total = checked_add(total, instance.linear(i));
        for (const auto& [j, v] : instance.neighbors(i)) {
            if (j > i && assignment[j]) total = checked_add(total, v);
        }
    }
    return total;
}

Coeff coefficient_sum(const QuboInstance& instance) {
    std::vector<std::uint8_t> ones(instance.size(), 1);
    return evaluate(instance, ones);
}

IsingConversion from_ising(const IsingModel& model) {
    const Index n = model.h.size();
    IsingConversion out{QuboInstance(n), 0};

    // h s = 2h x - h
    for (Index i = 0; i < n; ++i) {
        out.instance.add_linear(i, checked_mul(2, model.h[i]));
        out.constant = checked_sub(out.constant, model.h[i]);
    }

    // J s_i s_j = 4J x_i x_j - 2J x_i - 2J x_j + J
    std::map<std::pair<Index, Index>, Coeff> couplings;
    for (const auto& [key, value] : model.J) {
        auto [i, j] = key;
        if (i == j) throw InputError("Ising self-coupling at spin " + std::to_string(i));
        if (i >= n || j >= n) throw InputError("Ising coupling index out of range");
        auto norm = std::minmax(i, j);
        auto [it, inserted] = couplings.emplace(norm, value);
        if (!inserted && it->second != value) {
            throw InputError("asymmetric Ising coupling between " + std::to_string(i) + " and " +
                             std::to_string(j));
        }
    }
    for (const auto& [key, value] : couplings) {
        auto [i, j] = key;
        out.instance.add_quadratic(i, j, checked_mul(4, value));
        out.instance.add_linear(i, checked_mul(-2, value));
        out.instance.add_linear(j, checked_mul(-2, value));
        out.constant = checked_add(out.constant, value);
    }
    return out;
}

Coeff ising_energy(const IsingModel& model, std::span<const int> spins) {
    if (spins.size() != model.h.size()) throw InputError("spin vector length mismatch");
    Coeff e = 0;
    for (Index i = 0; i < spins.size(); ++i) e = checked_add(e, checked_mul(model.h[i], spins[i]));
    std::map<std::pair<Index, Index>, Coeff> seen;
    for (const auto& [key, value] : model.J) {
        if (!seen.emplace(std::minmax(key.first, key.second), value).second) continue;
        e = checked_add(e, checked_mul(value, spins[key.first] * spins[key.second]));
    }
    return e;
}

void RowAggregates::add(Index i, Coeff value) {
    auto& r = rows_.at(i);
    if (value > 0) {
        r.pos_sum = checked_add(r.pos_sum, value);
    } else if (value < 0) {
        r.neg_sum = checked_add(r.neg_sum, value);
    } else {
        return;
    }
    ++r.degree;
}

void RowAggregates::remove(Index i, Coeff value) {
    auto& r = rows_.at(i);
    if (value > 0) {
        r.pos_sum = checked_sub(r.pos_sum, value);
    } else if (value < 0) {
        r.neg_sum = checked_sub(r.neg_sum, value);
    } else {
        return;
    }
    --r.degree;
}

RowAggregates recompute_aggregates(const QuboInstance& instance) {
    RowAggregates out(instance.size());
    for (Index i = 0; i < instance.size(); ++i) {
        for (const auto& [j, v] : instance.neighbors(i)) out.add(i, v);
    }
    return out;
}

TrackedInstance::TrackedInstance(QuboInstance instance)
    : instance_(std::move(instance)), aggregates_(recompute_aggregates(instance_)) {}

void TrackedInstance::set_quadratic(Index i, Index j, Coeff value) {
    Coeff old = instance_.coefficient(i, j);
    instance_.set_quadratic(i, j, value);
    aggregates_.remove(i, old);
    aggregates_.remove(j, old);
    aggregates_.add(i, value);
    aggregates_.add(j, value);
}

void TrackedInstance::add_quadratic(Index i, Index j, Coeff delta) {
    set_quadratic(i, j, checked_add(instance_.coefficient(i, j), delta));
}

Coeff TrackedInstance::erase_quadratic(Index i, Index j) {
    Coeff old = instance_.erase_quadratic(i, j);
    aggregates_.remove(i, old);
    aggregates_.remove(j, old);
    return old;
}

Index TrackedInstance::add_variable(Coeff linear) {
    Index k = instance_.add_variable(linear);
    aggregates_.resize(instance_.size());
    return k;
}

void TrackedInstance::clear_variable(Index i) {
    const auto& current = instance_.neighbors(i);
    std::vector<std::pair<Index, Coeff>> row(current.begin(), current.end());
    for (const auto& [j, v] : row) {
        instance_.erase_quadratic(i, j);
        aggregates_.remove(j, v);
    }
    aggregates_.clear_row(i);
    instance_.set_linear(i, 0);
}

}  // namespace qfix
