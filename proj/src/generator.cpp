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

#include "qfix/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <unordered_set>

namespace qfix {

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw InputError("empty draw range");
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - (max % bound + 1) % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x > limit);
    return x % bound;
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

Coeff Rng::nonzero(Coeff ub) {
    auto k = static_cast<Coeff>(below(static_cast<std::uint64_t>(2 * ub)));
    return k < ub ? k - ub : k - ub + 1;
}

namespace {

void check_fraction(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw InputError(std::string(name) + " must be in [0, 1], got " + std::to_string(v));
    }
}

}  // namespace

void GeneratorConfig::validate() const {
    if (n == 0) throw InputError("generator needs at least one node");
    if (edges + 1 < n) {
        throw InputError("edges=" + std::to_string(edges) + " below n-1=" + std::to_string(n - 1) +
                         "; the graph could not be connected");
    }
    const std::size_t max_edges = n * (n - 1) / 2;
    if (edges > max_edges) {
        throw InputError("edges=" + std::to_string(edges) + " exceeds n(n-1)/2=" +
                         std::to_string(max_edges));
    }
    if (ub < 1) throw InputError("coefficient bound must be at least 1");
    if (ub > (Coeff{1} << 40)) throw InputError("coefficient bound too large");
    if (lin_mult < 1 || quad_mult < 1) throw InputError("multipliers must be at least 1");
    check_fraction(pct_quad_mult, "pct_quad_mult");
    check_fraction(pct_lin_mult, "pct_lin_mult");
    check_fraction(pct_lin_nonzero, "pct_lin_nonzero");
    check_fraction(hub_fraction, "hub_fraction");
    check_fraction(hub_edge_share, "hub_edge_share");
}

DesignSettings design_point(int test_id) {
    // ub, linear multiplier, quadratic multiplier, % quadratic multiplied,
    // % linear multiplied, % nonzero linear.
    struct Row {
        int ub, lin, quad, pq, pl, pnz;
    };
    static constexpr Row kTable[16] = {
        {10, 10, 20, 5, 10, 25},  {100, 10, 20, 15, 20, 25}, {10, 5, 20, 15, 10, 5},
        {100, 5, 20, 5, 20, 5},   {10, 10, 10, 5, 20, 5},    {100, 10, 10, 15, 10, 5},
        {10, 5, 10, 15, 20, 25},  {100, 5, 10, 5, 10, 25},   {100, 5, 10, 15, 20, 5},
        {10, 5, 10, 5, 10, 5},    {100, 10, 10, 5, 20, 25},  {10, 10, 10, 15, 10, 25},
        {100, 5, 20, 15, 10, 25}, {10, 5, 20, 5, 20, 25},    {100, 10, 20, 5, 10, 5},
        {10, 10, 20, 15, 20, 5},
    };
    if (test_id < 1 || test_id > 16) {
        throw InputError("test id must be in 1..16, got " + std::to_string(test_id));
    }
    const Row& r = kTable[test_id - 1];
    return {r.ub, r.lin, r.quad, r.pq / 100.0, r.pl / 100.0, r.pnz / 100.0};
}

void apply_design(GeneratorConfig& config, const DesignSettings& s) {
    config.ub = s.ub;
    config.lin_mult = s.lin_mult;
    config.quad_mult = s.quad_mult;
    config.pct_quad_mult = s.pct_quad_mult;
    config.pct_lin_mult = s.pct_lin_mult;
    config.pct_lin_nonzero = s.pct_lin_nonzero;
}

ProblemSize size_preset(std::string_view id) {
    static const std::map<std::string_view, ProblemSize> kPresets = {
        {"P1", {1000, 5000}},   {"P2", {1000, 10000}},   {"P3", {5000, 25000}},
        {"P4", {5000, 50000}},  {"P5", {10000, 100000}}, {"P6", {10000, 500000}},
    };
    auto it = kPresets.find(id);
    if (it == kPresets.end()) throw InputError("unknown problem preset '" + std::string(id) + "'");
    return it->second;
}

QuboInstance generate(const GeneratorConfig& config) {
    config.validate();
    const Index n = config.n;
    Rng rng(config.seed);

    auto shuffled = [&] {
        std::vector<Index> order(n);
        for (Index i = 0; i < n; ++i) order[i] = i;
        for (Index i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
        return order;
    };

    std::size_t hub_count = 0;
    if (config.hub_fraction > 0.0) {
        hub_count = static_cast<std::size_t>(std::llround(config.hub_fraction * static_cast<double>(n)));
        hub_count = std::clamp<std::size_t>(hub_count, 1, n);
    }
    std::vector<Index> hubs = shuffled();
    hubs.resize(hub_count);

    std::vector<std::pair<Index, Index>> edges;
    edges.reserve(config.edges);
    std::unordered_set<std::uint64_t> present;
    present.reserve(config.edges * 2);
    auto try_add = [&](Index u, Index v) {
        if (u == v) return false;
        if (u > v) std::swap(u, v);
        if (!present.insert(static_cast<std::uint64_t>(u) * n + v).second) return false;
        edges.emplace_back(u, v);
        return true;
    };

    // Random recursive tree over a shuffled order keeps the graph connected.
    const std::vector<Index> order = shuffled();
    for (Index k = 1; k < n; ++k) try_add(order[k], order[rng.below(k)]);

    while (edges.size() < config.edges) {
        Index u, v;
        if (hub_count > 0 && rng.chance(config.hub_edge_share)) {
            u = hubs[rng.below(hub_count)];
            v = rng.below(n);
        } else {
            u = rng.below(n);
            v = rng.below(n);
        }
        try_add(u, v);
    }

    QuboInstance q(n);
    for (const auto& [u, v] : edges) {
        Coeff c = rng.nonzero(config.ub);
        if (rng.chance(config.pct_quad_mult)) c = checked_mul(c, config.quad_mult);
        q.set_quadratic(u, v, c);
    }
    for (Index i = 0; i < n; ++i) {
        if (!rng.chance(config.pct_lin_nonzero)) continue;
        Coeff c = rng.nonzero(config.ub);
        if (rng.chance(config.pct_lin_mult)) c = checked_mul(c, config.lin_mult);
        q.set_linear(i, c);
    }
    return q;
}

std::vector<HistogramBin> histogram(const QuboInstance& instance, Coeff width) {
    if (width < 1) throw InputError("histogram bin width must be at least 1");
    std::map<Coeff, std::size_t> bins;
    auto bucket = [width](Coeff v) {
        Coeff b = v / width;
        if (v % width != 0 && v < 0) --b;
        return b * width;
    };
    for (Index i = 0; i < instance.size(); ++i) {
        ++bins[bucket(instance.linear(i))];
        for (const auto& [j, v] : instance.neighbors(i)) {
            if (j > i) ++bins[bucket(v)];
        }
    }
    std::vector<HistogramBin> out;
    out.reserve(bins.size());
    for (const auto& [lower, count] : bins) out.push_back({lower, count});
    return out;
}

bool is_connected(const QuboInstance& instance) {
    const Index n = instance.size();
    if (n <= 1) return true;
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<Index> stack{0};
    seen[0] = 1;
    Index reached = 1;
    while (!stack.empty()) {
        Index u = stack.back();
        stack.pop_back();
        for (const auto& [v, c] : instance.neighbors(u)) {
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == n;
}

}  // namespace qfix
