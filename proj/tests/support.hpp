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

// Shared fixtures and independent oracles for the test executables.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qfix/core.hpp"

namespace qfix::test {

/// The five-variable matrix used in the strong-coupling illustration.
inline QuboInstance figure4() {
    QuboInstance q(5);
    const Coeff diag[] = {5, 8, 3, -2, 5};
    for (Index i = 0; i < 5; ++i) q.set_linear(i, diag[i]);
    q.set_quadratic(0, 1, 2);
    q.set_quadratic(0, 2, 2);
    q.set_quadratic(0, 3, 2);
    q.set_quadratic(0, 4, 2);
    q.set_quadratic(1, 2, 2);
    q.set_quadratic(1, 3, 2);
    q.set_quadratic(1, 4, 2);
    q.set_quadratic(2, 4, 3);
    q.set_quadratic(3, 4, 4);
    return q;
}

/// c_11=5, c_12=-3, c_22=1: Rule 1 on x1, then Rule 2 on x2.
inline QuboInstance cascade() {
    QuboInstance q(2);
    q.set_linear(0, 5);
    q.set_linear(1, 1);
    q.set_quadratic(0, 1, -3);
    return q;
}

/// Rule 3 fires on (x1, x2); optimum 5 at (1,1,0) and (1,1,1).
inline QuboInstance rule3_example() {
    QuboInstance q(3);
    q.set_linear(0, 1);
    q.set_linear(1, 1);
    q.set_linear(2, 4);
    q.set_quadratic(0, 1, 3);
    q.set_quadratic(0, 2, -2);
    q.set_quadratic(1, 2, -2);
    return q;
}

/// Unit-weight maxcut QUBO: c_ii = deg(i), c_ij = -2 per edge.
inline QuboInstance maxcut(Index n, const std::vector<std::pair<Index, Index>>& edges) {
    QuboInstance q(n);
    for (auto [i, j] : edges) {
        q.set_quadratic(i, j, -2);
        q.add_linear(i, 1);
        q.add_linear(j, 1);
    }
    return q;
}

struct InstanceShape {
    Index n = 8;
    double density = 0.4;
    Coeff ub = 10;
    double linear_share = 0.6;
    double outlier_share = 0.1;
    Coeff multiplier = 10;
};

/// Small random instance with occasional outlier coefficients.
inline QuboInstance random_instance(std::mt19937_64& rng, const InstanceShape& shape) {
    std::uniform_int_distribution<Coeff> value(-shape.ub, shape.ub);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto draw = [&] {
        Coeff v = value(rng);
        if (unit(rng) < shape.outlier_share) v *= shape.multiplier;
        return v;
    };
    QuboInstance q(shape.n);
    for (Index i = 0; i < shape.n; ++i) {
        if (unit(rng) < shape.linear_share) q.set_linear(i, draw());
        for (Index j = i + 1; j < shape.n; ++j) {
            if (unit(rng) < shape.density) q.set_quadratic(i, j, draw());
        }
    }
    return q;
}

/// Mixed corpus shape: sizes, densities and outlier regimes vary per draw.
inline InstanceShape mixed_shape(std::mt19937_64& rng, Index min_n, Index max_n) {
    std::uniform_int_distribution<Index> size(min_n, max_n);
    static const double densities[] = {0.15, 0.3, 0.5, 0.8};
    static const double outliers[] = {0.0, 0.05, 0.2, 0.5};
    static const Coeff bounds[] = {1, 5, 10, 100};
    InstanceShape s;
    s.n = size(rng);
    s.density = densities[rng() % 4];
    s.outlier_share = outliers[rng() % 4];
    s.ub = bounds[rng() % 4];
    s.multiplier = 1 + static_cast<Coeff>(rng() % 20);
    s.linear_share = 0.3 + 0.7 * static_cast<double>(rng() % 8) / 7.0;
    return s;
}

/// Dense copy of the matrix, upper triangle plus diagonal.
inline std::vector<std::vector<Coeff>> dense(const QuboInstance& q) {
    std::vector<std::vector<Coeff>> m(q.size(), std::vector<Coeff>(q.size(), 0));
    for (Index i = 0; i < q.size(); ++i) {
        for (Index j = i; j < q.size(); ++j) m[i][j] = q.coefficient(i, j);
    }
    return m;
}

/// Objective from the dense matrix, bit k of mask is x_k.
inline Coeff dense_value(const std::vector<std::vector<Coeff>>& m, std::uint64_t mask) {
    Coeff total = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!((mask >> i) & 1)) continue;
        for (std::size_t j = i; j < m.size(); ++j) {
            if ((mask >> j) & 1) total += m[i][j];
        }
    }
    return total;
}

struct OracleResult {
    Coeff value = 0;
    std::vector<std::uint64_t> optima;  // masks, bit k is x_k
};

/// Naive exhaustive search, independent of the library's enumerator.
inline OracleResult oracle(const QuboInstance& q) {
    const auto m = dense(q);
    OracleResult r;
    bool first = true;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << q.size()); ++mask) {
        const Coeff v = dense_value(m, mask);
        if (first || v > r.value) {
            r.value = v;
            r.optima.clear();
            first = false;
        }
        if (v == r.value) r.optima.push_back(mask);
    }
    return r;
}

inline std::vector<std::uint8_t> unpack(std::uint64_t mask, Index n) {
    std::vector<std::uint8_t> x(n);
    for (Index i = 0; i < n; ++i) x[i] = static_cast<std::uint8_t>((mask >> i) & 1);
    return x;
}

}  // namespace qfix::test
