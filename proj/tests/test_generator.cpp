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

#include <algorithm>
#include <cmath>
#include <map>

#include "catch_amalgamated.hpp"
#include "qfix/analysis.hpp"
#include "qfix/generator.hpp"
#include "support.hpp"

using namespace qfix;

namespace {

GeneratorConfig p1_test(int test, std::uint64_t seed) {
    GeneratorConfig g;
    const auto size = size_preset("P1");
    g.n = size.n;
    g.edges = size.edges;
    apply_design(g, design_point(test));
    g.seed = seed;
    return g;
}

}  // namespace

TEST_CASE("design points follow the factor table") {
    CHECK(design_point(3) == DesignSettings{10, 5, 20, 0.15, 0.10, 0.05});
    CHECK(design_point(16) == DesignSettings{10, 10, 20, 0.15, 0.20, 0.05});
    CHECK(design_point(1) == DesignSettings{10, 10, 20, 0.05, 0.10, 0.25});
    CHECK_THROWS_AS(design_point(0), InputError);
    CHECK_THROWS_AS(design_point(17), InputError);
}

TEST_CASE("design points match the coded design matrix") {
    const auto d = DesignMatrix::standard();
    for (int t = 1; t <= 16; ++t) {
        const auto s = design_point(t);
        const std::size_t r = static_cast<std::size_t>(t - 1);
        auto level = [&](std::size_t f, bool high, bool low) {
            CHECK((high || low));
            CHECK(d.code(r, f) == (high ? 1 : -1));
        };
        level(1, s.ub == 100, s.ub == 10);
        level(2, s.lin_mult == 10, s.lin_mult == 5);
        level(3, s.quad_mult == 20, s.quad_mult == 10);
        level(4, s.pct_quad_mult == 0.15, s.pct_quad_mult == 0.05);
        level(5, s.pct_lin_mult == 0.20, s.pct_lin_mult == 0.10);
        level(6, s.pct_lin_nonzero == 0.25, s.pct_lin_nonzero == 0.05);
    }
}

TEST_CASE("size presets") {
    CHECK(size_preset("P1") == ProblemSize{1000, 5000});
    CHECK(size_preset("P6") == ProblemSize{10000, 500000});
    CHECK_THROWS_AS(size_preset("P0"), InputError);
    CHECK_THROWS_AS(size_preset("P7"), InputError);
}

TEST_CASE("minimum edge count produces a spanning tree") {
    GeneratorConfig g;
    g.n = 5;
    g.edges = 4;
    g.seed = 9;
    const auto q = generate(g);
    CHECK(q.size() == 5);
    CHECK(q.num_interactions() == 4);
    CHECK(is_connected(q));
}

TEST_CASE("P1 instance shape") {
    const auto q = generate(p1_test(1, 1));
    CHECK(q.size() == 1000);
    CHECK(q.num_interactions() == 5000);
    CHECK(is_connected(q));
}

TEST_CASE("generation is deterministic in the seed") {
    const auto a = generate(p1_test(5, 42));
    const auto b = generate(p1_test(5, 42));
    const auto c = generate(p1_test(5, 43));
    CHECK(a == b);
    CHECK_FALSE(a == c);
}

TEST_CASE("hubs carry a disproportionate share of edges") {
    const auto q = generate(p1_test(1, 3));
    std::vector<std::size_t> deg(q.size());
    for (Index i = 0; i < q.size(); ++i) deg[i] = q.degree(i);
    std::sort(deg.rbegin(), deg.rend());
    const double mean = 2.0 * 5000 / 1000;
    // The top 1% of nodes are hubs.
    double top = 0;
    for (int k = 0; k < 10; ++k) top += static_cast<double>(deg[k]);
    CHECK(top / 10 > 5 * mean);
}

TEST_CASE("quadratic outlier share tracks the setting") {
    std::size_t outliers = 0, total = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto g = p1_test(1, seed);
        const auto q = generate(g);
        for (auto [i, j, v] : q.sorted_interactions()) {
            ++total;
            if (std::abs(v) > g.ub) ++outliers;
            REQUIRE(v != 0);
        }
    }
    const double share = static_cast<double>(outliers) / static_cast<double>(total);
    CHECK(std::abs(share - 0.05) <= 0.03);
}

TEST_CASE("linear terms follow their share and multiplier") {
    std::size_t nonzero = 0, large = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto g = p1_test(1, seed);
        const auto q = generate(g);
        for (Index i = 0; i < q.size(); ++i) {
            const Coeff c = q.linear(i);
            if (c == 0) continue;
            ++nonzero;
            if (std::abs(c) > g.ub) {
                ++large;
                REQUIRE(c % g.lin_mult == 0);
            }
        }
    }
    const double share = static_cast<double>(nonzero) / 10000.0;
    CHECK(std::abs(share - 0.25) <= 0.03);
    const double mult_share = static_cast<double>(large) / static_cast<double>(nonzero);
    CHECK(std::abs(mult_share - 0.10) <= 0.04);
}

TEST_CASE("invalid configurations are rejected") {
    GeneratorConfig g;
    g.n = 10;
    g.edges = 8;
    CHECK_THROWS_AS(generate(g), InputError);
    g.edges = 46;
    CHECK_THROWS_AS(generate(g), InputError);
    g.edges = 20;
    g.ub = 0;
    CHECK_THROWS_AS(generate(g), InputError);
    g.ub = 10;
    g.pct_quad_mult = 1.5;
    CHECK_THROWS_AS(generate(g), InputError);
}

TEST_CASE("random draws cover their range uniformly") {
    Rng rng(7);
    std::map<Coeff, int> counts;
    const int draws = 40000;
    for (int k = 0; k < draws; ++k) counts[rng.nonzero(4)]++;
    CHECK(counts.size() == 8);
    CHECK(counts.count(0) == 0);
    for (auto [v, c] : counts) {
        CHECK(std::abs(v) <= 4);
        CHECK(std::abs(c - draws / 8) < draws / 40);
    }
    for (int k = 0; k < 1000; ++k) {
        const double u = rng.unit();
        REQUIRE((u >= 0.0 && u < 1.0));
        REQUIRE(rng.below(3) < 3);
    }
}

TEST_CASE("histogram") {
    const auto zero = histogram(QuboInstance(4), 5);
    CHECK(zero == std::vector<HistogramBin>{{0, 4}});
    const auto fig = histogram(test::figure4(), 1);
    std::map<Coeff, std::size_t> by_value;
    std::size_t total = 0;
    for (const auto& b : fig) {
        by_value[b.lower] = b.count;
        total += b.count;
    }
    CHECK(total == 14);
    CHECK(by_value[5] == 2);
    CHECK(by_value[2] == 7);
    CHECK(by_value[-2] == 1);
    CHECK(by_value[-3] == 0);
    const auto coarse = histogram(test::figure4(), 5);
    std::size_t sum = 0;
    for (const auto& b : coarse) {
        CHECK(b.lower % 5 == 0);
        sum += b.count;
    }
    CHECK(sum == 14);
    CHECK(coarse.front().lower == -5);
    CHECK_THROWS_AS(histogram(QuboInstance(1), 0), InputError);
}

TEST_CASE("connectivity audit") {
    QuboInstance q(4);
    q.set_quadratic(0, 1, 1);
    q.set_quadratic(2, 3, 1);
    CHECK_FALSE(is_connected(q));
    q.set_quadratic(1, 2, -1);
    CHECK(is_connected(q));
    CHECK(is_connected(QuboInstance(1)));
}
