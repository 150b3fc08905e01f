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

#include <random>
#include <set>

#include "catch_amalgamated.hpp"
#include "qfix/analysis.hpp"
#include "qfix/reducer.hpp"

using namespace qfix;
using Catch::Approx;

namespace {

QuboInstance row(Coeff c11, std::vector<Coeff> couplings) {
    QuboInstance q(couplings.size() + 1);
    q.set_linear(0, c11);
    for (std::size_t k = 0; k < couplings.size(); ++k) q.set_quadratic(0, k + 1, couplings[k]);
    return q;
}

}  // namespace

TEST_CASE("Rule 1 slack") {
    auto q = row(5, {-3});
    CHECK(rule1_slack(q, 0) == 2);
    q.set_quadratic(0, 1, -5);
    CHECK(Reducer(q).rule1_holds(0));
    q.set_quadratic(0, 1, -6);
    CHECK_FALSE(Reducer(q).rule1_holds(0));
    CHECK(rule1_slack(row(4, {}), 0) == 4);
    CHECK(rule1_slack(row(1, {-3}), 0) == -2);
    CHECK_FALSE(Reducer(row(2, {-3})).rule1_holds(0));
    CHECK(Reducer(row(3, {-3})).rule1_holds(0));
}

TEST_CASE("Rule 2 slack") {
    CHECK(rule2_slack(row(-5, {3}), 0) == 2);
    CHECK(Reducer(row(-5, {5})).rule2_holds(0));
    CHECK_FALSE(Reducer(row(-5, {6})).rule2_holds(0));
}

TEST_CASE("total allowable change") {
    auto q = row(5, {-2, -1});
    CHECK(total_allowable_change(q, 0) == 2);
    q.set_quadratic(0, 1, -3);
    q.set_quadratic(0, 2, -2);
    CHECK(Reducer(q).rule1_holds(0));
    q.set_quadratic(0, 2, -3);
    CHECK_FALSE(Reducer(q).rule1_holds(0));
    CHECK(total_allowable_change(row(0, {}), 0) == 0);
    CHECK(total_allowable_change(row(0, {4}), 0) == 0);
    CHECK_THROWS_AS(total_allowable_change(row(1, {-3}), 0), ContractViolation);
}

TEST_CASE("slack reports") {
    const auto one = slack_report(row(7, {-2, -1, 4}), 0);
    REQUIRE(one);
    CHECK(one->rule == Rule::R1);
    CHECK(one->slack == 4);
    CHECK(one->per_coefficient == std::vector<std::pair<Index, Coeff>>{{1, 4}, {2, 4}});
    const auto single = slack_report(row(5, {-3}), 0);
    REQUIRE(single);
    CHECK(single->per_coefficient.front().second == total_allowable_change(row(5, {-3}), 0));
    const auto zero = slack_report(row(-6, {2, -1}), 0);
    REQUIRE(zero);
    CHECK(zero->rule == Rule::R2);
    CHECK(zero->per_coefficient == std::vector<std::pair<Index, Coeff>>{{1, 4}});
    CHECK_FALSE(slack_report(row(1, {-3, 3}), 0));
    CHECK_FALSE(slack_report(QuboInstance(2), 0));
}

TEST_CASE("slack budget is sharp on random rows") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<Coeff> v(-20, 20);
    int rows = 0;
    while (rows < 200) {
        QuboInstance q(6);
        for (Index j = 1; j < 6; ++j) q.set_quadratic(0, j, v(rng));
        q.set_linear(0, std::abs(v(rng)) * 3);
        if (!Reducer(q).rule1_holds(0)) continue;
        ++rows;
        const Coeff budget = total_allowable_change(q, 0);
        std::vector<Index> negatives;
        for (auto [j, c] : q.sorted_neighbors(0)) {
            if (c < 0) negatives.push_back(j);
        }
        if (negatives.empty()) {
            // No coupling can be decreased; pushing a new one below -budget breaks it.
            QuboInstance p = q;
            p.set_quadratic(0, 1, -(budget + 1));
            CHECK_FALSE(Reducer(p).rule1_holds(0));
            continue;
        }
        QuboInstance at = q;
        Coeff left = budget;
        for (Index j : negatives) {
            const Coeff take = (j == negatives.back()) ? left : left / 2;
            at.add_quadratic(0, j, -take);
            left -= take;
        }
        REQUIRE(Reducer(at).rule1_holds(0));
        at.add_quadratic(0, negatives.front(), -1);
        REQUIRE_FALSE(Reducer(at).rule1_holds(0));
    }
}

TEST_CASE("design matrix is balanced and orthogonal in main effects") {
    const auto d = DesignMatrix::standard();
    for (std::size_t f = 1; f <= kFactors; ++f) {
        int sum = 0;
        for (std::size_t r = 0; r < kRuns; ++r) sum += d.code(r, f);
        CHECK(sum == 0);
        for (std::size_t g = f + 1; g <= kFactors; ++g) {
            int dot = 0;
            for (std::size_t r = 0; r < kRuns; ++r) dot += d.code(r, f) * d.code(r, g);
            CHECK(dot == 0);
        }
    }
    std::set<std::array<int, kFactors>> distinct(d.codes.begin(), d.codes.end());
    CHECK(distinct.size() == kRuns);
}

TEST_CASE("main effects") {
    const auto d = DesignMatrix::standard();
    SECTION("constant response") {
        const std::vector<double> y(kRuns, 12.5);
        const auto e = main_effects(d, y);
        for (double m : e.main) CHECK(m == 0.0);
        for (const auto& i : e.interactions) CHECK(i.effect == 0.0);
    }
    SECTION("response equal to factor 4") {
        std::vector<double> y(kRuns);
        for (std::size_t r = 0; r < kRuns; ++r) y[r] = d.code(r, 4);
        const auto e = main_effects(d, y);
        for (std::size_t f = 0; f < kFactors; ++f) CHECK(e.main[f] == Approx(f == 3 ? 2.0 : 0.0));
    }
    SECTION("wrong response count") {
        const std::vector<double> y(5, 1.0);
        CHECK_THROWS_AS(main_effects(d, y), InputError);
    }
}

TEST_CASE("aliased interactions report identical values") {
    const auto d = DesignMatrix::standard();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 100);
    std::vector<double> y(kRuns);
    for (auto& v : y) v = u(rng);
    const auto e = main_effects(d, y);
    REQUIRE(e.interactions.size() == 15);
    auto effect = [&](std::size_t a, std::size_t b) {
        for (const auto& i : e.interactions) {
            if (i.first == a && i.second == b) return i.effect;
        }
        FAIL("missing pair");
        return 0.0;
    };
    CHECK(effect(1, 6) == Approx(effect(2, 5)));
    CHECK(effect(2, 5) == Approx(effect(3, 4)));
    CHECK(e.alias_groups.size() == 7);
    for (const auto& i : e.interactions) CHECK(i.alias_group >= 0);
    bool triple = false;
    for (const auto& g : e.alias_groups) {
        if (g == std::vector<std::pair<std::size_t, std::size_t>>{{1, 6}, {2, 5}, {3, 4}}) triple = true;
    }
    CHECK(triple);
}

TEST_CASE("response surface") {
    CHECK(predict_reduction({0, 0, 0, 0, 0, 0}) == 30.0);
    CHECK(predict_reduction({-1, 0, 1, 1, 0, 0}) == 62.0);
    CHECK(predict_reduction({1, 0, -1, -1, 0, 0}) == 8.0);
    CHECK(predict_reduction({0, 1, 0, 0, -1, 1}) == 30.0);
    CHECK_THROWS_AS(predict_reduction({2, 0, 0, 0, 0, 0}), InputError);
}
