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
#include <sstream>

#include "catch_amalgamated.hpp"
#include "qfix/expander.hpp"
#include "qfix/io.hpp"
#include "qfix/reducer.hpp"
#include "support.hpp"

using namespace qfix;
using Catch::Matchers::ContainsSubstring;

namespace {

QuboInstance parse(const std::string& text) {
    std::istringstream in(text);
    return read_instance(in, "t.qubo");
}

std::string parse_error(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("read an instance") {
    const auto q = parse("# cascade\n\n2 3\n1 1 5\n2 1 -3\n2 2 1\n");
    CHECK(q == test::cascade());
}

TEST_CASE("empty body") {
    const auto q = parse("0 0\n");
    CHECK(q.size() == 0);
}

TEST_CASE("malformed input is reported with a line number") {
    CHECK_THAT(parse_error("2 2\n1 1 5\n1 1 4\n"), ContainsSubstring("t.qubo:3:") &&
                                                      ContainsSubstring("duplicate entry (1,1)"));
    CHECK_THAT(parse_error("2 2\n1 2 5\n2 1 4\n"), ContainsSubstring("duplicate entry (1,2)"));
    CHECK_THAT(parse_error("2 1\n1 3 5\n"), ContainsSubstring("t.qubo:2:"));
    CHECK_THAT(parse_error("2 1\n1 x 5\n"), ContainsSubstring("t.qubo:2:"));
    CHECK_THAT(parse_error("2 2\n1 1 5\n"), ContainsSubstring("expected 2"));
    CHECK_THAT(parse_error("2 1\n1 1 5\n2 2 1\n"), ContainsSubstring("more entries"));
    CHECK_THAT(parse_error("# only a comment\n"), ContainsSubstring("header"));
    CHECK_THAT(parse_error("2\n"), ContainsSubstring("t.qubo:1:"));
    CHECK_FALSE(parse_error("2 1\n0 1 5\n").empty());
}

TEST_CASE("write then read is the identity") {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 100; ++t) {
        const auto q = test::random_instance(rng, test::mixed_shape(rng, 0, 15));
        std::ostringstream out;
        const std::vector<std::string> comments{"round trip"};
        write_instance(out, q, comments);
        const std::string text = out.str();
        REQUIRE(text.rfind("# round trip\n", 0) == 0);
        const auto back = parse(text);
        REQUIRE(back == q);
        std::ostringstream again;
        write_instance(again, back, comments);
        REQUIRE(again.str() == text);
    }
}

TEST_CASE("writer emits upper-triangular rows in order") {
    std::ostringstream out;
    write_instance(out, test::cascade());
    CHECK(out.str() == "2 3\n1 1 5\n1 2 -3\n2 2 1\n");
    CHECK(entry_count(test::cascade()) == 3);
}

TEST_CASE("solutions") {
    std::ostringstream out;
    write_solution(out, {{1, 1, 0}, 5});
    CHECK(out.str() == "5\n1 1 0\n");
    std::istringstream in(out.str());
    CHECK(read_solution(in) == Solution{{1, 1, 0}, 5});
    std::istringstream empty("0\n");
    CHECK(read_solution(empty) == Solution{{}, 0});
    std::istringstream bad("3\n1 2\n");
    CHECK_THROWS_AS(read_solution(bad), ParseError);
}

TEST_CASE("reduction log JSON round trip") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 50; ++t) {
        const auto q = test::random_instance(rng, test::mixed_shape(rng, 1, 20));
        const auto r = reduce(q);
        const auto doc = log_to_json(r.log);
        REQUIRE(log_from_json(doc) == r.log);
        REQUIRE(log_to_json(log_from_json(doc)).dump() == doc.dump());
    }
}

TEST_CASE("reduction report") {
    const auto r = reduce(test::cascade());
    const ReductionReport report{r.log, 3, 0, 0.5};
    const auto doc = report_to_json(report);
    CHECK(doc["schema"] == std::string(kReductionSchema));
    CHECK(doc["offset"] == 5);
    CHECK(doc["fixed"] == 2);
    CHECK(doc["counts"]["R1"] == 1);
    CHECK(doc["counts"]["R2"] == 1);
    CHECK(doc["original"]["n"] == 2);
    CHECK(doc["reduced"]["n"] == 0);
    CHECK(doc["percent_reduction"] == 100.0);
    CHECK(doc["fixings"][0]["variable"] == 1);
    std::istringstream in(doc.dump());
    CHECK(read_reduction_report(in) == r.log);
    std::istringstream wrong(R"({"schema": "other"})");
    CHECK_THROWS_AS(read_reduction_report(wrong), ParseError);
    std::istringstream junk("not json");
    CHECK_THROWS_AS(read_reduction_report(junk), ParseError);
}

TEST_CASE("inconsistent reduction logs are rejected") {
    auto doc = log_to_json(reduce(test::cascade()).log);
    doc["original_n"] = 5;
    CHECK_THROWS_AS(log_from_json(doc), ParseError);
}

TEST_CASE("expansion log JSON round trip") {
    QuboInstance q(5);
    for (Index j = 1; j < 5; ++j) q.set_quadratic(0, j, 1);
    const auto r = enforce_degree_cap(q, 3);
    const auto doc = log_to_json(r.log);
    CHECK(doc["schema"] == std::string(kExpansionSchema));
    CHECK(expansion_log_from_json(doc) == r.log);
}
