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

#include "qfix/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace qfix {

namespace {

using json = nlohmann::ordered_json;

std::string where(std::string_view source, std::size_t line) {
    return std::string(source) + ":" + std::to_string(line) + ": ";
}

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> fields(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

template <class T>
bool parse_number(std::string_view token, T& value) {
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    return ec == std::errc() && ptr == token.data() + token.size();
}

/// Next non-blank, non-comment line; false at end of input.
bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        line = std::string(t);
        return true;
    }
    return false;
}

}  // namespace

QuboInstance read_instance(std::istream& in, std::string_view source) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_content_line(in, line, line_no)) {
        throw ParseError(std::string(source) + ": missing '<n> <entryCount>' header");
    }
    auto head = fields(line);
    std::size_t n = 0, count = 0;
    if (head.size() != 2 || !parse_number(head[0], n) || !parse_number(head[1], count)) {
        throw ParseError(where(source, line_no) + "expected '<n> <entryCount>', got '" + line + "'");
    }

    QuboInstance q(n);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> first_seen;
    for (std::size_t e = 0; e < count; ++e) {
        if (!next_content_line(in, line, line_no)) {
            throw ParseError(std::string(source) + ": expected " + std::to_string(count) +
                             " entries, found " + std::to_string(e));
        }
        auto f = fields(line);
        std::size_t i = 0, j = 0;
        Coeff value = 0;
        if (f.size() != 3 || !parse_number(f[0], i) || !parse_number(f[1], j) ||
            !parse_number(f[2], value)) {
            throw ParseError(where(source, line_no) + "expected '<i> <j> <value>', got '" + line +
                             "'");
        }
        if (i < 1 || i > n || j < 1 || j > n) {
            throw ParseError(where(source, line_no) + "index out of range 1.." + std::to_string(n) +
                             " in '" + line + "'");
        }
        if (i > j) std::swap(i, j);
        auto [it, fresh] = first_seen.emplace(std::make_pair(i, j), line_no);
        if (!fresh) {
            throw ParseError(where(source, line_no) + "duplicate entry (" + std::to_string(i) + "," +
                             std::to_string(j) + "), first given on line " +
                             std::to_string(it->second));
        }
        if (i == j) {
            q.set_linear(i - 1, value);
        } else {
            q.set_quadratic(i - 1, j - 1, value);
        }
    }
    if (next_content_line(in, line, line_no)) {
        throw ParseError(where(source, line_no) + "more entries than the header declares (" +
                         std::to_string(count) + ")");
    }
    return q;
}

QuboInstance read_instance_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    return read_instance(in, path.string());
}

std::size_t entry_count(const QuboInstance& instance) {
    std::size_t count = instance.num_interactions();
    for (Index i = 0; i < instance.size(); ++i) count += instance.linear(i) != 0;
    return count;
}

void write_instance(std::ostream& out, const QuboInstance& instance,
                    std::span<const std::string> comments) {
    for (const auto& c : comments) out << "# " << c << '\n';
    out << instance.size() << ' ' << entry_count(instance) << '\n';
    for (Index i = 0; i < instance.size(); ++i) {
        if (Coeff c = instance.linear(i); c != 0) out << i + 1 << ' ' << i + 1 << ' ' << c << '\n';
        for (const auto& [j, v] : instance.sorted_neighbors(i)) {
            if (j > i) out << i + 1 << ' ' << j + 1 << ' ' << v << '\n';
        }
    }
}

void write_instance_file(const std::filesystem::path& path, const QuboInstance& instance,
                         std::span<const std::string> comments) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    write_instance(out, instance, comments);
    if (!out) throw InputError("write failed for " + path.string());
}

void write_solution(std::ostream& out, const Solution& solution) {
    out << solution.objective << '\n';
    for (std::size_t i = 0; i < solution.assignment.size(); ++i) {
        if (i) out << ' ';
        out << static_cast<int>(solution.assignment[i]);
    }
    out << '\n';
}

Solution read_solution(std::istream& in, std::string_view source) {
    std::string line;
    std::size_t line_no = 0;
    Solution s;
    if (!next_content_line(in, line, line_no) || !parse_number(std::string_view(line), s.objective)) {
        throw ParseError(where(source, line_no) + "expected the objective value line");
    }
    // The assignment line is absent for an empty solution.
    if (next_content_line(in, line, line_no)) {
        for (auto tok : fields(line)) {
            if (tok == "0" || tok == "1") {
                s.assignment.push_back(tok == "1");
            } else {
                throw ParseError(where(source, line_no) + "assignment values must be 0 or 1");
            }
        }
        if (next_content_line(in, line, line_no)) {
            throw ParseError(where(source, line_no) + "unexpected trailing content");
        }
    }
    return s;
}

json log_to_json(const ReductionLog& log) {
    json fixings = json::array();
    for (const auto& f : log.fixings) {
        fixings.push_back({{"variable", f.variable + 1},
                           {"value", std::string(to_string(f.value))},
                           {"rule", std::string(to_string(f.rule))},
                           {"pass", f.pass}});
    }
    json remap = json::array();
    for (Index r : log.remap) remap.push_back(r + 1);
    return json{{"original_n", log.original_size},
                {"offset", log.offset},
                {"passes", log.passes},
                {"fixings", std::move(fixings)},
                {"remap", std::move(remap)}};
}

namespace {

Rule rule_from(const std::string& s) {
    if (s == "R1") return Rule::R1;
    if (s == "R2") return Rule::R2;
    if (s == "R3") return Rule::R3;
    if (s == "R5") return Rule::R5;
    throw ParseError("unknown rule '" + s + "'");
}

FixedValue value_from(const std::string& s) {
    if (s == "0") return FixedValue::Zero;
    if (s == "1") return FixedValue::One;
    if (s == "free") return FixedValue::Free;
    throw ParseError("unknown fixed value '" + s + "'");
}

Index one_based(const json& v) {
    auto i = v.get<std::size_t>();
    if (i == 0) throw ParseError("indices in reports are 1-based");
    return i - 1;
}

}  // namespace

ReductionLog log_from_json(const json& doc) {
    try {
        ReductionLog log;
        log.original_size = doc.at("original_n").get<std::size_t>();
        log.offset = doc.at("offset").get<Coeff>();
        log.passes = doc.at("passes").get<std::size_t>();
        for (const auto& f : doc.at("fixings")) {
            log.fixings.push_back({one_based(f.at("variable")),
                                   value_from(f.at("value").get<std::string>()),
                                   rule_from(f.at("rule").get<std::string>()),
                                   f.at("pass").get<std::size_t>()});
        }
        for (const auto& r : doc.at("remap")) log.remap.push_back(one_based(r));
        if (log.fixings.size() + log.remap.size() != log.original_size) {
            throw ParseError("fixings plus survivors do not add up to original_n");
        }
        return log;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed reduction log: ") + e.what());
    }
}

json log_to_json(const ExpansionLog& log) {
    json groups = json::array();
    for (const auto& g : log.groups) {
        json chain = json::array();
        for (const auto& c : g.chain) {
            json moved = json::array();
            for (const auto& [j, v] : c.moved) moved.push_back({j + 1, v});
            chain.push_back({{"node", c.node + 1}, {"moved", std::move(moved)}});
        }
        groups.push_back({{"original", g.original + 1}, {"chain", std::move(chain)}});
    }
    return json{{"schema", std::string(kExpansionSchema)},
                {"original_n", log.original_size},
                {"max_degree", log.max_degree},
                {"penalty", log.penalty},
                {"groups", std::move(groups)}};
}

ExpansionLog expansion_log_from_json(const json& doc) {
    try {
        if (doc.at("schema").get<std::string>() != kExpansionSchema) {
            throw ParseError("unsupported expansion report schema");
        }
        ExpansionLog log;
        log.original_size = doc.at("original_n").get<std::size_t>();
        log.max_degree = doc.at("max_degree").get<std::size_t>();
        log.penalty = doc.at("penalty").get<Coeff>();
        for (const auto& g : doc.at("groups")) {
            CoupledGroup group{one_based(g.at("original")), {}};
            for (const auto& c : g.at("chain")) {
                ChainNode node{one_based(c.at("node")), {}};
                for (const auto& m : c.at("moved")) {
                    node.moved.emplace_back(one_based(m.at(0)), m.at(1).get<Coeff>());
                }
                group.chain.push_back(std::move(node));
            }
            log.groups.push_back(std::move(group));
        }
        return log;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed expansion log: ") + e.what());
    }
}

json report_to_json(const ReductionReport& report) {
    const auto& log = report.log;
    const std::size_t fixed = log.fixings.size();
    json doc{{"schema", std::string(kReductionSchema)},
             {"original", {{"n", log.original_size}, {"entries", report.original_entries}}},
             {"reduced", {{"n", log.remap.size()}, {"entries", report.reduced_entries}}},
             {"fixed", fixed},
             {"percent_reduction",
              log.original_size == 0 ? 0.0
                                     : 100.0 * static_cast<double>(fixed) /
                                           static_cast<double>(log.original_size)},
             {"counts",
              {{"R1", log.count(Rule::R1)},
               {"R2", log.count(Rule::R2)},
               {"R3", log.count(Rule::R3)},
               {"R5", log.count(Rule::R5)}}},
             {"elapsed_seconds", report.elapsed_seconds}};
    const json body = log_to_json(log);
    for (const auto& [key, value] : body.items()) doc[key] = value;
    return doc;
}

ReductionLog read_reduction_report(std::istream& in, std::string_view source) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string(source) + ": not a JSON document: " + e.what());
    }
    if (!doc.is_object() || !doc.contains("schema") || doc["schema"] != kReductionSchema) {
        throw ParseError(std::string(source) + ": not a " + std::string(kReductionSchema) +
                         " document");
    }
    return log_from_json(doc);
}

}  // namespace qfix
