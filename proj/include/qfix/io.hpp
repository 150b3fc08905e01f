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

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qfix/core.hpp"
#include "qfix/expander.hpp"
#include "qfix/reducer.hpp"

namespace qfix {

/// A malformed input document. what() carries "<source>:<line>: ..." when a
/// line is known.
class ParseError : public InputError {
 public:
    using InputError::InputError;
};

// Instance files
//
//   # comment lines start with '#'
//   <n> <entryCount>
//   <i> <j> <value>        (1-based, i == j is a linear term)
//
// Entries with i > j are read as (j, i). Writers emit i <= j in ascending
// order, linear term first in each row.

QuboInstance read_instance(std::istream& in, std::string_view source = "<input>");
QuboInstance read_instance_file(const std::filesystem::path& path);

/// Stored entries: nonzero linear terms plus off-diagonal pairs.
std::size_t entry_count(const QuboInstance& instance);

void write_instance(std::ostream& out, const QuboInstance& instance,
                    std::span<const std::string> comments = {});
void write_instance_file(const std::filesystem::path& path, const QuboInstance& instance,
                         std::span<const std::string> comments = {});

// Solution files: one line with the objective value, one line of 0/1 values.

void write_solution(std::ostream& out, const Solution& solution);
Solution read_solution(std::istream& in, std::string_view source = "<input>");

// Reports (JSON)

inline constexpr std::string_view kReductionSchema = "qfix.reduction-report/1";
inline constexpr std::string_view kExpansionSchema = "qfix.expansion-report/1";

/// Deterministic serialization of the log alone (indices 1-based).
nlohmann::ordered_json log_to_json(const ReductionLog& log);
ReductionLog log_from_json(const nlohmann::ordered_json& doc);

nlohmann::ordered_json log_to_json(const ExpansionLog& log);
ExpansionLog expansion_log_from_json(const nlohmann::ordered_json& doc);

struct ReductionReport {
    ReductionLog log;
    std::size_t original_entries = 0;
    std::size_t reduced_entries = 0;
    double elapsed_seconds = 0.0;
};

nlohmann::ordered_json report_to_json(const ReductionReport& report);
/// Accepts a full report document and returns its log.
ReductionLog read_reduction_report(std::istream& in, std::string_view source = "<input>");

}  // namespace qfix
