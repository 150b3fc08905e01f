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

#include <stdexcept>
#include <string>

namespace qfix {

/// Malformed or out-of-range input supplied by a caller.
class InputError : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was invoked while its precondition did not hold.
class ContractViolation : public std::logic_error {
 public:
    using std::logic_error::logic_error;
};

/// 64-bit coefficient arithmetic left the representable range.
class OverflowError : public std::overflow_error {
 public:
    using std::overflow_error::overflow_error;
};

}  // namespace qfix
