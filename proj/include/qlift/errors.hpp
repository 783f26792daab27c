/*
 * Copyright 2026 The qlift Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qlift {

// Operands from different quantales, or a value outside its quantale.
struct QuantaleTypeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CarrierMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A term or expression that does not fit the functor it is used with.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MethodUnavailable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string &what, std::uint64_t requested, std::uint64_t budget)
        : std::runtime_error(what + ": needs " + std::to_string(requested) +
                             " candidates, budget is " + std::to_string(budget)),
          requested_(requested), budget_(budget) {}

    std::uint64_t requested() const { return requested_; }
    std::uint64_t budget() const { return budget_; }

private:
    std::uint64_t requested_;
    std::uint64_t budget_;
};

} // namespace qlift
