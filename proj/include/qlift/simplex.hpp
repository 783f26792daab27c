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

#include "qlift/quantale.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qlift {

// Exact rational linear programming: two-phase simplex with Bland's rule.
class LinearProgram {
public:
    enum class Sense { Leq, Geq, Eq };
    using Row = std::vector<std::pair<std::size_t, Rational>>;

    // Variables are bounded below (default 0) and optionally above.
    std::size_t add_variable(std::string name, Rational lower = 0, std::optional<Rational> upper = std::nullopt);
    void add_constraint(Row coeffs, Sense sense, Rational rhs);
    void maximize(Row coeffs, Rational constant = 0);

    std::size_t variable_count() const { return names_.size(); }
    const std::string &variable_name(std::size_t i) const { return names_.at(i); }
    // Human-readable dump, attached to solver errors.
    std::string dump() const;

    struct Solution {
        Rational optimum;
        std::vector<Rational> assignment;
    };
    Solution solve() const;

private:
    struct Constraint {
        Row coeffs;
        Sense sense;
        Rational rhs;
    };
    std::vector<std::string> names_;
    std::vector<Rational> lower_;
    std::vector<std::optional<Rational>> upper_;
    std::vector<Constraint> constraints_;
    Row objective_;
    Rational constant_ = 0;
};

struct LPError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LPInfeasible : LPError {
    using LPError::LPError;
};
struct LPUnbounded : LPError {
    using LPError::LPError;
};

} // namespace qlift
