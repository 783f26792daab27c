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

#include "qlift/vgraph.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qlift {

// A V-valued predicate, indexed by carrier position.
using Predicate = std::vector<Value>;

class PredSet {
public:
    PredSet(Quantale q, Carrier carrier) : q_(q), carrier_(std::move(carrier)) {}

    const Quantale &quantale() const { return q_; }
    const Carrier &carrier() const { return carrier_; }
    const std::set<Predicate> &predicates() const { return preds_; }
    std::size_t size() const { return preds_.size(); }
    bool empty() const { return preds_.empty(); }

    void add(Predicate p);
    bool contains(const Predicate &p) const { return preds_.count(p) != 0; }
    bool subset_of(const PredSet &other) const;

private:
    Quantale q_;
    Carrier carrier_;
    std::set<Predicate> preds_;
};

// Finite value grid used to enumerate predicates over real quantales.
struct Grid {
    unsigned resolution = 8;
    Rational cap = 4;
};

// boolean: both values; unit-oplus: i/k; ext-plus: i/k up to cap, then inf.
std::vector<Value> grid_values(const Quantale &q, const Grid &grid);

VGraph alpha(const PredSet &s);

// First pair (x, y) with d(x, y) not below d_V(f x, f y), if any.
std::optional<std::pair<std::size_t, std::size_t>> nonexpansive_violation(const VGraph &d, const Predicate &f);
inline bool is_nonexpansive(const VGraph &d, const Predicate &f) { return !nonexpansive_violation(d, f); }

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

// All grid-valued predicates that are non-expansive for d.
PredSet gamma_enum(const VGraph &d, const Grid &grid, std::uint64_t budget = kDefaultBudget);

// f . T = { g o f | g in T }
PredSet pull(const FiniteMap &f, const PredSet &t);

struct Extension {
    Predicate values;
    std::optional<std::string> warning;
};

// Extend f, given on the elements `sub`, to the whole carrier of d.
Extension extension_largest(const VGraph &d, const std::vector<std::string> &sub, const Predicate &f);
Extension extension_smallest(const VGraph &d, const std::vector<std::string> &sub, const Predicate &f);

} // namespace qlift
