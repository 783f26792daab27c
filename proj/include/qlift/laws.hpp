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

#include "qlift/distlaw.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qlift {

struct LawResult {
    std::string suite;
    std::string name;
    bool passed = true;
    std::uint64_t checked = 0;
    // First failing input, printed.
    std::string counterexample;
};

struct LawOptions {
    std::uint64_t seed = 1;
    // Grid resolution for real-valued predicates.
    unsigned grid = 4;
    // Random instances for the sampled checks.
    unsigned samples = 100;
};

std::vector<LawResult> quantale_laws(const LawOptions &opt = {});
std::vector<LawResult> galois_laws(const LawOptions &opt = {});
std::vector<LawResult> polyfunctor_laws(const LawOptions &opt = {});
std::vector<LawResult> monadlift_laws(const LawOptions &opt = {});
std::vector<LawResult> distlaw_laws(const LawOptions &opt = {}, SplitRule split = SplitRule::PriorityLeft);
std::vector<LawResult> behaviour_laws(const LawOptions &opt = {});

// Scopes: quantale, galois, polyfunctor, monadlift, distlaw, behaviour, all.
std::vector<LawResult> run_laws(const std::string &scope, const LawOptions &opt = {}, SplitRule split = SplitRule::PriorityLeft);

// The machine functor V x Id^labels and the exception functor V + Id^labels.
FunctorExpr machine_functor(const std::vector<std::string> &labels);
FunctorExpr exception_functor(const std::vector<std::string> &labels);

} // namespace qlift
