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

#include "qlift/behaviour.hpp"

namespace qlift {

// Three chains x, y, z of length n over labels a, b; x0 enters its chain on a,
// y0 on b and z0 on both. The chain ends throw 1/4, 1/3 and 1/2.
CoalgebraModel exception_model(unsigned n);
// Entries ({x0,y0},{z0}) = 1/4, ({xi},{zi}) = 1/4, ({yi},{zi}) = 1/6, joined by union witnesses.
Certificate exception_certificate(const CoalgebraModel &model, unsigned n);

// A probabilistic machine on x, x', y with payoffs 1/2, 1, 1/2: x moves to x or x'
// with probability 1/2 each, x' and y loop.
CoalgebraModel probchain_model();
// Candidate 1/2 on (1x, 1y), (1x', 1y) and on the reversed pairs, with convex witnesses.
Certificate probchain_certificate(const CoalgebraModel &model);

} // namespace qlift
