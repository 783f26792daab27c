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

#include "qlift/functor.hpp"
#include "qlift/term.hpp"
#include "qlift/vgraph.hpp"

#include <string_view>
#include <vector>

namespace qlift {

// Finite powerset (Set terms) and finitely supported subdistributions (Dist terms).
enum class MonadKind { Powerset, Subdist };

std::string_view monad_name(MonadKind m);
MonadKind parse_monad(std::string_view name);

void check_monad_shape(MonadKind m, const Term &t);
Term monad_unit(MonadKind m, Term x);
// Flattens a monad value of monad values.
Term monad_mult(MonadKind m, const Term &tt);
Term monad_map(MonadKind m, const Term &t, const LeafMap &fn);
// Supremum (quantale meet, top on the empty set) or expectation.
Value monad_eval(MonadKind m, const Quantale &q, const Term &t, const LeafValue &leaf);

// Lifting of the powerset along sup: max over V of the min over U of the closed distance.
Value hausdorff_directed(const VGraph &d, const Term &u, const Term &v);

struct LPLifting {
    Value value;
    // Optimal potential, one entry per carrier element.
    std::vector<Rational> potential;
};

// Lifting of subdistributions along expectation, solved as a transport dual.
// With use_closure false the raw entries of d bound the potential.
LPLifting kantorovich_lp(const VGraph &d, const Term &p, const Term &q, bool use_closure = true);

nlohmann::json monad_value_to_json(MonadKind m, const Term &t, const std::function<nlohmann::json(const Term &)> &leaf);
Term monad_value_from_json(MonadKind m, const nlohmann::json &j, const std::function<Term(const nlohmann::json &)> &leaf);

// All subsets of a finite list of terms.
std::vector<Term> all_subsets(const std::vector<Term> &elems);

} // namespace qlift
