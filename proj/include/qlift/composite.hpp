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
#include "qlift/galois.hpp"
#include "qlift/monad.hpp"

#include <string>
#include <vector>

namespace qlift {

// One functor in a composite: polynomial, or a monad evaluated by sup/expectation.
struct Layer {
    enum class Kind { Poly, Monad };
    Kind kind = Kind::Poly;
    FunctorExpr poly = FunctorExpr::id();
    MonadKind monad = MonadKind::Powerset;

    static Layer of(FunctorExpr f) { return {Kind::Poly, std::move(f), MonadKind::Powerset}; }
    static Layer of(MonadKind m) { return {Kind::Monad, FunctorExpr::id(), m}; }
    std::string to_string() const;
};

// Outermost layer first.
using Composite = std::vector<Layer>;
std::string composite_name(const Composite &c);

// One evaluation map per layer; entries of monad layers are ignored.
using CompositeEval = std::vector<EvalMap>;
using EvalSet = std::vector<CompositeEval>;

// Generated evaluation maps, combined layer by layer.
EvalSet composite_lambda(const Composite &c);
// Pairwise compositions ev_F * ev_G = ev_F o F ev_G.
EvalSet star(const EvalSet &lf, const EvalSet &lg);
std::string eval_name(const Composite &c, const CompositeEval &ev);

void check_composite_shape(const Composite &c, const Term &t);

// ev(F f (t)) for a predicate f on the base carrier.
Value evaluate(const Composite &c, const CompositeEval &ev, const Term &t, const Quantale &q, const LeafValue &base);

// Replaces every base position of t (below all layers of c).
Term map_base(const Composite &c, const Term &t, const LeafMap &fn);

// The lifting restricted to an explicit set of predicates, all of which must be non-expansive for d.
VGraph kantorovich_generic(const Composite &c, const EvalSet &lambda, const VGraph &d, const PredSet &s,
                           const std::vector<Term> &terms);

// Exact lifted distance: predicate enumeration on boolean, linear programming on unit-oplus.
Value kantorovich_exact(const Composite &c, const EvalSet &lambda, const VGraph &d, const Term &s, const Term &t);
VGraph kantorovich_exact(const Composite &c, const EvalSet &lambda, const VGraph &d, const std::vector<Term> &terms);

struct CompositionalityReport {
    // Lifting of the lifting: F over the finite set of G-terms occurring in `terms`.
    VGraph lhs;
    // Lifting of the composite along the composed evaluation maps.
    VGraph rhs;
    bool equal;
    bool lhs_below_rhs;
};

CompositionalityReport check_compositionality(const Composite &f, const EvalSet &lf, const Composite &g,
                                              const EvalSet &lg, const VGraph &d, const std::vector<Term> &terms);

} // namespace qlift
