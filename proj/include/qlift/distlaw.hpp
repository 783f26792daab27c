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
#include "qlift/monad.hpp"

namespace qlift {

// How a monad value over a coproduct is split into one summand.
enum class SplitRule {
    // Keep the left part if it is non-empty, otherwise the right part.
    PriorityLeft,
    // Always keep the left part. Breaks compatibility with the unit; used to test the law checks.
    AlwaysLeft,
};

struct DistLaw {
    FunctorExpr functor;
    MonadKind monad;
    SplitRule split = SplitRule::PriorityLeft;
};

struct Split {
    bool left;
    // Monad value over the unwrapped summand elements.
    Term value;
};

// t is a monad value whose elements are inl(..) or inr(..) terms.
Split apply_g(MonadKind m, SplitRule rule, const Term &t);

// Throws unless the constant's algebra is a valid algebra for the monad and its
// evaluations are algebra homomorphisms into V.
void check_const_algebra(const ConstSpec &spec, MonadKind m, const Quantale &q);
void check_distlaw(const DistLaw &law, const Quantale &q);

// Algebra of a constant applied to a monad value of Const terms.
Term::Atom const_algebra(const ConstSpec &spec, MonadKind m, const Quantale &q, const Term &t);

// T F Y -> F T Y
Term apply_zeta(const DistLaw &law, const Quantale &q, const Term &tau);

} // namespace qlift
