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

#include "qlift/distlaw.hpp"

#include "qlift/errors.hpp"

namespace qlift {

Split apply_g(MonadKind m, SplitRule rule, const Term &t)
{
    check_monad_shape(m, t);
    bool any_left = false;
    for (const auto &c : t.children()) {
        if (c.kind() != Term::Kind::Inl && c.kind() != Term::Kind::Inr) throw ShapeError("expected injections, got " + c.to_string());
        any_left = any_left || c.kind() == Term::Kind::Inl;
    }
    const bool left = rule == SplitRule::AlwaysLeft || any_left;
    const auto want = left ? Term::Kind::Inl : Term::Kind::Inr;
    if (m == MonadKind::Powerset) {
        std::vector<Term> members;
        for (const auto &c : t.children()) {
            if (c.kind() == want) members.push_back(c.child());
        }
        return {left, Term::set(std::move(members))};
    }
    std::vector<std::pair<Term, Rational>> weighted;
    for (std::size_t i = 0; i < t.children().size(); ++i) {
        if (t.children()[i].kind() == want) weighted.emplace_back(t.children()[i].child(), t.weights()[i]);
    }
    return {left, Term::dist(std::move(weighted))};
}

void check_const_algebra(const ConstSpec &spec, MonadKind m, const Quantale &q)
{
    if (spec.values) {
        if (m == MonadKind::Subdist && !q.is_real()) throw MethodUnavailable("expectation algebra needs a real-valued quantale");
        return;
    }
    if (m == MonadKind::Subdist) throw MethodUnavailable("subdistribution algebras on finite constant sets are not supported");
    if (!spec.algebra) throw PreconditionError("finite constant set needs a join table to be a powerset algebra");
    const auto &alg = *spec.algebra;
    const std::size_t n = spec.atoms.size();
    auto name = [&](std::size_t i) { return spec.atoms.name(i); };
    for (std::size_t a = 0; a < n; ++a) {
        if (alg.join[a][a] != a) throw PreconditionError("join is not idempotent at " + name(a));
        if (alg.join[alg.bottom][a] != a) throw PreconditionError("bottom is not a unit for " + name(a));
        for (std::size_t b = 0; b < n; ++b) {
            if (alg.join[a][b] != alg.join[b][a]) throw PreconditionError("join is not commutative at " + name(a) + ", " + name(b));
            for (std::size_t c = 0; c < n; ++c) {
                if (alg.join[alg.join[a][b]][c] != alg.join[a][alg.join[b][c]])
                    throw PreconditionError("join is not associative at " + name(a) + ", " + name(b) + ", " + name(c));
            }
        }
    }
    for (std::size_t k = 0; k < spec.evals.size(); ++k) {
        const auto &ev = spec.evals[k];
        if (!(ev[alg.bottom] == q.top())) throw PreconditionError("evaluation " + std::to_string(k) + " does not send bottom to top");
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                if (!(ev[alg.join[a][b]] == q.meet(ev[a], ev[b])))
                    throw PreconditionError("evaluation " + std::to_string(k) + " does not preserve the join of " + name(a) + ", " + name(b));
            }
        }
    }
}

void check_distlaw(const DistLaw &law, const Quantale &q)
{
    std::function<void(const FunctorExpr &)> walk = [&](const FunctorExpr &f) {
        if (f.kind() == FunctorExpr::Kind::Const) check_const_algebra(f.const_spec(), law.monad, q);
        for (const auto &p : f.parts()) walk(p);
    };
    walk(law.functor);
}

Term::Atom const_algebra(const ConstSpec &spec, MonadKind m, const Quantale &q, const Term &t)
{
    check_monad_shape(m, t);
    if (spec.values) {
        auto leaf = [&](const Term &c) -> Value {
            if (c.kind() != Term::Kind::Const) throw ShapeError("expected a constant, got " + c.to_string());
            return std::get<Value>(c.atom());
        };
        return monad_eval(m, q, t, leaf);
    }
    if (m == MonadKind::Subdist || !spec.algebra) throw MethodUnavailable("no algebra for this finite constant set");
    std::size_t acc = spec.algebra->bottom;
    for (const auto &c : t.children()) acc = spec.algebra->join[acc][spec.atoms.index(std::get<std::string>(c.atom()))];
    return spec.atoms.name(acc);
}

namespace {

Term zeta(const FunctorExpr &f, const DistLaw &law, const Quantale &q, const Term &tau)
{
    const MonadKind m = law.monad;
    check_monad_shape(m, tau);
    switch (f.kind()) {
    case FunctorExpr::Kind::Const:
        for (const auto &c : tau.children()) check_shape(f, c);
        return Term::constant(const_algebra(f.const_spec(), m, q, tau));
    case FunctorExpr::Kind::Id:
        return Term::id(monad_map(m, tau, [](const Term &c) {
            if (c.kind() != Term::Kind::Id) throw ShapeError("expected an identity position, got " + c.to_string());
            return c.child();
        }));
    case FunctorExpr::Kind::Prod: {
        std::vector<Term> parts;
        for (std::size_t i = 0; i < f.parts().size(); ++i) {
            Term proj = monad_map(m, tau, [&](const Term &c) {
                if (c.kind() != Term::Kind::Tuple || c.children().size() != f.parts().size())
                    throw ShapeError("expected a tuple, got " + c.to_string());
                return c.children()[i];
            });
            parts.push_back(zeta(f.parts()[i], law, q, proj));
        }
        return Term::tuple(std::move(parts));
    }
    case FunctorExpr::Kind::Coprod: {
        Split s = apply_g(m, law.split, tau);
        if (s.left) return Term::inl(zeta(f.parts()[0], law, q, s.value));
        return Term::inr(zeta(f.parts()[1], law, q, s.value));
    }
    }
    throw ShapeError("unknown functor");
}

} // namespace

Term apply_zeta(const DistLaw &law, const Quantale &q, const Term &tau) { return zeta(law.functor, law, q, tau); }

} // namespace qlift
