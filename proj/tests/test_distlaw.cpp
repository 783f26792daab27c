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
#include "qlift/laws.hpp"

#include <doctest.h>

using namespace qlift;

namespace {

Value u(long n, long d = 1) { return Value::unit_interval(Rational(n, d)); }

Term step(const Value &v, const std::string &next)
{
    return Term::tuple({Term::constant(v), Term::tuple({Term::id(Term::elem(next))})});
}

Term raise(const Value &v) { return Term::inl(Term::constant(v)); }

Term branch(const std::string &a, const std::string &b)
{
    return Term::inr(Term::tuple({Term::id(Term::elem(a)), Term::id(Term::elem(b))}));
}

} // namespace

TEST_SUITE("distlaw") {

TEST_CASE("machine over subdistributions averages payoffs")
{
    Quantale q(QuantaleId::UnitOplus);
    DistLaw law{machine_functor({"a"}), MonadKind::Subdist};
    Term tau = Term::dist({{step(u(1, 4), "x"), Rational(1, 2)}, {step(u(3, 4), "y"), Rational(1, 2)}});
    Term want = Term::tuple({Term::constant(u(1, 2)), Term::tuple({Term::id(parse_term("[1/2:x,1/2:y]"))})});
    CHECK(apply_zeta(law, q, tau) == want);
}

TEST_CASE("exceptions over powerset take priority")
{
    Quantale q(QuantaleId::UnitOplus);
    DistLaw law{exception_functor({"a", "b"}), MonadKind::Powerset};
    Term mixed = Term::set({raise(u(1, 4)), raise(u(1, 2)), branch("x", "y")});
    CHECK(apply_zeta(law, q, mixed) == raise(u(1, 2)));

    Term branches = Term::set({branch("x", "y"), branch("z", "y")});
    Term want = Term::inr(Term::tuple({Term::id(parse_term("{x,z}")), Term::id(parse_term("{y}"))}));
    CHECK(apply_zeta(law, q, branches) == want);

    Term none = Term::inr(Term::tuple({Term::id(parse_term("{}")), Term::id(parse_term("{}"))}));
    CHECK(apply_zeta(law, q, Term::set({})) == none);
}

TEST_CASE("splitting rules")
{
    Term t = Term::set({Term::inr(Term::elem("x"))});
    Split p = apply_g(MonadKind::Powerset, SplitRule::PriorityLeft, t);
    CHECK_FALSE(p.left);
    CHECK(p.value == parse_term("{x}"));
    Split a = apply_g(MonadKind::Powerset, SplitRule::AlwaysLeft, t);
    CHECK(a.left);
    CHECK(a.value == parse_term("{}"));
    Split d = apply_g(MonadKind::Subdist, SplitRule::PriorityLeft,
                      Term::dist({{Term::inl(Term::elem("x")), Rational(1, 3)}, {Term::inr(Term::elem("y")), Rational(2, 3)}}));
    CHECK(d.left);
    CHECK(d.value == parse_term("[1/3:x]"));
    CHECK_THROWS_AS(apply_g(MonadKind::Powerset, SplitRule::PriorityLeft, parse_term("{x}")), ShapeError);
}

TEST_CASE("constant algebras")
{
    Quantale q(QuantaleId::UnitOplus);
    // atoms: none < some, with an evaluation sending none to top.
    JoinAlgebra alg{0, {{0, 1}, {1, 1}}};
    Carrier atoms({"none", "some"});
    ConstSpec good{false, atoms, {{u(0), u(1, 2)}}, alg};
    CHECK_NOTHROW(check_const_algebra(good, MonadKind::Powerset, q));
    CHECK(std::get<std::string>(const_algebra(good, MonadKind::Powerset, q,
                                              Term::set({Term::constant(std::string("none")), Term::constant(std::string("some"))}))) == "some");
    CHECK(std::get<std::string>(const_algebra(good, MonadKind::Powerset, q, Term::set({}))) == "none");

    ConstSpec bad_eval{false, atoms, {{u(1, 4), u(1, 2)}}, alg};
    CHECK_THROWS_AS(check_const_algebra(bad_eval, MonadKind::Powerset, q), PreconditionError);
    ConstSpec bad_join{false, atoms, {{u(0), u(1, 2)}}, JoinAlgebra{0, {{0, 1}, {0, 1}}}};
    CHECK_THROWS_AS(check_const_algebra(bad_join, MonadKind::Powerset, q), PreconditionError);
    CHECK_THROWS_AS(check_const_algebra(good, MonadKind::Subdist, q), MethodUnavailable);
    CHECK_THROWS_AS(check_const_algebra(ConstSpec{false, atoms, {}, std::nullopt}, MonadKind::Powerset, q), PreconditionError);
}

TEST_CASE("distributive law suite")
{
    for (const auto &res : distlaw_laws()) {
        INFO(res.name << ": " << res.counterexample);
        CHECK(res.passed);
    }
}

TEST_CASE("the always-left split is caught")
{
    bool failed = false;
    for (const auto &res : distlaw_laws(LawOptions{}, SplitRule::AlwaysLeft)) failed = failed || !res.passed;
    CHECK(failed);
}

}
