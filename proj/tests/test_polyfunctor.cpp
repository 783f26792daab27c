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

#include "qlift/errors.hpp"
#include "qlift/functor.hpp"
#include "qlift/laws.hpp"

#include <doctest.h>

using namespace qlift;

namespace {

Value u(long n, long d = 1) { return Value::unit_interval(Rational(n, d)); }

Term machine(const Value &v, std::vector<std::string> next)
{
    std::vector<Term> kids;
    for (auto &n : next) kids.push_back(Term::id(Term::elem(n)));
    return Term::tuple({Term::constant(v), Term::tuple(std::move(kids))});
}

Term raise(const Value &v) { return Term::inl(Term::constant(v)); }

Term branch(std::vector<std::string> next)
{
    std::vector<Term> kids;
    for (auto &n : next) kids.push_back(Term::id(Term::elem(n)));
    return Term::inr(Term::tuple(std::move(kids)));
}

VGraph sample_graph()
{
    Quantale q(QuantaleId::UnitOplus);
    VGraph d = VGraph::discrete(q, Carrier({"x", "y"}));
    d.set("x", "y", u(1, 4));
    d.set("y", "x", u(3, 4));
    return d;
}

} // namespace

TEST_SUITE("polyfunctor") {

TEST_CASE("term enumeration counts")
{
    std::vector<Term> leaves = {Term::elem("x"), Term::elem("y")};
    std::vector<Value> values = {u(0), u(1, 2), u(1)};
    CHECK(enumerate_terms(machine_functor({"a"}), leaves, values).size() == 6);
    CHECK(enumerate_terms(machine_functor({"a", "b"}), leaves, values).size() == 12);
    CHECK(enumerate_terms(exception_functor({"a", "b"}), leaves, values).size() == 7);
}

TEST_CASE("machine lifting by hand")
{
    VGraph d = sample_graph();
    FunctorExpr f = machine_functor({"a", "b"});
    auto terms = std::vector<Term>{machine(u(1, 2), {"x", "x"}), machine(u(1, 4), {"y", "x"}), machine(u(1), {"x", "y"})};
    VGraph l = lift_closed(f, d, terms);
    // payoff gap [1/2, 1/4] = 0, successors d(x,y) = 1/4
    CHECK(l.at(0, 1) == u(1, 4));
    // [1/4, 1/2] = 1/4, successors d(y,x) = 3/4
    CHECK(l.at(1, 0) == u(3, 4));
    // [1/2, 1] = 1/2, successors 0 and 1/4
    CHECK(l.at(0, 2) == u(1, 2));
    CHECK(l.at(2, 2) == u(0));
}

TEST_CASE("exception lifting by hand")
{
    VGraph d = sample_graph();
    FunctorExpr f = exception_functor({"a", "b"});
    auto terms = std::vector<Term>{raise(u(1, 4)), raise(u(3, 4)), branch({"x", "y"}), branch({"y", "y"})};
    VGraph l = lift_closed(f, d, terms);
    CHECK(l.at(0, 1) == u(1, 2));
    CHECK(l.at(1, 0) == u(0));
    // a raised exception is at distance top from any branch, the other way round bottom
    CHECK(l.at(0, 2) == u(0));
    CHECK(l.at(2, 0) == u(1));
    CHECK(l.at(2, 3) == u(1, 4));
    CHECK(l.at(3, 2) == u(3, 4));
}

TEST_CASE("structural lifting with a leaf distance")
{
    Quantale q(QuantaleId::UnitOplus);
    FunctorExpr f = machine_functor({"a"});
    auto leaf = [](const Term &, const Term &) { return u(1, 8); };
    CHECK(lift_poly(f, q, machine(u(0), {"x"}), machine(u(0), {"y"}), leaf) == u(1, 8));
    CHECK(lift_poly(f, q, machine(u(1), {"x"}), machine(u(0), {"y"}), leaf) == u(1, 8));
    CHECK(lift_poly(f, q, machine(u(0), {"x"}), machine(u(1), {"y"}), leaf) == u(1));
}

TEST_CASE("shape errors")
{
    FunctorExpr f = machine_functor({"a"});
    CHECK_NOTHROW(check_shape(f, machine(u(0), {"x"})));
    CHECK_THROWS_AS(check_shape(f, machine(u(0), {"x", "y"})), ShapeError);
    CHECK_THROWS_AS(check_shape(f, raise(u(0))), ShapeError);
}

TEST_CASE("functor and term json round trip")
{
    Quantale q(QuantaleId::UnitOplus);
    for (const auto &f : {machine_functor({"a", "b"}), exception_functor({"a", "b"})}) {
        FunctorExpr back = FunctorExpr::from_json(f.to_json(), q);
        CHECK(back.to_string() == f.to_string());
        for (const auto &t : enumerate_terms(f, {Term::elem("x"), Term::elem("y")}, {u(0), u(1, 3)})) {
            auto j = term_to_json(f, t, q, [](const Term &l) { return nlohmann::json(l.name()); });
            Term r = term_from_json(f, j, q, [](const nlohmann::json &l) { return Term::elem(l.get<std::string>()); });
            CHECK(r == t);
        }
    }
}

TEST_CASE("fmap and leaves")
{
    FunctorExpr f = exception_functor({"a", "b"});
    Term t = branch({"x", "y"});
    auto leaves = id_leaves(f, t);
    REQUIRE(leaves.size() == 2);
    CHECK(leaves[1] == Term::elem("y"));
    Term m = fmap(f, t, [](const Term &) { return Term::elem("z"); });
    CHECK(m == branch({"z", "z"}));
    CHECK(fmap(f, raise(u(1)), [](const Term &) { return Term::elem("z"); }) == raise(u(1)));
}

TEST_CASE("polyfunctor law suite")
{
    for (const auto &res : polyfunctor_laws()) {
        INFO(res.name << ": " << res.counterexample);
        CHECK(res.passed);
    }
}

}
