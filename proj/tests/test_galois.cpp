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
#include "qlift/galois.hpp"
#include "qlift/laws.hpp"

#include <doctest.h>

#include <random>

using namespace qlift;

TEST_SUITE("galois") {

TEST_CASE("boolean gamma of an order is the monotone predicates")
{
    Quantale q(QuantaleId::Boolean);
    VGraph d = VGraph::discrete(q, Carrier({"x", "y"}));
    d.set("x", "y", Value::boolean(true));
    PredSet g = gamma_enum(d, Grid{});
    CHECK(g.size() == 3);
    CHECK_FALSE(g.contains({Value::boolean(true), Value::boolean(false)}));
}

TEST_CASE("discrete unit-oplus graphs admit every grid predicate")
{
    Quantale q(QuantaleId::UnitOplus);
    VGraph d = VGraph::discrete(q, Carrier({"x", "y"}));
    CHECK(gamma_enum(d, Grid{2, 1}).size() == 9);
    CHECK(gamma_enum(d, Grid{8, 1}).size() == 81);
}

TEST_CASE("alpha is the pointwise meet of residuated differences")
{
    Quantale q(QuantaleId::UnitOplus);
    Carrier c({"x", "y"});
    PredSet s(q, c);
    s.add({Value::unit_interval(0), Value::unit_interval(Rational(1, 2))});
    s.add({Value::unit_interval(Rational(1, 4)), Value::unit_interval(Rational(1, 8))});
    VGraph a = alpha(s);
    CHECK(a.at("x", "y") == Value::unit_interval(Rational(1, 2)));
    CHECK(a.at("y", "x") == Value::unit_interval(Rational(1, 8)));
    CHECK(a.at("x", "x") == q.unit());
    CHECK(alpha(PredSet(q, c)) == VGraph::top(q, c));
}

TEST_CASE("non-expansiveness reports the offending pair")
{
    Quantale q(QuantaleId::UnitOplus);
    VGraph d = VGraph::discrete(q, Carrier({"x", "y"}));
    d.set("x", "y", Value::unit_interval(Rational(1, 4)));
    Predicate f = {Value::unit_interval(0), Value::unit_interval(Rational(1, 2))};
    auto bad = nonexpansive_violation(d, f);
    REQUIRE(bad.has_value());
    CHECK(bad->first == 0);
    CHECK(bad->second == 1);
    f[1] = Value::unit_interval(Rational(1, 4));
    CHECK(is_nonexpansive(d, f));
}

TEST_CASE("gamma refuses beyond its budget")
{
    Quantale q(QuantaleId::UnitOplus);
    VGraph d = VGraph::discrete(q, Carrier({"a", "b", "c", "d"}));
    CHECK_THROWS_AS(gamma_enum(d, Grid{8, 1}, 1000), BudgetExceeded);
}

TEST_CASE("extensions are the extremal non-expansive grid values")
{
    // Oracle: try every grid value at the new point and keep the extremal valid ones.
    std::mt19937_64 rng(11);
    for (QuantaleId id : {QuantaleId::UnitOplus, QuantaleId::ExtPlus}) {
        Quantale q(id);
        auto draw = id == QuantaleId::UnitOplus ? grid_values(q, Grid{8, 1}) : grid_values(q, Grid{2, 6});
        // wide enough to hold every extension of a closure of drawn entries
        auto values = id == QuantaleId::UnitOplus ? draw : grid_values(q, Grid{2, 30});
        for (int s = 0; s < 150; ++s) {
            Carrier c({"a", "b", "z"});
            VGraph d = VGraph::discrete(q, c);
            for (std::size_t i = 0; i < 3; ++i) {
                for (std::size_t j = 0; j < 3; ++j) {
                    if (i != j) d.set(i, j, draw[rng() % draw.size()]);
                }
            }
            d = metric_closure(d);
            Predicate f = {d.at(0, 0), d.at(0, 1)};
            if (rng() % 2) f = {d.at(1, 0), d.at(1, 1)};
            auto big = extension_largest(d, {"a", "b"}, f);
            auto small = extension_smallest(d, {"a", "b"}, f);
            CHECK_FALSE(big.warning.has_value());
            std::optional<Value> hi, lo;
            for (const auto &w : values) {
                Predicate h = {f[0], f[1], w};
                if (!is_nonexpansive(d, h)) continue;
                if (!hi || q.leq(*hi, w)) hi = w;
                if (!lo || q.leq(w, *lo)) lo = w;
            }
            REQUIRE(hi.has_value());
            INFO(d.to_json().dump());
            CHECK(big.values[2] == *hi);
            CHECK(small.values[2] == *lo);
            CHECK(big.values[0] == f[0]);
            CHECK(small.values[1] == f[1]);
        }
    }
}

TEST_CASE("extensions reject broken inputs and close non-categories")
{
    Quantale q(QuantaleId::UnitOplus);
    VGraph d = VGraph::discrete(q, Carrier({"a", "b", "z"}));
    d.set("a", "b", q.unit());
    Predicate f = {Value::unit_interval(0), Value::unit_interval(1)};
    CHECK_THROWS_AS(extension_largest(d, {"a", "b"}, f), PreconditionError);

    VGraph open = VGraph::discrete(q, Carrier({"a", "b", "z"}));
    open.set("a", "b", Value::unit_interval(Rational(1, 4)));
    open.set("b", "z", Value::unit_interval(Rational(1, 4)));
    auto big = extension_largest(open, {"a"}, {Value::unit_interval(0)});
    auto small = extension_smallest(open, {"a"}, {Value::unit_interval(0)});
    CHECK(big.warning.has_value());
    CHECK(big.values[2] == Value::unit_interval(0));
    // through b, against the closure
    CHECK(small.values[2] == Value::unit_interval(Rational(1, 2)));
}

TEST_CASE("pulling predicates back along a map")
{
    Quantale q(QuantaleId::Boolean);
    Carrier x({"a", "b"}), y({"p"});
    PredSet t(q, y);
    t.add({Value::boolean(true)});
    PredSet p = pull(FiniteMap(x, y, {0, 0}), t);
    CHECK(p.contains({Value::boolean(true), Value::boolean(true)}));
    CHECK(p.size() == 1);
}

TEST_CASE("galois law suite")
{
    for (const auto &res : galois_laws()) {
        INFO(res.name << ": " << res.counterexample);
        CHECK(res.passed);
    }
}

}
