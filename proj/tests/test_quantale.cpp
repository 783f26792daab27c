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

using namespace qlift;

namespace {

Rational r(long n, long d = 1) { return Rational(n, d); }

} // namespace

TEST_SUITE("quantale") {

TEST_CASE("rationals parse from fractions, integers and decimals")
{
    CHECK(parse_rational("7/10") == r(7, 10));
    CHECK(parse_rational("0.7") == r(7, 10));
    CHECK(parse_rational(".25") == r(1, 4));
    CHECK(parse_rational("3/6") == r(1, 2));
    CHECK(parse_rational("-2") == r(-2));
    CHECK(parse_rational(" 1 / 3 ") == r(1, 3));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("1e3"), ParseError);
}

TEST_CASE("unit-oplus residuation is truncated subtraction")
{
    Quantale q(QuantaleId::UnitOplus);
    for (const auto &a : grid_values(q, Grid{12, 1})) {
        for (const auto &c : grid_values(q, Grid{12, 1})) {
            Rational diff = c.numeric() - a.numeric();
            CHECK(q.residuate(a, c).numeric() == (diff > 0 ? diff : r(0)));
            Rational sum = a.numeric() + c.numeric();
            CHECK(q.tensor(a, c).numeric() == (sum < 1 ? sum : r(1)));
        }
    }
    CHECK(q.top().numeric() == 0);
    CHECK(q.bottom().numeric() == 1);
    CHECK(q.unit() == q.top());
}

TEST_CASE("ext-plus residuation handles infinity")
{
    Quantale q(QuantaleId::ExtPlus);
    const Value inf = Value::infinity(), two = Value::extended(2), five = Value::extended(5);
    CHECK(q.residuate(two, five) == Value::extended(3));
    CHECK(q.residuate(five, two) == Value::extended(0));
    CHECK(q.residuate(two, inf) == inf);
    CHECK(q.residuate(inf, two) == Value::extended(0));
    CHECK(q.residuate(inf, inf) == Value::extended(0));
    CHECK(q.tensor(two, inf) == inf);
    CHECK(q.bottom() == inf);
    CHECK(q.join(two, five) == two);
    CHECK(q.meet(two, five) == five);
    CHECK(q.leq(five, two));
    CHECK_FALSE(q.leq(two, five));
}

TEST_CASE("boolean residuation is implication")
{
    Quantale q(QuantaleId::Boolean);
    for (bool a : {false, true}) {
        for (bool b : {false, true}) {
            CHECK(q.residuate(Value::boolean(a), Value::boolean(b)).as_bool() == (!a || b));
            CHECK(q.tensor(Value::boolean(a), Value::boolean(b)).as_bool() == (a && b));
            CHECK(q.leq(Value::boolean(a), Value::boolean(b)) == (!a || b));
        }
    }
}

TEST_CASE("scaling and sums stay exact")
{
    Quantale e(QuantaleId::ExtPlus), u(QuantaleId::UnitOplus);
    CHECK(e.scale(0, Value::infinity()) == Value::extended(0));
    CHECK(e.scale(r(1, 2), Value::infinity()) == Value::infinity());
    std::vector<Value> parts = {Value::unit_interval(r(1, 3)), Value::unit_interval(r(1, 6))};
    CHECK(u.sum(parts) == Value::unit_interval(r(1, 2)));
}

TEST_CASE("values are checked against their quantale")
{
    Quantale u(QuantaleId::UnitOplus), e(QuantaleId::ExtPlus), b(QuantaleId::Boolean);
    CHECK_THROWS_AS(u.from_numeric(r(3, 2)), QuantaleTypeError);
    CHECK_THROWS_AS(e.from_numeric(r(-1)), QuantaleTypeError);
    CHECK_THROWS_AS(u.join(Value::unit_interval(0), Value::extended(0)), QuantaleTypeError);
    CHECK_THROWS_AS(Value::boolean(true).numeric(), QuantaleTypeError);
    CHECK(e.parse("inf") == Value::infinity());
    CHECK(u.parse("1/4") == Value::unit_interval(r(1, 4)));
    CHECK(b.parse("1") == Value::boolean(true));
    CHECK(u.from_json(u.to_json(Value::unit_interval(r(2, 7)))) == Value::unit_interval(r(2, 7)));
    CHECK(e.from_json(e.to_json(Value::infinity())) == Value::infinity());
}

TEST_CASE("grids")
{
    Quantale u(QuantaleId::UnitOplus), e(QuantaleId::ExtPlus), b(QuantaleId::Boolean);
    CHECK(grid_values(u, Grid{8, 1}).size() == 9);
    CHECK(grid_values(e, Grid{4, 4}).size() == 18);
    CHECK(grid_values(e, Grid{4, 4}).back() == Value::infinity());
    CHECK(grid_values(b, Grid{}).size() == 2);
}

TEST_CASE("law suite checks at least ten thousand triples per law")
{
    auto results = quantale_laws();
    REQUIRE(!results.empty());
    for (const auto &res : results) {
        INFO(res.name << ": " << res.counterexample);
        CHECK(res.passed);
    }
    CHECK(results.front().checked >= 10000);
}

}
