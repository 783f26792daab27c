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
#include "qlift/laws.hpp"
#include "qlift/monad.hpp"
#include "qlift/simplex.hpp"

#include <doctest.h>

#include <random>

using namespace qlift;

namespace {

Value e(long n, long d = 1) { return Value::extended(Rational(n, d)); }

VGraph transport_graph()
{
    Quantale q(QuantaleId::ExtPlus);
    VGraph d = VGraph::discrete(q, Carrier({"A", "B", "C"}));
    const long m[3][3] = {{0, 3, 5}, {3, 0, 4}, {5, 4, 0}};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) d.set(i, j, e(m[i][j]));
    }
    return d;
}

Rational weight_of(const Term &p, const std::string &name)
{
    for (std::size_t i = 0; i < p.children().size(); ++i) {
        if (p.children()[i].name() == name) return p.weights()[i];
    }
    return 0;
}

// Cheapest coupling of p and q under the closed costs, solved as the primal program.
Rational primal_transport(const VGraph &d, const Term &p, const Term &q)
{
    VGraph c = metric_closure(d);
    const auto &names = d.carrier().names();
    const std::size_t n = names.size();
    LinearProgram lp;
    std::vector<std::vector<std::size_t>> var(n, std::vector<std::size_t>(n));
    LinearProgram::Row cost;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            var[i][j] = lp.add_variable("pi_" + names[i] + "_" + names[j]);
            cost.push_back({var[i][j], -c.at(i, j).numeric()});
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        LinearProgram::Row out, in;
        for (std::size_t j = 0; j < n; ++j) {
            out.push_back({var[i][j], 1});
            in.push_back({var[j][i], 1});
        }
        lp.add_constraint(out, LinearProgram::Sense::Eq, weight_of(p, names[i]));
        lp.add_constraint(in, LinearProgram::Sense::Eq, weight_of(q, names[i]));
    }
    lp.maximize(cost);
    return -lp.solve().optimum;
}

Term random_dist(const std::vector<std::string> &names, std::mt19937_64 &rng)
{
    const int den = 6;
    std::vector<int> w(names.size(), 0);
    for (int k = 0; k < den; ++k) ++w[rng() % names.size()];
    std::vector<std::pair<Term, Rational>> parts;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (w[i]) parts.push_back({Term::elem(names[i]), Rational(w[i], den)});
    }
    return Term::dist(std::move(parts));
}

} // namespace

TEST_SUITE("monadlift") {

TEST_CASE("transport example")
{
    VGraph d = transport_graph();
    Term p = parse_term("[7/10:A,1/10:B,1/5:C]");
    Term q = parse_term("[1/5:A,3/10:B,1/2:C]");
    auto res = kantorovich_lp(d, p, q);
    CHECK(res.value == e(21, 10));
    REQUIRE(res.potential.size() == 3);
    std::vector<Rational> f = {0, 3, 5};
    Rational gap = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        gap += (weight_of(q, d.carrier().names()[i]) - weight_of(p, d.carrier().names()[i])) * f[i];
        for (std::size_t j = 0; j < 3; ++j) CHECK(f[j] - f[i] <= d.at(i, j).numeric());
    }
    CHECK(gap == Rational(21, 10));
    CHECK(primal_transport(d, p, q) == Rational(21, 10));
}

TEST_CASE("transport dual equals the primal program")
{
    std::mt19937_64 rng(3);
    for (QuantaleId id : {QuantaleId::ExtPlus, QuantaleId::UnitOplus}) {
        Quantale q(id);
        Carrier c({"a", "b", "c", "d"});
        for (int s = 0; s < 60; ++s) {
            VGraph d = VGraph::discrete(q, c);
            for (std::size_t i = 0; i < 4; ++i) {
                for (std::size_t j = 0; j < 4; ++j) {
                    if (i == j) continue;
                    d.set(i, j, id == QuantaleId::ExtPlus ? e(long(rng() % 9), 2) : Value::unit_interval(Rational(long(rng() % 5), 4)));
                }
            }
            Term p = random_dist(c.names(), rng), t = random_dist(c.names(), rng);
            INFO(d.to_json().dump() << " " << p.to_string() << " " << t.to_string());
            CHECK(kantorovich_lp(d, p, t).value.numeric() == primal_transport(d, p, t));
            CHECK(kantorovich_lp(d, p, t, false).value == kantorovich_lp(d, p, t).value);
        }
    }
}

TEST_CASE("transport with an unreachable pair")
{
    Quantale q(QuantaleId::ExtPlus);
    VGraph d = VGraph::discrete(q, Carrier({"x", "y"}));
    d.set("x", "y", Value::infinity());
    d.set("y", "x", e(1));
    Term dx = parse_term("[1:x]"), dy = parse_term("[1:y]");
    CHECK(kantorovich_lp(d, dx, dy).value.is_infinite());
    CHECK(kantorovich_lp(d, dy, dx).value == e(1));
    CHECK(kantorovich_lp(d, dx, dx).value == e(0));
}

TEST_CASE("transport needs equal masses")
{
    VGraph d = transport_graph();
    CHECK_THROWS_AS(kantorovich_lp(d, parse_term("[1/2:A]"), parse_term("[1:B]")), PreconditionError);
    Quantale b(QuantaleId::Boolean);
    CHECK_THROWS_AS(kantorovich_lp(VGraph::discrete(b, Carrier({"A"})), parse_term("[1:A]"), parse_term("[1:A]")), MethodUnavailable);
}

TEST_CASE("Hausdorff by hand")
{
    VGraph d = transport_graph();
    Term a = parse_term("{A}"), bc = parse_term("{B,C}"), none = parse_term("{}");
    CHECK(hausdorff_directed(d, a, bc) == e(5));
    CHECK(hausdorff_directed(d, bc, a) == e(3));
    CHECK(hausdorff_directed(d, a, none) == e(0));
    CHECK(hausdorff_directed(d, none, a).is_infinite());
    CHECK(hausdorff_directed(d, bc, parse_term("{A,B,C}")) == e(3));
}

TEST_CASE("evaluation")
{
    Quantale q(QuantaleId::UnitOplus);
    auto leaf = [](const Term &t) { return Value::unit_interval(t.name() == "x" ? Rational(1, 4) : Rational(1)); };
    CHECK(monad_eval(MonadKind::Powerset, q, parse_term("{x,y}"), leaf) == Value::unit_interval(1));
    CHECK(monad_eval(MonadKind::Powerset, q, parse_term("{}"), leaf) == q.top());
    CHECK(monad_eval(MonadKind::Subdist, q, parse_term("[1/2:x,1/2:y]"), leaf) == Value::unit_interval(Rational(5, 8)));
}

TEST_CASE("monad structure")
{
    Term nested = parse_term("{{a,b},{b,c},{}}");
    CHECK(monad_mult(MonadKind::Powerset, nested) == parse_term("{a,b,c}"));
    Term dd = parse_term("[1/2:[1:a],1/2:[1/2:a,1/2:b]]");
    CHECK(monad_mult(MonadKind::Subdist, dd) == parse_term("[3/4:a,1/4:b]"));
    for (MonadKind m : {MonadKind::Powerset, MonadKind::Subdist}) {
        Term t = m == MonadKind::Powerset ? parse_term("{a,b}") : parse_term("[1/3:a,1/3:b]");
        CHECK(monad_mult(m, monad_unit(m, t)) == t);
        CHECK(monad_mult(m, monad_map(m, t, [m](const Term &x) { return monad_unit(m, x); })) == t);
    }
    CHECK_THROWS_AS(check_monad_shape(MonadKind::Subdist, parse_term("{a}")), ShapeError);
    CHECK(parse_monad("subdist") == MonadKind::Subdist);
    CHECK_THROWS_AS(parse_monad("list"), ParseError);
}

TEST_CASE("term syntax")
{
    for (const char *text : {"x", "{a,b}", "[1/2:a,1/4:b]", "{[1:a],[1/2:b]}", "[1/2:{a},1/2:{}]"}) {
        Term t = parse_term(text);
        CHECK(parse_term(t.to_string()) == t);
    }
    CHECK(parse_term("{b,a,a}") == parse_term("{a,b}"));
    CHECK(parse_term("[1/4:a,1/4:a]") == parse_term("[1/2:a]"));
    CHECK_THROWS_AS(parse_term("[3/4:a,1/2:b]"), PreconditionError);
    CHECK_THROWS_AS(parse_term("{a,"), ParseError);
    CHECK(all_subsets({Term::elem("a"), Term::elem("b"), Term::elem("c")}).size() == 8);
}

TEST_CASE("monad lifting law suite")
{
    for (const auto &res : monadlift_laws()) {
        INFO(res.name << ": " << res.counterexample);
        CHECK(res.passed);
    }
}

}
