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
#include "qlift/vgraph.hpp"

#include <doctest.h>

#include <random>

using namespace qlift;

namespace {

// Shortest paths over numeric entries, capped at 1 for unit-oplus; -1 stands for infinity.
std::vector<std::vector<Rational>> floyd(const std::vector<std::vector<Rational>> &w, bool capped)
{
    auto d = w;
    const std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (d[i][k] < 0 || d[k][j] < 0) continue;
                Rational via = d[i][k] + d[k][j];
                if (capped && via > 1) via = 1;
                if (d[i][j] < 0 || via < d[i][j]) d[i][j] = via;
            }
        }
    }
    return d;
}

Carrier abc() { return Carrier({"a", "b", "c", "d"}); }

} // namespace

TEST_SUITE("vgraph") {

TEST_CASE("metric closure matches shortest paths")
{
    std::mt19937_64 rng(7);
    for (QuantaleId id : {QuantaleId::UnitOplus, QuantaleId::ExtPlus}) {
        Quantale q(id);
        const bool capped = id == QuantaleId::UnitOplus;
        for (int s = 0; s < 200; ++s) {
            VGraph g = VGraph::bottom(q, abc());
            std::vector<std::vector<Rational>> w(4, std::vector<Rational>(4));
            for (std::size_t i = 0; i < 4; ++i) {
                for (std::size_t j = 0; j < 4; ++j) {
                    int k = int(rng() % 9);
                    if (!capped && k == 8) {
                        w[i][j] = -1;
                        g.set(i, j, Value::infinity());
                    } else {
                        w[i][j] = capped ? Rational(k) / 8 : Rational(k) / 2;
                        g.set(i, j, q.from_numeric(w[i][j]));
                    }
                }
            }
            auto want = floyd(w, capped);
            VGraph c = metric_closure(g);
            CHECK(is_vcat(c));
            CHECK(graph_leq(c, metric_closure(c)));
            CHECK(graph_leq(metric_closure(c), c));
            CHECK(graph_leq(g, c));
            for (std::size_t i = 0; i < 4; ++i) {
                for (std::size_t j = 0; j < 4; ++j) {
                    if (want[i][j] < 0) CHECK(c.at(i, j).is_infinite());
                    else CHECK(c.at(i, j).numeric() == want[i][j]);
                }
            }
        }
    }
}

TEST_CASE("boolean closure is reflexive transitive closure")
{
    Quantale q(QuantaleId::Boolean);
    Carrier c({"a", "b", "c"});
    VGraph g = VGraph::bottom(q, c);
    g.set("a", "b", Value::boolean(true));
    g.set("b", "c", Value::boolean(true));
    VGraph cl = metric_closure(g);
    CHECK(cl.at("a", "c").as_bool());
    CHECK(cl.at("c", "c").as_bool());
    CHECK_FALSE(cl.at("c", "a").as_bool());
    CHECK_FALSE(is_vcat(g));
    CHECK(is_vcat(cl));
}

TEST_CASE("reindexing and direct images")
{
    Quantale q(QuantaleId::UnitOplus);
    Carrier y({"p", "q"}), x({"a", "b", "c"});
    VGraph d = VGraph::discrete(q, y);
    d.set("p", "q", Value::unit_interval(Rational(1, 3)));
    FiniteMap f(x, y, {0, 0, 1});
    VGraph pulled = reindex(f, d);
    CHECK(pulled.at("a", "b") == q.unit());
    CHECK(pulled.at("a", "c") == Value::unit_interval(Rational(1, 3)));
    CHECK(pulled.at("c", "a") == q.bottom());

    VGraph e = VGraph::discrete(q, x);
    e.set("a", "c", Value::unit_interval(Rational(1, 2)));
    e.set("b", "c", Value::unit_interval(Rational(1, 4)));
    VGraph img = direct_image(f, e);
    CHECK(img.at("p", "q") == Value::unit_interval(Rational(1, 4)));
    CHECK(img.at("q", "p") == q.bottom());
    CHECK(img.at("p", "p") == q.unit());
}

TEST_CASE("json round trip and validation")
{
    Quantale q(QuantaleId::ExtPlus);
    VGraph d = VGraph::discrete(q, Carrier({"A", "B"}));
    d.set("A", "B", Value::extended(3));
    CHECK(VGraph::from_json(d.to_json()) == d);
    auto bad = d.to_json();
    bad["dist"][0].erase(1);
    CHECK_THROWS_AS(VGraph::from_json(bad), ParseError);
    CHECK_THROWS(Carrier({"a", "a"}));
    CHECK_THROWS_AS(graph_leq(d, VGraph::discrete(q, Carrier({"A"}))), CarrierMismatch);
}

}
