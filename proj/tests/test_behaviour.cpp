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

#include "qlift/behaviour.hpp"
#include "qlift/errors.hpp"
#include "qlift/laws.hpp"
#include "qlift/models.hpp"
#include "qlift/repro.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace qlift;

namespace {

Value u(long n, long d = 1) { return Value::unit_interval(Rational(n, d)); }

Term set_of(std::initializer_list<const char *> names)
{
    std::vector<Term> out;
    for (const char *n : names) out.push_back(Term::elem(n));
    return Term::set(std::move(out));
}

Term dirac(const char *s) { return Term::dist({{Term::elem(s), Rational(1)}}); }

WitnessPart part(Term l, Term r) { return {1, std::move(l), std::move(r)}; }

const std::filesystem::path fixtures = QLIFT_FIXTURES_DIR;

nlohmann::json without_description(nlohmann::json j)
{
    j.erase("description");
    return j;
}

} // namespace

TEST_SUITE("behaviour") {

TEST_CASE("determinization unions successors label by label")
{
    auto model = exception_model(3);
    Determinization det(model);
    Term s = det.successor(set_of({"x0", "y0"}));
    Term want = Term::inr(Term::tuple({Term::id(set_of({"x0", "x1", "y0"})), Term::id(set_of({"x0", "y0", "y1"}))}));
    CHECK(s == want);
    // x3 throws, so anything containing it throws its payoff.
    CHECK(det.successor(set_of({"x2", "x3"})) == Term::inl(Term::constant(u(1, 4))));
    CHECK(det.successor(set_of({"x3", "z3"})) == Term::inl(Term::constant(u(1, 2))));
}

TEST_CASE("probabilistic chain trace table")
{
    auto model = probchain_model();
    Term x = dirac("x"), y = dirac("y");
    std::vector<std::vector<std::string>> words = {{}, {"a"}, {"a", "a"}, {"a", "a", "a"}};
    const Value xs[] = {u(1, 2), u(3, 4), u(7, 8), u(15, 16)};
    for (std::size_t k = 0; k < words.size(); ++k) {
        CHECK(trace_of(model, x, words[k]).value == xs[k]);
        CHECK(trace_of(model, y, words[k]).value == u(1, 2));
    }
    Rational p = 1;
    for (unsigned len = 1; len <= 10; ++len) {
        p *= 2;
        CHECK(trace_lower_bound(model, y, x, len) == Value::unit_interval((p - 1) / p - Rational(1, 2)));
        CHECK(trace_lower_bound(model, x, y, len) == u(0));
    }
    CHECK(words_below({"a", "b"}, 3).size() == 7);
    CHECK(words_below({"a"}, 0).empty());
}

TEST_CASE("exception traces compare exception steps first")
{
    auto model = exception_model(3);
    Term xy = set_of({"x0", "y0"}), z = set_of({"z0"});
    CHECK(trace_lower_bound(model, xy, z, 5) == u(1, 4));
    auto e = trace_of(model, set_of({"x1"}), {"a", "a"});
    REQUIRE(e.exception_step.has_value());
    CHECK(*e.exception_step == 2);
    CHECK(e.value == u(1, 4));
    CHECK_FALSE(trace_of(model, set_of({"x1"}), {"a"}).exception_step.has_value());
    CHECK(word_distance(model, set_of({"x1"}), set_of({"z2"}), {"a"}) == u(1));
    CHECK(word_distance(model, set_of({"z2"}), set_of({"x1"}), {"a"}) == u(0));
}

TEST_CASE("Kleene iteration on the exception model")
{
    auto model = exception_model(3);
    Determinization det(model);
    auto carrier = det.reachable({set_of({"x0", "y0"}), set_of({"z0"}), set_of({"y1"}), set_of({"z1"})});
    auto r = kleene_gfp(det, carrier);
    CHECK(r.converged);
    CHECK(r.at(set_of({"x0", "y0"}), set_of({"z0"})) == u(1, 4));
    CHECK(r.at(set_of({"y1"}), set_of({"z1"})) == u(1, 6));
    CHECK(kleene_iterate(det, set_of({"x0", "y0"}), set_of({"z0"}), r.iterations) == u(1, 4));
}

TEST_CASE("an absorbing state is stable after one round")
{
    auto model = probchain_model();
    Determinization det(model);
    auto r = kleene_gfp(det, {dirac("y")});
    CHECK(r.converged);
    CHECK(r.iterations == 1);
    CHECK(r.at(dirac("y"), dirac("y")) == u(0));
}

TEST_CASE("witnesses must recombine to their pair")
{
    Certificate cert = exception_certificate(exception_model(3), 3);
    Witness bad{set_of({"x0", "x1", "y0"}), set_of({"z0", "z1"}),
                {part(set_of({"x0", "y0"}), set_of({"z0"})), part(set_of({"x1"}), set_of({"z1"})), part(set_of({"y1"}), set_of({"z1"}))}};
    CHECK_THROWS_AS(check_witness(MonadKind::Powerset, bad), CertificateError);
    cert.witnesses.push_back(bad);
    CHECK_THROWS_AS(witness_bound(cert, bad.lhs, bad.rhs), CertificateError);
    auto model = exception_model(3);
    Determinization det(model);
    Verdict v = certify(det, cert);
    CHECK_FALSE(v.accepted);
}

TEST_CASE("witness bounds")
{
    auto model = exception_model(3);
    Certificate cert = exception_certificate(model, 3);
    CHECK(witness_bound(cert, set_of({"x0", "x1", "y0"}), set_of({"z0", "z1"})) == u(1, 4));
    CHECK(witness_bound(cert, set_of({"x0", "y0", "y1"}), set_of({"z0", "z1"})) == u(1, 4));
    CHECK(witness_bound(cert, set_of({"x2"}), set_of({"y2"})) == u(1));

    auto pm = probchain_model();
    Certificate pc = probchain_certificate(pm);
    Term mix = Term::dist({{Term::elem("x"), Rational(1, 2)}, {Term::elem("x'"), Rational(1, 2)}});
    CHECK(witness_bound(pc, mix, dirac("y")) == u(1, 2));
}

TEST_CASE("certification")
{
    auto model = exception_model(3);
    Determinization det(model);
    Certificate cert = exception_certificate(model, 3);
    Verdict ok = certify(det, cert);
    CHECK(ok.accepted);
    CHECK(ok.checks.size() == cert.entries.size());

    Certificate tampered = cert;
    const auto key = std::make_pair(set_of({"x0", "y0"}), set_of({"z0"}));
    tampered.entries.insert_or_assign(key, u(1, 5));
    Verdict no = certify(det, tampered);
    CHECK_FALSE(no.accepted);
    REQUIRE(no.pair.has_value());
    CHECK(*no.pair == key);

    // Raising a successor's entry weakens the bound it supplies elsewhere.
    Certificate raised = cert;
    raised.entries.insert_or_assign(std::make_pair(set_of({"x1"}), set_of({"z1"})), u(1, 2));
    Verdict r = certify(det, raised);
    CHECK_FALSE(r.accepted);
    REQUIRE(r.pair.has_value());
    CHECK(*r.pair == key);

    auto pm = probchain_model();
    Determinization pdet(pm);
    CHECK(certify(pdet, probchain_certificate(pm)).accepted);
    CHECK_FALSE(certify(pdet, cert).accepted);
}

TEST_CASE("exact up-to closure agrees with a brute-force search")
{
    // Oracle: every pair of sets of sets whose unions are p and q, scored by the directed Hausdorff distance.
    std::mt19937_64 rng(5);
    Quantale q(QuantaleId::UnitOplus);
    Carrier states({"s", "t"});
    std::vector<Term> ys = {set_of({}), set_of({"s"}), set_of({"t"}), set_of({"s", "t"})};
    for (int sample = 0; sample < 40; ++sample) {
        Certificate cert;
        cert.quantale = q;
        cert.monad = MonadKind::Powerset;
        for (const auto &a : ys) {
            for (const auto &b : ys) {
                if (rng() % 3 == 0) cert.entries.emplace(std::make_pair(a, b), Value::unit_interval(Rational(long(rng() % 5), 4)));
            }
        }
        VGraph dy = VGraph::bottom(q, term_carrier(ys));
        for (std::size_t i = 0; i < ys.size(); ++i) {
            for (std::size_t j = 0; j < ys.size(); ++j) dy.set(i, j, cert.candidate(ys[i], ys[j]));
        }
        VGraph dc = metric_closure(dy);
        auto unions = [&](unsigned mask) {
            std::set<std::string> names;
            for (std::size_t i = 0; i < 4; ++i) {
                if (mask & (1u << i)) {
                    for (const auto &c : ys[i].children()) names.insert(c.name());
                }
            }
            std::vector<Term> out;
            for (const auto &n : names) out.push_back(Term::elem(n));
            return Term::set(std::move(out));
        };
        for (const auto &p : ys) {
            for (const auto &t : ys) {
                Value best = q.bottom();
                for (unsigned m1 = 0; m1 < 16; ++m1) {
                    if (!(unions(m1) == p)) continue;
                    for (unsigned m2 = 0; m2 < 16; ++m2) {
                        if (!(unions(m2) == t) || (m1 == 0) != (m2 == 0)) continue;
                        Value h = q.top();
                        for (std::size_t v = 0; v < 4; ++v) {
                            if (!(m2 & (1u << v))) continue;
                            Value inner = q.bottom();
                            for (std::size_t w = 0; w < 4; ++w) {
                                if (m1 & (1u << w)) inner = q.join(inner, dc.at(w, v));
                            }
                            h = q.meet(h, inner);
                        }
                        best = q.join(best, h);
                    }
                }
                INFO(p.to_string() << " " << t.to_string());
                CHECK(u_exact(cert, states, p, t) == best);
                CHECK(q.leq(witness_bound(cert, p, t), u_exact(cert, states, p, t)));
            }
        }
    }
}

TEST_CASE("json round trips and the bundled fixtures")
{
    auto em = exception_model(3);
    CHECK(CoalgebraModel::from_json(em.to_json()).to_json() == em.to_json());
    auto ec = exception_certificate(em, 3);
    CHECK(Certificate::from_json(ec.to_json(), em).to_json() == ec.to_json());
    auto pm = probchain_model();
    auto pc = probchain_certificate(pm);
    CHECK(Certificate::from_json(pc.to_json(), pm).to_json() == pc.to_json());

    CHECK(without_description(load_json(fixtures / "exceptions.json")) == em.to_json());
    CHECK(without_description(load_json(fixtures / "probchain.json")) == pm.to_json());
    CHECK(load_json(fixtures / "exceptions_cert.json") == ec.to_json());
    CHECK(load_json(fixtures / "probchain_cert.json") == pc.to_json());

    auto j = em.to_json();
    j["outputs"] = nlohmann::json::array();
    CHECK_THROWS_AS(CoalgebraModel::from_json(j), ParseError);
    auto k = em.to_json();
    k.erase("functor");
    CHECK_THROWS_AS(CoalgebraModel::from_json(k), ParseError);
}

TEST_CASE("behaviour law suite")
{
    for (const auto &res : behaviour_laws()) {
        INFO(res.name << ": " << res.counterexample);
        CHECK(res.passed);
    }
}

}
