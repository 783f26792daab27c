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

#include "qlift/monad.hpp"

#include "qlift/errors.hpp"
#include "qlift/simplex.hpp"

namespace qlift {

std::string_view monad_name(MonadKind m) { return m == MonadKind::Powerset ? "powerset" : "subdist"; }

MonadKind parse_monad(std::string_view name)
{
    if (name == "powerset") return MonadKind::Powerset;
    if (name == "subdist") return MonadKind::Subdist;
    throw ParseError("unknown monad '" + std::string(name) + "'");
}

void check_monad_shape(MonadKind m, const Term &t)
{
    auto want = m == MonadKind::Powerset ? Term::Kind::Set : Term::Kind::Dist;
    if (t.kind() != want) throw ShapeError("expected a " + std::string(monad_name(m)) + " value, got " + t.to_string());
}

Term monad_unit(MonadKind m, Term x)
{
    if (m == MonadKind::Powerset) return Term::set({std::move(x)});
    return Term::dist({{std::move(x), Rational(1)}});
}

Term monad_mult(MonadKind m, const Term &tt)
{
    check_monad_shape(m, tt);
    if (m == MonadKind::Powerset) {
        std::vector<Term> members;
        for (const auto &inner : tt.children()) {
            check_monad_shape(m, inner);
            members.insert(members.end(), inner.children().begin(), inner.children().end());
        }
        return Term::set(std::move(members));
    }
    std::vector<std::pair<Term, Rational>> weighted;
    for (std::size_t i = 0; i < tt.children().size(); ++i) {
        const auto &inner = tt.children()[i];
        check_monad_shape(m, inner);
        for (std::size_t k = 0; k < inner.children().size(); ++k)
            weighted.emplace_back(inner.children()[k], tt.weights()[i] * inner.weights()[k]);
    }
    return Term::dist(std::move(weighted));
}

Term monad_map(MonadKind m, const Term &t, const LeafMap &fn)
{
    check_monad_shape(m, t);
    if (m == MonadKind::Powerset) {
        std::vector<Term> members;
        for (const auto &c : t.children()) members.push_back(fn(c));
        return Term::set(std::move(members));
    }
    std::vector<std::pair<Term, Rational>> weighted;
    for (std::size_t i = 0; i < t.children().size(); ++i) weighted.emplace_back(fn(t.children()[i]), t.weights()[i]);
    return Term::dist(std::move(weighted));
}

Value monad_eval(MonadKind m, const Quantale &q, const Term &t, const LeafValue &leaf)
{
    check_monad_shape(m, t);
    if (m == MonadKind::Powerset) {
        Value acc = q.top();
        for (const auto &c : t.children()) acc = q.meet(acc, leaf(c));
        return acc;
    }
    if (!q.is_real()) throw MethodUnavailable("expectation needs a real-valued quantale");
    std::vector<Value> parts;
    for (std::size_t i = 0; i < t.children().size(); ++i) parts.push_back(q.scale(t.weights()[i], leaf(t.children()[i])));
    return q.sum(parts);
}

namespace {

std::size_t elem_index(const VGraph &d, const Term &t)
{
    if (t.kind() != Term::Kind::Elem) throw ShapeError("expected a carrier element, got " + t.to_string());
    return d.carrier().index(t.name());
}

} // namespace

Value hausdorff_directed(const VGraph &d, const Term &u, const Term &v)
{
    check_monad_shape(MonadKind::Powerset, u);
    check_monad_shape(MonadKind::Powerset, v);
    const auto &q = d.quantale();
    VGraph dc = metric_closure(d);
    Value acc = q.top();
    for (const auto &y : v.children()) {
        Value best = q.bottom();
        for (const auto &x : u.children()) best = q.join(best, dc.at(elem_index(d, x), elem_index(d, y)));
        acc = q.meet(acc, best);
    }
    return acc;
}

LPLifting kantorovich_lp(const VGraph &d, const Term &p, const Term &q, bool use_closure)
{
    check_monad_shape(MonadKind::Subdist, p);
    check_monad_shape(MonadKind::Subdist, q);
    const auto &quant = d.quantale();
    if (!quant.is_real()) throw MethodUnavailable("transport lifting needs a real-valued quantale");
    if (p.mass() != q.mass())
        throw PreconditionError("transport lifting needs equal masses, got " + format_rational(p.mass()) + " and " + format_rational(q.mass()));

    const std::size_t n = d.size();
    VGraph dc = use_closure ? metric_closure(d) : d;

    Rational cap = 1;
    if (quant.id() == QuantaleId::ExtPlus) {
        cap = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (!dc.at(i, j).is_infinite() && dc.at(i, j).numeric() > cap) cap = dc.at(i, j).numeric();
            }
        }
    }

    std::vector<Rational> net(n, 0);
    for (std::size_t i = 0; i < q.children().size(); ++i) net[elem_index(d, q.children()[i])] += q.weights()[i];
    for (std::size_t i = 0; i < p.children().size(); ++i) net[elem_index(d, p.children()[i])] -= p.weights()[i];

    auto solve = [&](const Rational &box) {
        LinearProgram lp;
        for (std::size_t x = 0; x < n; ++x) lp.add_variable("f(" + d.carrier().name(x) + ")", 0, box);
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = 0; y < n; ++y) {
                if (x == y || dc.at(x, y).is_infinite()) continue;
                lp.add_constraint({{y, Rational(1)}, {x, Rational(-1)}}, LinearProgram::Sense::Leq, dc.at(x, y).numeric());
            }
        }
        LinearProgram::Row objective;
        for (std::size_t x = 0; x < n; ++x) {
            if (net[x] != 0) objective.emplace_back(x, net[x]);
        }
        lp.maximize(objective);
        return lp.solve();
    };

    bool infinite = false;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) infinite = infinite || dc.at(x, y).is_infinite();
    }
    if (!infinite) {
        auto sol = solve(cap);
        return {quant.from_numeric(sol.optimum), sol.assignment};
    }
    // A bounded optimum spreads by at most n-1 finite entries per component, so
    // growing the box past that changes the value only when it is infinite.
    Rational box = Rational(n > 1 ? n - 1 : 1) * cap + 1;
    auto sol = solve(box);
    if (solve(box + 1).optimum != sol.optimum) return {Value::infinity(), sol.assignment};
    return {quant.from_numeric(sol.optimum), sol.assignment};
}

nlohmann::json monad_value_to_json(MonadKind m, const Term &t, const std::function<nlohmann::json(const Term &)> &leaf)
{
    check_monad_shape(m, t);
    if (m == MonadKind::Powerset) {
        nlohmann::json members = nlohmann::json::array();
        for (const auto &c : t.children()) members.push_back(leaf(c));
        return {{"members", members}};
    }
    nlohmann::json weights = nlohmann::json::object();
    for (std::size_t i = 0; i < t.children().size(); ++i) {
        const auto &c = t.children()[i];
        if (c.kind() != Term::Kind::Elem) throw ShapeError("weights objects are keyed by element names");
        weights[c.name()] = format_rational(t.weights()[i]);
    }
    return {{"weights", weights}};
}

Term monad_value_from_json(MonadKind m, const nlohmann::json &j, const std::function<Term(const nlohmann::json &)> &leaf)
{
    if (j.is_string()) {
        Term t = parse_term(j.get<std::string>());
        if (t.kind() == Term::Kind::Elem) return monad_unit(m, t);
        check_monad_shape(m, t);
        return t;
    }
    if (m == MonadKind::Powerset) {
        if (!j.is_object() || !j.contains("members")) throw ParseError("expected {\"members\": [...]}, got " + j.dump());
        std::vector<Term> members;
        for (const auto &e : j.at("members")) members.push_back(leaf(e));
        return Term::set(std::move(members));
    }
    if (!j.is_object() || !j.contains("weights")) throw ParseError("expected {\"weights\": {...}}, got " + j.dump());
    std::vector<std::pair<Term, Rational>> weighted;
    for (auto it = j.at("weights").begin(); it != j.at("weights").end(); ++it) {
        Rational w = parse_rational(it.value().is_string() ? it.value().get<std::string>() : it.value().dump());
        weighted.emplace_back(leaf(nlohmann::json(it.key())), w);
    }
    return Term::dist(std::move(weighted));
}

std::vector<Term> all_subsets(const std::vector<Term> &elems)
{
    if (elems.size() > 20) throw BudgetExceeded("subset enumeration", std::uint64_t(1) << 20, std::uint64_t(1) << 20);
    std::vector<Term> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << elems.size()); ++mask) {
        std::vector<Term> members;
        for (std::size_t i = 0; i < elems.size(); ++i) {
            if (mask & (std::size_t(1) << i)) members.push_back(elems[i]);
        }
        out.push_back(Term::set(std::move(members)));
    }
    return out;
}

} // namespace qlift
