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

#include <deque>
#include <set>
#include <tuple>

namespace qlift {

namespace {

nlohmann::json state_json(const Term &t) { return t.name(); }

std::function<Term(const nlohmann::json &)> state_reader(const Carrier &states)
{
    return [&states](const nlohmann::json &j) {
        if (!j.is_string()) throw ParseError("expected a state name, got " + j.dump());
        auto name = j.get<std::string>();
        if (!states.contains(name)) throw ParseError("unknown state '" + name + "'");
        return Term::elem(name);
    };
}

void check_state_value(const CoalgebraModel &m, const Term &t)
{
    check_monad_shape(m.monad, t);
    for (const auto &c : t.children()) {
        if (c.kind() != Term::Kind::Elem || !m.states.contains(c.name()))
            throw ShapeError("monad value " + t.to_string() + " mentions an unknown state");
    }
}

} // namespace

const Term &CoalgebraModel::step(const std::string &state) const
{
    auto it = transitions.find(state);
    if (it == transitions.end()) throw PreconditionError("no transition for state '" + state + "'");
    return it->second;
}

void CoalgebraModel::validate() const
{
    for (const auto &name : states.names()) {
        check_element_name(name);
        const Term &t = step(name);
        check_shape(functor, t);
        for (const auto &leaf : id_leaves(functor, t)) check_state_value(*this, leaf);
    }
    if (transitions.size() != states.size()) throw PreconditionError("transitions given for unknown states");
    if (monad == MonadKind::Subdist && !quantale.is_real()) throw MethodUnavailable("subdistributions need a real-valued quantale");
    check_distlaw(DistLaw{functor, monad}, quantale);
}

Term CoalgebraModel::parse_state(std::string_view text) const
{
    Term t = parse_term(text);
    if (t.kind() == Term::Kind::Elem) t = monad_unit(monad, t);
    check_state_value(*this, t);
    return t;
}

nlohmann::json CoalgebraModel::to_json() const
{
    nlohmann::json trans = nlohmann::json::object();
    for (const auto &[name, t] : transitions) {
        trans[name] = term_to_json(functor, t, quantale, [&](const Term &leaf) { return monad_value_to_json(monad, leaf, state_json); });
    }
    return {{"quantale", std::string(quantale_name(quantale.id()))},
            {"functor", functor.to_json()},
            {"monad", std::string(monad_name(monad))},
            {"states", states.names()},
            {"transitions", trans}};
}

CoalgebraModel CoalgebraModel::from_json(const nlohmann::json &j)
{
    if (!j.is_object()) throw ParseError("model must be a JSON object");
    for (const char *key : {"quantale", "functor", "monad", "states", "transitions"}) {
        if (!j.contains(key)) throw ParseError(std::string("model is missing \"") + key + "\"");
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        static const std::set<std::string> known = {"quantale", "functor", "monad", "states", "transitions", "labels", "description"};
        if (!known.count(it.key())) throw ParseError("unknown model field \"" + it.key() + "\"");
    }
    CoalgebraModel m;
    m.quantale = Quantale(parse_quantale(j.at("quantale").get<std::string>()));
    m.functor = FunctorExpr::from_json(j.at("functor"), m.quantale);
    m.monad = parse_monad(j.at("monad").get<std::string>());
    m.states = Carrier(j.at("states").get<std::vector<std::string>>());
    auto leaf_state = state_reader(m.states);
    for (auto it = j.at("transitions").begin(); it != j.at("transitions").end(); ++it) {
        if (!m.states.contains(it.key())) throw ParseError("transition for unknown state '" + it.key() + "'");
        m.transitions.emplace(it.key(), term_from_json(m.functor, it.value(), m.quantale, [&](const nlohmann::json &leaf) {
            return monad_value_from_json(m.monad, leaf, leaf_state);
        }));
    }
    if (j.contains("labels")) {
        auto labels = j.at("labels").get<std::vector<std::string>>();
        std::set<std::string> seen;
        std::function<void(const FunctorExpr &)> walk = [&](const FunctorExpr &f) {
            seen.insert(f.labels().begin(), f.labels().end());
            for (const auto &p : f.parts()) walk(p);
        };
        walk(m.functor);
        if (std::set<std::string>(labels.begin(), labels.end()) != seen) throw ParseError("labels do not match the functor");
    }
    m.validate();
    return m;
}

Determinization::Determinization(const CoalgebraModel &model, SplitRule split, std::uint64_t budget)
    : model_(model), law_{model.functor, model.monad, split}, budget_(budget)
{
}

const Term &Determinization::successor(const Term &state)
{
    if (auto it = memo_.find(state); it != memo_.end()) return it->second;
    check_state_value(model_, state);
    if (memo_.size() >= budget_) throw BudgetExceeded("determinization", memo_.size() + 1, budget_);
    const MonadKind m = model_.monad;
    Term tc = monad_map(m, state, [&](const Term &x) { return model_.step(x.name()); });
    Term z = apply_zeta(law_, model_.quantale, tc);
    Term out = fmap(model_.functor, z, [&](const Term &tt) { return monad_mult(m, tt); });
    return memo_.emplace(state, std::move(out)).first->second;
}

std::vector<Term> Determinization::successor_states(const Term &state) { return id_leaves(model_.functor, successor(state)); }

std::vector<Term> Determinization::reachable(const std::vector<Term> &seeds)
{
    std::set<Term> seen;
    std::vector<Term> order;
    std::deque<Term> work;
    for (const auto &s : seeds) {
        check_state_value(model_, s);
        if (seen.insert(s).second) {
            order.push_back(s);
            work.push_back(s);
        }
    }
    while (!work.empty()) {
        Term s = work.front();
        work.pop_front();
        for (auto &n : successor_states(s)) {
            if (seen.insert(n).second) {
                if (order.size() >= budget_) throw BudgetExceeded("reachable states", order.size() + 1, budget_);
                order.push_back(n);
                work.push_back(std::move(n));
            }
        }
    }
    return order;
}

Value beh_apply(Determinization &det, const Term &p, const Term &q, const LeafDist &d)
{
    Term sp = det.successor(p);
    const Term &sq = det.successor(q);
    return lift_poly(det.model().functor, det.model().quantale, sp, sq, d);
}

Value KleeneResult::at(const Term &p, const Term &q) const { return dist.at(p.to_string(), q.to_string()); }

KleeneResult kleene_gfp(Determinization &det, const std::vector<Term> &carrier, std::size_t max_iters)
{
    const auto &model = det.model();
    const auto &q = model.quantale;
    std::map<Term, std::size_t> index;
    for (std::size_t i = 0; i < carrier.size(); ++i) {
        if (!index.emplace(carrier[i], i).second) throw PreconditionError("duplicate carrier state " + carrier[i].to_string());
    }
    std::vector<Term> succ;
    for (const auto &s : carrier) {
        succ.push_back(det.successor(s));
        for (const auto &n : id_leaves(model.functor, succ.back())) {
            if (!index.count(n))
                throw PreconditionError("carrier is not closed under successors: " + s.to_string() + " reaches " + n.to_string());
        }
    }
    KleeneResult r{VGraph::top(q, term_carrier(carrier)), carrier, 0, false};
    const std::size_t n = carrier.size();
    while (r.iterations < max_iters) {
        VGraph next = r.dist;
        LeafDist leaf = [&](const Term &a, const Term &b) { return r.dist.at(index.at(a), index.at(b)); };
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) next.set(i, j, lift_poly(model.functor, q, succ[i], succ[j], leaf));
        }
        ++r.iterations;
        if (next == r.dist) {
            r.converged = true;
            break;
        }
        r.dist = std::move(next);
    }
    return r;
}

Value kleene_iterate(Determinization &det, const Term &p, const Term &q, std::size_t n)
{
    std::map<std::tuple<Term, Term, std::size_t>, Value> memo;
    std::function<Value(const Term &, const Term &, std::size_t)> go = [&](const Term &a, const Term &b, std::size_t k) -> Value {
        if (k == 0) return det.model().quantale.top();
        auto key = std::make_tuple(a, b, k);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        Value v = beh_apply(det, a, b, [&](const Term &x, const Term &y) { return go(x, y, k - 1); });
        memo.emplace(std::move(key), v);
        return v;
    };
    return go(p, q, n);
}

namespace {

struct ShapeInfo {
    TraceShape shape;
    const FunctorExpr *branches;
};

ShapeInfo shape_info(const CoalgebraModel &m)
{
    const auto &f = m.functor;
    auto is_values = [](const FunctorExpr &c) { return c.kind() == FunctorExpr::Kind::Const && c.const_spec().values; };
    auto is_branching = [](const FunctorExpr &p) {
        if (p.kind() != FunctorExpr::Kind::Prod || p.labels().empty()) return false;
        for (const auto &c : p.parts()) {
            if (c.kind() != FunctorExpr::Kind::Id) return false;
        }
        return true;
    };
    if (f.kind() == FunctorExpr::Kind::Prod && f.parts().size() == 2 && is_values(f.parts()[0]) && is_branching(f.parts()[1]))
        return {TraceShape::Machine, &f.parts()[1]};
    if (f.kind() == FunctorExpr::Kind::Coprod && is_values(f.parts()[0]) && is_branching(f.parts()[1])) {
        if (m.monad != MonadKind::Powerset) throw MethodUnavailable("exception traces need the powerset monad");
        return {TraceShape::Exception, &f.parts()[1]};
    }
    throw MethodUnavailable("trace semantics needs a V x Id^A or V + Id^A model, got " + f.to_string());
}

const Value &output_of(const Term &step) { return std::get<Value>(step.children()[0].atom()); }

const Term &branch_of(const Term &step, std::size_t label) { return step.children()[1].children()[label].child(); }

} // namespace

TraceShape trace_shape(const CoalgebraModel &model) { return shape_info(model).shape; }

std::vector<std::vector<std::string>> words_below(const std::vector<std::string> &labels, std::size_t length)
{
    std::vector<std::vector<std::string>> out;
    if (length == 0) return out;
    out.push_back({});
    std::size_t start = 0;
    for (std::size_t len = 1; len < length; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = start; i < end; ++i) {
            for (const auto &a : labels) {
                auto w = out[i];
                w.push_back(a);
                out.push_back(std::move(w));
            }
        }
        start = end;
    }
    return out;
}

TraceEntry trace_of(const CoalgebraModel &model, const Term &state, const std::vector<std::string> &word)
{
    auto info = shape_info(model);
    const auto &q = model.quantale;
    check_state_value(model, state);
    std::vector<std::size_t> letters;
    for (const auto &a : word) letters.push_back(info.branches->label_index(a));

    if (info.shape == TraceShape::Machine) {
        Term cur = state;
        for (auto a : letters) {
            if (model.monad == MonadKind::Powerset) {
                std::vector<Term> next;
                for (const auto &x : cur.children()) {
                    const auto &b = branch_of(model.step(x.name()), a);
                    next.insert(next.end(), b.children().begin(), b.children().end());
                }
                cur = Term::set(std::move(next));
            } else {
                std::vector<std::pair<Term, Rational>> next;
                for (std::size_t i = 0; i < cur.children().size(); ++i) {
                    const auto &b = branch_of(model.step(cur.children()[i].name()), a);
                    for (std::size_t k = 0; k < b.children().size(); ++k) next.emplace_back(b.children()[k], cur.weights()[i] * b.weights()[k]);
                }
                cur = Term::dist(std::move(next));
            }
        }
        Value v = monad_eval(model.monad, q, cur, [&](const Term &x) { return output_of(model.step(x.name())); });
        return {std::nullopt, v};
    }

    Term cur = state;
    for (std::size_t k = 0;; ++k) {
        std::vector<Value> thrown;
        for (const auto &x : cur.children()) {
            const auto &s = model.step(x.name());
            if (s.kind() == Term::Kind::Inl) thrown.push_back(std::get<Value>(s.child().atom()));
        }
        if (!thrown.empty()) return {k, q.meet(thrown)};
        if (k == letters.size()) return {std::nullopt, q.top()};
        std::vector<Term> next;
        for (const auto &x : cur.children()) {
            const auto &s = model.step(x.name());
            const auto &b = s.child().children()[letters[k]].child();
            next.insert(next.end(), b.children().begin(), b.children().end());
        }
        cur = Term::set(std::move(next));
    }
}

Value word_distance(const CoalgebraModel &model, const Term &p, const Term &q, const std::vector<std::string> &word)
{
    const auto &quant = model.quantale;
    TraceEntry tp = trace_of(model, p, word), tq = trace_of(model, q, word);
    if (trace_shape(model) == TraceShape::Machine) return quant.residuate(tp.value, tq.value);
    if (!tq.exception_step) return quant.top();
    if (!tp.exception_step) return quant.bottom();
    if (*tp.exception_step == *tq.exception_step) return quant.residuate(tp.value, tq.value);
    return *tp.exception_step > *tq.exception_step ? quant.bottom() : quant.top();
}

Value trace_lower_bound(const CoalgebraModel &model, const Term &p, const Term &q, std::size_t length)
{
    auto info = shape_info(model);
    Value acc = model.quantale.top();
    for (const auto &w : words_below(info.branches->labels(), length)) acc = model.quantale.meet(acc, word_distance(model, p, q, w));
    return acc;
}

TraceTable trace_table(const CoalgebraModel &model, const std::vector<Term> &states, std::size_t length)
{
    auto info = shape_info(model);
    TraceTable t;
    auto words = words_below(info.branches->labels(), length);
    for (const auto &w : words) {
        std::string s;
        for (const auto &a : w) s += a;
        t.words.push_back(s.empty() ? "eps" : s);
    }
    for (const auto &st : states) {
        std::vector<TraceEntry> row;
        for (const auto &w : words) row.push_back(trace_of(model, st, w));
        t.rows.emplace_back(st.to_string(), std::move(row));
    }
    return t;
}

Value Certificate::candidate(const Term &p, const Term &q) const
{
    auto it = entries.find({p, q});
    return it == entries.end() ? quantale.bottom() : it->second;
}

nlohmann::json Certificate::to_json() const
{
    auto tv = [&](const Term &t) { return monad_value_to_json(monad, t, state_json); };
    nlohmann::json es = nlohmann::json::array(), ws = nlohmann::json::array();
    for (const auto &[pair, v] : entries) es.push_back({{"lhs", tv(pair.first)}, {"rhs", tv(pair.second)}, {"value", quantale.to_json(v)}});
    for (const auto &w : witnesses) {
        nlohmann::json parts = nlohmann::json::array();
        for (const auto &p : w.parts) {
            nlohmann::json jp = {{"lhs", tv(p.lhs)}, {"rhs", tv(p.rhs)}};
            if (monad == MonadKind::Subdist) jp["weight"] = format_rational(p.weight);
            parts.push_back(jp);
        }
        ws.push_back({{"lhs", tv(w.lhs)}, {"rhs", tv(w.rhs)}, {"parts", parts}});
    }
    return {{"entries", es}, {"witnesses", ws}};
}

Certificate Certificate::from_json(const nlohmann::json &j, const CoalgebraModel &model)
{
    if (!j.is_object() || !j.contains("entries")) throw ParseError("certificate needs an entries list");
    Certificate c;
    c.quantale = model.quantale;
    c.monad = model.monad;
    auto reader = state_reader(model.states);
    auto tv = [&](const nlohmann::json &v) {
        Term t = monad_value_from_json(model.monad, v, reader);
        check_state_value(model, t);
        return t;
    };
    for (const auto &e : j.at("entries")) {
        auto key = std::make_pair(tv(e.at("lhs")), tv(e.at("rhs")));
        if (!c.entries.emplace(key, model.quantale.from_json(e.at("value"))).second)
            throw ParseError("duplicate certificate entry for (" + key.first.to_string() + ", " + key.second.to_string() + ")");
    }
    if (j.contains("witnesses")) {
        for (const auto &w : j.at("witnesses")) {
            Witness wit{tv(w.at("lhs")), tv(w.at("rhs")), {}};
            for (const auto &p : w.at("parts")) {
                WitnessPart part{1, tv(p.at("lhs")), tv(p.at("rhs"))};
                if (p.contains("weight")) {
                    if (model.monad == MonadKind::Powerset) throw ParseError("powerset witness parts carry no weight");
                    const auto &jw = p.at("weight");
                    part.weight = parse_rational(jw.is_string() ? jw.get<std::string>() : jw.dump());
                } else if (model.monad == MonadKind::Subdist) {
                    throw ParseError("subdistribution witness parts need a weight");
                }
                wit.parts.push_back(std::move(part));
            }
            c.witnesses.push_back(std::move(wit));
        }
    }
    return c;
}

void check_witness(MonadKind m, const Witness &w)
{
    Term lhs = w.lhs, rhs = w.rhs;
    if (m == MonadKind::Powerset) {
        std::vector<Term> ls, rs;
        for (const auto &p : w.parts) {
            ls.push_back(p.lhs);
            rs.push_back(p.rhs);
        }
        lhs = monad_mult(m, Term::set(ls));
        rhs = monad_mult(m, Term::set(rs));
    } else {
        std::vector<std::pair<Term, Rational>> ls, rs;
        for (const auto &p : w.parts) {
            if (p.weight <= 0) throw CertificateError("witness weights must be positive");
            ls.emplace_back(p.lhs, p.weight);
            rs.emplace_back(p.rhs, p.weight);
        }
        lhs = monad_mult(m, Term::dist(ls));
        rhs = monad_mult(m, Term::dist(rs));
    }
    const std::string pair = "(" + w.lhs.to_string() + ", " + w.rhs.to_string() + ")";
    if (!(lhs == w.lhs)) throw CertificateError("witness for " + pair + ": first marginal is " + lhs.to_string());
    if (!(rhs == w.rhs)) throw CertificateError("witness for " + pair + ": second marginal is " + rhs.to_string());
}

Value witness_bound(const Certificate &cert, const Term &p, const Term &q)
{
    const auto &quant = cert.quantale;
    Value best = cert.candidate(p, q);
    for (const auto &w : cert.witnesses) {
        if (!(w.lhs == p) || !(w.rhs == q)) continue;
        check_witness(cert.monad, w);
        Value bound = quant.top();
        if (cert.monad == MonadKind::Powerset) {
            for (const auto &part : w.parts) bound = quant.meet(bound, cert.candidate(part.lhs, part.rhs));
        } else {
            std::vector<Value> terms;
            for (const auto &part : w.parts) terms.push_back(quant.scale(part.weight, cert.candidate(part.lhs, part.rhs)));
            bound = quant.sum(terms);
        }
        best = quant.join(best, bound);
    }
    return best;
}

Verdict certify(Determinization &det, const Certificate &cert)
{
    Verdict v;
    const auto &quant = cert.quantale;
    if (!(quant == det.model().quantale) || cert.monad != det.model().monad) {
        v.reason = "certificate does not match the model's quantale or monad";
        return v;
    }
    for (const auto &w : cert.witnesses) {
        try {
            check_witness(cert.monad, w);
        } catch (const CertificateError &e) {
            v.reason = e.what();
            v.pair = std::make_pair(w.lhs, w.rhs);
            return v;
        }
    }
    auto covered = [&](const Term &a, const Term &b) {
        if (cert.entries.count({a, b})) return true;
        for (const auto &w : cert.witnesses) {
            if (w.lhs == a && w.rhs == b) return true;
        }
        return false;
    };
    v.accepted = true;
    for (const auto &[pair, claimed] : cert.entries) {
        std::optional<std::pair<Term, Term>> uncovered;
        Value bound = beh_apply(det, pair.first, pair.second, [&](const Term &a, const Term &b) {
            if (!uncovered && !covered(a, b)) uncovered = std::make_pair(a, b);
            return witness_bound(cert, a, b);
        });
        bool ok = quant.leq(claimed, bound);
        v.checks.push_back({pair.first, pair.second, claimed, bound, ok});
        if (!ok && v.accepted) {
            v.accepted = false;
            v.pair = pair;
            v.reason = "claimed " + claimed.to_string() + " at (" + pair.first.to_string() + ", " + pair.second.to_string() +
                       ") but one step only guarantees " + bound.to_string();
            if (uncovered)
                v.reason += "; successor pair (" + uncovered->first.to_string() + ", " + uncovered->second.to_string() +
                            ") has no entry or witness";
        }
    }
    if (v.accepted) v.reason = "all " + std::to_string(v.checks.size()) + " entries are post-fixpoint inequalities";
    return v;
}

Value u_exact(const Certificate &cert, const Carrier &states, const Term &p, const Term &q, std::uint64_t budget)
{
    if (cert.monad != MonadKind::Powerset) throw MethodUnavailable("exact up-to closure is only available for the powerset monad");
    const auto &quant = cert.quantale;
    if (states.size() > 4) throw BudgetExceeded("exact up-to closure", std::uint64_t(1) << (std::uint64_t(1) << states.size()), budget);

    std::vector<Term> elems;
    for (const auto &n : states.names()) elems.push_back(Term::elem(n));
    std::vector<Term> ys = all_subsets(elems);
    VGraph dy = VGraph::bottom(quant, term_carrier(ys));
    for (std::size_t i = 0; i < ys.size(); ++i) {
        for (std::size_t j = 0; j < ys.size(); ++j) dy.set(i, j, cert.candidate(ys[i], ys[j]));
    }
    VGraph dc = metric_closure(dy);

    auto covers = [&](const Term &target) {
        std::vector<std::vector<std::size_t>> out;
        for (std::size_t mask = 0; mask < (std::size_t(1) << ys.size()); ++mask) {
            std::vector<Term> members;
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < ys.size(); ++i) {
                if (mask & (std::size_t(1) << i)) {
                    idx.push_back(i);
                    members.push_back(ys[i]);
                }
            }
            if (monad_mult(MonadKind::Powerset, Term::set(members)) == target) out.push_back(std::move(idx));
        }
        return out;
    };
    auto t1s = covers(p), t2s = covers(q);
    std::uint64_t count = std::uint64_t(t1s.size()) * t2s.size();
    if (count > budget) throw BudgetExceeded("exact up-to closure", count, budget);

    Value best = quant.bottom();
    for (const auto &t1 : t1s) {
        for (const auto &t2 : t2s) {
            // Both projections of a coupling are empty or neither is.
            if (t1.empty() != t2.empty()) continue;
            Value h = quant.top();
            for (auto v : t2) {
                Value inner = quant.bottom();
                for (auto u : t1) inner = quant.join(inner, dc.at(u, v));
                h = quant.meet(h, inner);
            }
            best = quant.join(best, h);
        }
    }
    return best;
}

} // namespace qlift
