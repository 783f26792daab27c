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

#include "qlift/functor.hpp"

#include "qlift/errors.hpp"

#include <map>

namespace qlift {

FunctorExpr FunctorExpr::constant_values()
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Const;
    n->spec.values = true;
    return FunctorExpr(n);
}

FunctorExpr FunctorExpr::constant_atoms(Carrier atoms, std::vector<Predicate> evals, std::optional<JoinAlgebra> algebra)
{
    for (const auto &ev : evals) {
        if (ev.size() != atoms.size()) throw ShapeError("constant evaluation must give one value per atom");
    }
    if (algebra) {
        if (algebra->bottom >= atoms.size() || algebra->join.size() != atoms.size())
            throw ShapeError("join table must be square over the atoms");
        for (const auto &row : algebra->join) {
            if (row.size() != atoms.size()) throw ShapeError("join table must be square over the atoms");
            for (auto k : row) {
                if (k >= atoms.size()) throw ShapeError("join table entry outside the atoms");
            }
        }
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::Const;
    n->spec.atoms = std::move(atoms);
    n->spec.evals = std::move(evals);
    n->spec.algebra = std::move(algebra);
    return FunctorExpr(n);
}

FunctorExpr FunctorExpr::id()
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Id;
    return FunctorExpr(n);
}

FunctorExpr FunctorExpr::prod(std::vector<FunctorExpr> parts, std::vector<std::string> labels)
{
    if (!labels.empty()) {
        if (labels.size() != parts.size()) throw ShapeError("product labels must match its components");
        Carrier check(labels);
        (void)check;
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::Prod;
    n->parts = std::move(parts);
    n->labels = std::move(labels);
    return FunctorExpr(n);
}

FunctorExpr FunctorExpr::pow(std::vector<std::string> labels, const FunctorExpr &body)
{
    if (labels.empty()) throw ShapeError("power needs at least one label");
    std::vector<FunctorExpr> parts(labels.size(), body);
    return prod(std::move(parts), std::move(labels));
}

FunctorExpr FunctorExpr::coprod(FunctorExpr left, FunctorExpr right)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Coprod;
    n->parts = {std::move(left), std::move(right)};
    return FunctorExpr(n);
}

const ConstSpec &FunctorExpr::const_spec() const
{
    if (kind() != Kind::Const) throw ShapeError("functor is not a constant");
    return node_->spec;
}

std::size_t FunctorExpr::label_index(const std::string &label) const
{
    for (std::size_t i = 0; i < labels().size(); ++i) {
        if (labels()[i] == label) return i;
    }
    throw ShapeError("unknown label '" + label + "'");
}

std::string FunctorExpr::to_string() const
{
    switch (kind()) {
    case Kind::Const:
        if (node_->spec.values) return "V";
        return "{" + [&] {
            std::string s;
            for (std::size_t i = 0; i < node_->spec.atoms.size(); ++i) s += (i ? "," : "") + node_->spec.atoms.name(i);
            return s;
        }() + "}";
    case Kind::Id: return "Id";
    case Kind::Prod: {
        if (!labels().empty()) {
            bool uniform = true;
            for (const auto &p : parts()) uniform = uniform && p.to_string() == parts().front().to_string();
            if (uniform) {
                std::string s;
                for (std::size_t i = 0; i < labels().size(); ++i) s += (i ? "," : "") + labels()[i];
                return parts().front().to_string() + "^{" + s + "}";
            }
        }
        std::string s = "(";
        for (std::size_t i = 0; i < parts().size(); ++i) s += (i ? " x " : "") + parts()[i].to_string();
        return s + ")";
    }
    case Kind::Coprod: return "(" + parts()[0].to_string() + " + " + parts()[1].to_string() + ")";
    }
    return "?";
}

nlohmann::json FunctorExpr::to_json() const
{
    using nlohmann::json;
    switch (kind()) {
    case Kind::Const: {
        const auto &s = node_->spec;
        if (s.values) return {{"const", "values"}};
        json evals = json::array();
        for (const auto &ev : s.evals) {
            json m = json::object();
            for (std::size_t i = 0; i < s.atoms.size(); ++i) m[s.atoms.name(i)] = Quantale(ev[i].quantale()).to_json(ev[i]);
            evals.push_back(m);
        }
        json c = {{"atoms", s.atoms.names()}, {"evals", evals}};
        if (s.algebra) {
            json table = json::array();
            for (const auto &row : s.algebra->join) {
                json r = json::array();
                for (auto k : row) r.push_back(s.atoms.name(k));
                table.push_back(r);
            }
            c["algebra"] = {{"bottom", s.atoms.name(s.algebra->bottom)}, {"join", table}};
        }
        return {{"const", c}};
    }
    case Kind::Id: return "id";
    case Kind::Prod: {
        if (!labels().empty()) {
            bool uniform = true;
            for (const auto &p : parts()) uniform = uniform && p.to_json() == parts().front().to_json();
            if (uniform) return {{"pow", {{"labels", labels()}, {"body", parts().front().to_json()}}}};
        }
        json arr = json::array();
        for (const auto &p : parts()) arr.push_back(p.to_json());
        json out = {{"prod", arr}};
        if (!labels().empty()) out["labels"] = labels();
        return out;
    }
    case Kind::Coprod: return {{"coprod", {parts()[0].to_json(), parts()[1].to_json()}}};
    }
    return nullptr;
}

FunctorExpr FunctorExpr::from_json(const nlohmann::json &j, const Quantale &q)
{
    if (j.is_string()) {
        if (j.get<std::string>() == "id") return id();
        throw ParseError("unknown functor '" + j.get<std::string>() + "'");
    }
    if (!j.is_object() || j.empty()) throw ParseError("malformed functor expression " + j.dump());
    if (j.contains("const")) {
        const auto &c = j.at("const");
        if (c.is_string() && c.get<std::string>() == "values") return constant_values();
        if (!c.is_object() || !c.contains("atoms")) throw ParseError("constant needs \"values\" or an atoms list");
        Carrier atoms(c.at("atoms").get<std::vector<std::string>>());
        std::vector<Predicate> evals;
        if (c.contains("evals")) {
            for (const auto &ev : c.at("evals")) {
                Predicate p;
                if (ev.is_array()) {
                    for (const auto &v : ev) p.push_back(q.from_json(v));
                } else {
                    p.assign(atoms.size(), q.top());
                    std::vector<bool> seen(atoms.size(), false);
                    for (auto it = ev.begin(); it != ev.end(); ++it) {
                        auto k = atoms.index(it.key());
                        p[k] = q.from_json(it.value());
                        seen[k] = true;
                    }
                    for (std::size_t k = 0; k < atoms.size(); ++k) {
                        if (!seen[k]) throw ParseError("evaluation misses atom '" + atoms.name(k) + "'");
                    }
                }
                evals.push_back(std::move(p));
            }
        }
        std::optional<JoinAlgebra> algebra;
        if (c.contains("algebra")) {
            const auto &a = c.at("algebra");
            JoinAlgebra alg;
            alg.bottom = atoms.index(a.at("bottom").get<std::string>());
            for (const auto &row : a.at("join")) {
                std::vector<std::size_t> r;
                for (const auto &name : row) r.push_back(atoms.index(name.get<std::string>()));
                alg.join.push_back(std::move(r));
            }
            algebra = std::move(alg);
        }
        return constant_atoms(std::move(atoms), std::move(evals), std::move(algebra));
    }
    if (j.contains("prod")) {
        std::vector<FunctorExpr> parts;
        for (const auto &p : j.at("prod")) parts.push_back(from_json(p, q));
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
        return prod(std::move(parts), std::move(labels));
    }
    if (j.contains("pow")) {
        const auto &p = j.at("pow");
        return pow(p.at("labels").get<std::vector<std::string>>(), from_json(p.at("body"), q));
    }
    if (j.contains("coprod")) {
        const auto &c = j.at("coprod");
        if (!c.is_array() || c.size() != 2) throw ParseError("coprod takes exactly two summands");
        return coprod(from_json(c[0], q), from_json(c[1], q));
    }
    throw ParseError("malformed functor expression " + j.dump());
}

EvalMap EvalMap::constant(std::size_t index)
{
    EvalMap e;
    e.kind_ = Kind::Const;
    e.index_ = index;
    return e;
}

EvalMap EvalMap::identity() { return EvalMap(); }

EvalMap EvalMap::project(std::size_t index, EvalMap inner)
{
    EvalMap e;
    e.kind_ = Kind::Project;
    e.index_ = index;
    e.inner_ = std::make_shared<const EvalMap>(std::move(inner));
    return e;
}

EvalMap EvalMap::left(EvalMap inner)
{
    EvalMap e;
    e.kind_ = Kind::Left;
    e.inner_ = std::make_shared<const EvalMap>(std::move(inner));
    return e;
}

EvalMap EvalMap::right(EvalMap inner)
{
    EvalMap e;
    e.kind_ = Kind::Right;
    e.inner_ = std::make_shared<const EvalMap>(std::move(inner));
    return e;
}

EvalMap EvalMap::bot_top()
{
    EvalMap e;
    e.kind_ = Kind::BotTop;
    return e;
}

std::string EvalMap::to_string() const
{
    switch (kind_) {
    case Kind::Const: return "ev" + std::to_string(index_);
    case Kind::Identity: return "id";
    case Kind::Project: return inner_->to_string() + ".pi" + std::to_string(index_);
    case Kind::Left: return "[" + inner_->to_string() + ",top]";
    case Kind::Right: return "[bot," + inner_->to_string() + "]";
    case Kind::BotTop: return "[bot,top]";
    }
    return "?";
}

std::vector<EvalMap> build_lambda(const FunctorExpr &f)
{
    std::vector<EvalMap> out;
    switch (f.kind()) {
    case FunctorExpr::Kind::Const:
        for (std::size_t i = 0; i < f.const_spec().eval_count(); ++i) out.push_back(EvalMap::constant(i));
        break;
    case FunctorExpr::Kind::Id: out.push_back(EvalMap::identity()); break;
    case FunctorExpr::Kind::Prod:
        for (std::size_t i = 0; i < f.parts().size(); ++i) {
            for (auto &ev : build_lambda(f.parts()[i])) out.push_back(EvalMap::project(i, std::move(ev)));
        }
        break;
    case FunctorExpr::Kind::Coprod:
        for (auto &ev : build_lambda(f.parts()[0])) out.push_back(EvalMap::left(std::move(ev)));
        for (auto &ev : build_lambda(f.parts()[1])) out.push_back(EvalMap::right(std::move(ev)));
        out.push_back(EvalMap::bot_top());
        break;
    }
    return out;
}

void check_shape(const FunctorExpr &f, const Term &t)
{
    auto fail = [&](const char *why) { throw ShapeError(std::string(why) + ": " + t.to_string() + " against " + f.to_string()); };
    switch (f.kind()) {
    case FunctorExpr::Kind::Const: {
        if (t.kind() != Term::Kind::Const) fail("expected a constant");
        const auto &spec = f.const_spec();
        if (spec.values) {
            if (!std::holds_alternative<Value>(t.atom())) fail("expected a value constant");
        } else {
            const auto *name = std::get_if<std::string>(&t.atom());
            if (!name || !spec.atoms.contains(*name)) fail("unknown constant atom");
        }
        return;
    }
    case FunctorExpr::Kind::Id:
        if (t.kind() != Term::Kind::Id) fail("expected an identity position");
        return;
    case FunctorExpr::Kind::Prod:
        if (t.kind() != Term::Kind::Tuple || t.children().size() != f.parts().size()) fail("expected a tuple");
        for (std::size_t i = 0; i < f.parts().size(); ++i) check_shape(f.parts()[i], t.children()[i]);
        return;
    case FunctorExpr::Kind::Coprod:
        if (t.kind() == Term::Kind::Inl) return check_shape(f.parts()[0], t.child());
        if (t.kind() == Term::Kind::Inr) return check_shape(f.parts()[1], t.child());
        fail("expected an injection");
    }
}

namespace {

Value const_eval(const ConstSpec &spec, std::size_t index, const Term &t, const Quantale &q)
{
    if (spec.values) {
        const auto &v = std::get<Value>(t.atom());
        q.check(v);
        return v;
    }
    const auto &name = std::get<std::string>(t.atom());
    if (index >= spec.evals.size()) throw ShapeError("evaluation index out of range");
    Value v = spec.evals[index][spec.atoms.index(name)];
    q.check(v);
    return v;
}

} // namespace

Value apply_eval(const FunctorExpr &f, const EvalMap &ev, const Term &t, const Quantale &q, const LeafValue &leaf)
{
    switch (ev.kind()) {
    case EvalMap::Kind::Const:
        if (f.kind() != FunctorExpr::Kind::Const || t.kind() != Term::Kind::Const) throw ShapeError("constant evaluation on a non-constant");
        return const_eval(f.const_spec(), ev.index(), t, q);
    case EvalMap::Kind::Identity:
        if (f.kind() != FunctorExpr::Kind::Id || t.kind() != Term::Kind::Id) throw ShapeError("identity evaluation on a non-identity");
        return leaf(t.child());
    case EvalMap::Kind::Project:
        if (f.kind() != FunctorExpr::Kind::Prod || t.kind() != Term::Kind::Tuple || ev.index() >= t.children().size())
            throw ShapeError("projection on a non-tuple");
        return apply_eval(f.parts()[ev.index()], ev.inner(), t.children()[ev.index()], q, leaf);
    case EvalMap::Kind::Left:
        if (f.kind() != FunctorExpr::Kind::Coprod) throw ShapeError("copairing on a non-coproduct");
        if (t.kind() == Term::Kind::Inl) return apply_eval(f.parts()[0], ev.inner(), t.child(), q, leaf);
        if (t.kind() == Term::Kind::Inr) return q.top();
        throw ShapeError("copairing on a non-injection");
    case EvalMap::Kind::Right:
        if (f.kind() != FunctorExpr::Kind::Coprod) throw ShapeError("copairing on a non-coproduct");
        if (t.kind() == Term::Kind::Inl) return q.bottom();
        if (t.kind() == Term::Kind::Inr) return apply_eval(f.parts()[1], ev.inner(), t.child(), q, leaf);
        throw ShapeError("copairing on a non-injection");
    case EvalMap::Kind::BotTop:
        if (f.kind() != FunctorExpr::Kind::Coprod) throw ShapeError("copairing on a non-coproduct");
        if (t.kind() == Term::Kind::Inl) return q.bottom();
        if (t.kind() == Term::Kind::Inr) return q.top();
        throw ShapeError("copairing on a non-injection");
    }
    throw ShapeError("unknown evaluation map");
}

Term fmap(const FunctorExpr &f, const Term &t, const LeafMap &fn)
{
    switch (f.kind()) {
    case FunctorExpr::Kind::Const:
        check_shape(f, t);
        return t;
    case FunctorExpr::Kind::Id:
        if (t.kind() != Term::Kind::Id) throw ShapeError("expected an identity position: " + t.to_string());
        return Term::id(fn(t.child()));
    case FunctorExpr::Kind::Prod: {
        if (t.kind() != Term::Kind::Tuple || t.children().size() != f.parts().size())
            throw ShapeError("expected a tuple: " + t.to_string());
        std::vector<Term> out;
        for (std::size_t i = 0; i < f.parts().size(); ++i) out.push_back(fmap(f.parts()[i], t.children()[i], fn));
        return Term::tuple(std::move(out));
    }
    case FunctorExpr::Kind::Coprod:
        if (t.kind() == Term::Kind::Inl) return Term::inl(fmap(f.parts()[0], t.child(), fn));
        if (t.kind() == Term::Kind::Inr) return Term::inr(fmap(f.parts()[1], t.child(), fn));
        throw ShapeError("expected an injection: " + t.to_string());
    }
    throw ShapeError("unknown functor");
}

std::vector<Term> id_leaves(const FunctorExpr &f, const Term &t)
{
    std::vector<Term> out;
    fmap(f, t, [&](const Term &c) {
        out.push_back(c);
        return c;
    });
    return out;
}

Value lift_poly(const FunctorExpr &f, const Quantale &q, const Term &s, const Term &t, const LeafDist &leaf)
{
    switch (f.kind()) {
    case FunctorExpr::Kind::Const: {
        check_shape(f, s);
        check_shape(f, t);
        const auto &spec = f.const_spec();
        Value acc = q.top();
        for (std::size_t i = 0; i < spec.eval_count(); ++i)
            acc = q.meet(acc, q.residuate(const_eval(spec, i, s, q), const_eval(spec, i, t, q)));
        return acc;
    }
    case FunctorExpr::Kind::Id:
        if (s.kind() != Term::Kind::Id || t.kind() != Term::Kind::Id) throw ShapeError("expected identity positions");
        return leaf(s.child(), t.child());
    case FunctorExpr::Kind::Prod: {
        if (s.kind() != Term::Kind::Tuple || t.kind() != Term::Kind::Tuple || s.children().size() != f.parts().size() ||
            t.children().size() != f.parts().size())
            throw ShapeError("expected tuples");
        Value acc = q.top();
        for (std::size_t i = 0; i < f.parts().size(); ++i)
            acc = q.meet(acc, lift_poly(f.parts()[i], q, s.children()[i], t.children()[i], leaf));
        return acc;
    }
    case FunctorExpr::Kind::Coprod: {
        bool sl = s.kind() == Term::Kind::Inl, tl = t.kind() == Term::Kind::Inl;
        if ((!sl && s.kind() != Term::Kind::Inr) || (!tl && t.kind() != Term::Kind::Inr)) throw ShapeError("expected injections");
        if (sl && tl) return lift_poly(f.parts()[0], q, s.child(), t.child(), leaf);
        if (!sl && !tl) return lift_poly(f.parts()[1], q, s.child(), t.child(), leaf);
        return sl ? q.top() : q.bottom();
    }
    }
    throw ShapeError("unknown functor");
}

Carrier term_carrier(const std::vector<Term> &terms)
{
    std::vector<std::string> names;
    names.reserve(terms.size());
    for (const auto &t : terms) names.push_back(t.to_string());
    return Carrier(std::move(names));
}

VGraph lift_closed(const FunctorExpr &f, const VGraph &d, const std::vector<Term> &terms)
{
    const auto &q = d.quantale();
    VGraph closed = metric_closure(d);
    for (const auto &t : terms) {
        check_shape(f, t);
        for (const auto &leaf : id_leaves(f, t)) {
            if (leaf.kind() != Term::Kind::Elem || !d.carrier().contains(leaf.name()))
                throw ShapeError("identity position " + leaf.to_string() + " is not an element of the carrier");
        }
    }
    VGraph out = VGraph::top(q, term_carrier(terms));
    LeafDist leaf = [&](const Term &a, const Term &b) { return closed.at(a.name(), b.name()); };
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = 0; j < terms.size(); ++j) out.set(i, j, lift_poly(f, q, terms[i], terms[j], leaf));
    }
    return out;
}

Term term_from_json(const FunctorExpr &f, const nlohmann::json &j, const Quantale &q,
                    const std::function<Term(const nlohmann::json &)> &leaf)
{
    switch (f.kind()) {
    case FunctorExpr::Kind::Const: {
        const auto &spec = f.const_spec();
        if (spec.values) return Term::constant(q.from_json(j));
        if (!j.is_string() || !spec.atoms.contains(j.get<std::string>())) throw ParseError("unknown constant atom " + j.dump());
        return Term::constant(j.get<std::string>());
    }
    case FunctorExpr::Kind::Id: return Term::id(leaf(j));
    case FunctorExpr::Kind::Prod: {
        std::vector<Term> parts;
        if (j.is_object() && !f.labels().empty()) {
            if (j.size() != f.labels().size()) throw ParseError("labelled tuple must give every label: " + j.dump());
            for (std::size_t i = 0; i < f.parts().size(); ++i) {
                if (!j.contains(f.labels()[i])) throw ParseError("missing label '" + f.labels()[i] + "'");
                parts.push_back(term_from_json(f.parts()[i], j.at(f.labels()[i]), q, leaf));
            }
        } else {
            if (!j.is_array() || j.size() != f.parts().size()) throw ParseError("expected a tuple of " + std::to_string(f.parts().size()) + ": " + j.dump());
            for (std::size_t i = 0; i < f.parts().size(); ++i) parts.push_back(term_from_json(f.parts()[i], j[i], q, leaf));
        }
        return Term::tuple(std::move(parts));
    }
    case FunctorExpr::Kind::Coprod:
        if (j.is_object() && j.size() == 1 && j.contains("inl")) return Term::inl(term_from_json(f.parts()[0], j.at("inl"), q, leaf));
        if (j.is_object() && j.size() == 1 && j.contains("inr")) return Term::inr(term_from_json(f.parts()[1], j.at("inr"), q, leaf));
        throw ParseError("expected {\"inl\": ...} or {\"inr\": ...}: " + j.dump());
    }
    throw ParseError("unknown functor");
}

nlohmann::json term_to_json(const FunctorExpr &f, const Term &t, const Quantale &q,
                            const std::function<nlohmann::json(const Term &)> &leaf)
{
    check_shape(f, t);
    switch (f.kind()) {
    case FunctorExpr::Kind::Const:
        if (const auto *s = std::get_if<std::string>(&t.atom())) return *s;
        return q.to_json(std::get<Value>(t.atom()));
    case FunctorExpr::Kind::Id: return leaf(t.child());
    case FunctorExpr::Kind::Prod: {
        if (!f.labels().empty()) {
            nlohmann::json out = nlohmann::json::object();
            for (std::size_t i = 0; i < f.parts().size(); ++i) out[f.labels()[i]] = term_to_json(f.parts()[i], t.children()[i], q, leaf);
            return out;
        }
        nlohmann::json out = nlohmann::json::array();
        for (std::size_t i = 0; i < f.parts().size(); ++i) out.push_back(term_to_json(f.parts()[i], t.children()[i], q, leaf));
        return out;
    }
    case FunctorExpr::Kind::Coprod:
        if (t.kind() == Term::Kind::Inl) return {{"inl", term_to_json(f.parts()[0], t.child(), q, leaf)}};
        return {{"inr", term_to_json(f.parts()[1], t.child(), q, leaf)}};
    }
    return nullptr;
}

std::vector<Term> enumerate_terms(const FunctorExpr &f, const std::vector<Term> &leaves, const std::vector<Value> &values)
{
    std::vector<Term> out;
    switch (f.kind()) {
    case FunctorExpr::Kind::Const: {
        const auto &spec = f.const_spec();
        if (spec.values) {
            for (const auto &v : values) out.push_back(Term::constant(v));
        } else {
            for (const auto &a : spec.atoms.names()) out.push_back(Term::constant(a));
        }
        break;
    }
    case FunctorExpr::Kind::Id:
        for (const auto &l : leaves) out.push_back(Term::id(l));
        break;
    case FunctorExpr::Kind::Prod: {
        std::vector<std::vector<Term>> choices;
        for (const auto &p : f.parts()) choices.push_back(enumerate_terms(p, leaves, values));
        std::vector<std::size_t> idx(choices.size(), 0);
        for (const auto &c : choices) {
            if (c.empty()) return out;
        }
        while (true) {
            std::vector<Term> parts;
            for (std::size_t i = 0; i < choices.size(); ++i) parts.push_back(choices[i][idx[i]]);
            out.push_back(Term::tuple(std::move(parts)));
            std::size_t i = 0;
            while (i < idx.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
            if (i == idx.size()) break;
        }
        break;
    }
    case FunctorExpr::Kind::Coprod:
        for (auto &t : enumerate_terms(f.parts()[0], leaves, values)) out.push_back(Term::inl(std::move(t)));
        for (auto &t : enumerate_terms(f.parts()[1], leaves, values)) out.push_back(Term::inr(std::move(t)));
        break;
    }
    return out;
}

} // namespace qlift
