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

#include "qlift/composite.hpp"

#include "qlift/errors.hpp"
#include "qlift/simplex.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qlift {

std::string Layer::to_string() const { return kind == Kind::Poly ? poly.to_string() : std::string(monad_name(monad)); }

std::string composite_name(const Composite &c)
{
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) out += (i ? " o " : "") + c[i].to_string();
    return out;
}

EvalSet composite_lambda(const Composite &c)
{
    EvalSet out = {CompositeEval{}};
    for (const auto &layer : c) {
        EvalSet one;
        if (layer.kind == Layer::Kind::Poly) {
            for (auto &ev : build_lambda(layer.poly)) one.push_back({std::move(ev)});
        } else {
            one.push_back({EvalMap::identity()});
        }
        out = star(out, one);
    }
    return out;
}

EvalSet star(const EvalSet &lf, const EvalSet &lg)
{
    EvalSet out;
    for (const auto &a : lf) {
        for (const auto &b : lg) {
            CompositeEval ev = a;
            ev.insert(ev.end(), b.begin(), b.end());
            out.push_back(std::move(ev));
        }
    }
    return out;
}

std::string eval_name(const Composite &c, const CompositeEval &ev)
{
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += " * ";
        if (c[i].kind == Layer::Kind::Monad) out += c[i].monad == MonadKind::Powerset ? "sup" : "E";
        else out += ev.at(i).to_string();
    }
    return out;
}

namespace {

template <class Fn>
auto descend(const Composite &c, std::size_t layer, const Term &t, Fn &&at_base) -> Term
{
    if (layer == c.size()) return at_base(t);
    auto next = [&](const Term &child) { return descend(c, layer + 1, child, at_base); };
    if (c[layer].kind == Layer::Kind::Poly) return fmap(c[layer].poly, t, next);
    return monad_map(c[layer].monad, t, next);
}

Value eval_layer(const Composite &c, const CompositeEval &ev, std::size_t layer, const Term &t, const Quantale &q,
                 const LeafValue &base)
{
    if (layer == c.size()) return base(t);
    auto next = [&](const Term &child) { return eval_layer(c, ev, layer + 1, child, q, base); };
    if (c[layer].kind == Layer::Kind::Poly) return apply_eval(c[layer].poly, ev.at(layer), t, q, next);
    return monad_eval(c[layer].monad, q, t, next);
}

} // namespace

void check_composite_shape(const Composite &c, const Term &t)
{
    descend(c, 0, t, [](const Term &leaf) {
        if (leaf.kind() != Term::Kind::Elem) throw ShapeError("base position " + leaf.to_string() + " is not an element");
        return leaf;
    });
}

Value evaluate(const Composite &c, const CompositeEval &ev, const Term &t, const Quantale &q, const LeafValue &base)
{
    if (ev.size() != c.size()) throw ShapeError("evaluation map has the wrong number of layers");
    return eval_layer(c, ev, 0, t, q, base);
}

Term map_base(const Composite &c, const Term &t, const LeafMap &fn) { return descend(c, 0, t, fn); }

namespace {

LeafValue predicate_leaf(const Carrier &carrier, const Predicate &f)
{
    return [&carrier, &f](const Term &leaf) -> Value {
        if (leaf.kind() != Term::Kind::Elem) throw ShapeError("base position " + leaf.to_string() + " is not an element");
        return f[carrier.index(leaf.name())];
    };
}

Value generic_value(const Composite &c, const EvalSet &lambda, const Quantale &q, const Carrier &carrier,
                    const std::set<Predicate> &preds, const Term &s, const Term &t)
{
    Value acc = q.top();
    for (const auto &f : preds) {
        auto leaf = predicate_leaf(carrier, f);
        for (const auto &ev : lambda) acc = q.meet(acc, q.residuate(evaluate(c, ev, s, q, leaf), evaluate(c, ev, t, q, leaf)));
    }
    return acc;
}

// Convex piecewise-linear evaluations over unit-oplus: the maximum of affine pieces in the predicate.
struct Affine {
    std::vector<Rational> coef;
    Rational constant;

    friend bool operator<(const Affine &a, const Affine &b)
    {
        if (a.constant != b.constant) return a.constant < b.constant;
        return a.coef < b.coef;
    }
    friend bool operator==(const Affine &a, const Affine &b) { return a.constant == b.constant && a.coef == b.coef; }
};

using Pieces = std::vector<Affine>;

void normalize(Pieces &p)
{
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
}

Pieces constant_piece(std::size_t n, const Rational &r) { return {Affine{std::vector<Rational>(n, 0), r}}; }

struct PieceBuilder {
    const Composite &c;
    const CompositeEval &ev;
    const Carrier &carrier;
    const Quantale &q;

    Pieces poly(const FunctorExpr &f, const EvalMap &e, const Term &t, std::size_t layer) const
    {
        const std::size_t n = carrier.size();
        switch (e.kind()) {
        case EvalMap::Kind::Const: {
            Value v = apply_eval(f, e, t, q, [](const Term &) -> Value { throw ShapeError("unexpected identity position"); });
            return constant_piece(n, v.numeric());
        }
        case EvalMap::Kind::Identity:
            if (t.kind() != Term::Kind::Id) throw ShapeError("identity evaluation on a non-identity");
            return at(layer + 1, t.child());
        case EvalMap::Kind::Project:
            if (t.kind() != Term::Kind::Tuple || e.index() >= t.children().size()) throw ShapeError("projection on a non-tuple");
            return poly(f.parts()[e.index()], e.inner(), t.children()[e.index()], layer);
        case EvalMap::Kind::Left:
            if (t.kind() == Term::Kind::Inl) return poly(f.parts()[0], e.inner(), t.child(), layer);
            return constant_piece(n, q.top().numeric());
        case EvalMap::Kind::Right:
            if (t.kind() == Term::Kind::Inr) return poly(f.parts()[1], e.inner(), t.child(), layer);
            return constant_piece(n, q.bottom().numeric());
        case EvalMap::Kind::BotTop:
            return constant_piece(n, (t.kind() == Term::Kind::Inl ? q.bottom() : q.top()).numeric());
        }
        throw ShapeError("unknown evaluation map");
    }

    Pieces at(std::size_t layer, const Term &t) const
    {
        const std::size_t n = carrier.size();
        if (layer == c.size()) {
            if (t.kind() != Term::Kind::Elem) throw ShapeError("base position " + t.to_string() + " is not an element");
            Affine a{std::vector<Rational>(n, 0), 0};
            a.coef[carrier.index(t.name())] = 1;
            return {a};
        }
        if (c[layer].kind == Layer::Kind::Poly) return poly(c[layer].poly, ev.at(layer), t, layer);
        check_monad_shape(c[layer].monad, t);
        if (c[layer].monad == MonadKind::Powerset) {
            if (t.children().empty()) return constant_piece(n, q.top().numeric());
            Pieces out;
            for (const auto &child : t.children()) {
                auto p = at(layer + 1, child);
                out.insert(out.end(), p.begin(), p.end());
            }
            normalize(out);
            return out;
        }
        Pieces acc = constant_piece(n, 0);
        for (std::size_t k = 0; k < t.children().size(); ++k) {
            const Rational &w = t.weights()[k];
            Pieces next;
            for (const auto &a : acc) {
                for (const auto &b : at(layer + 1, t.children()[k])) {
                    Affine s = a;
                    for (std::size_t i = 0; i < n; ++i) s.coef[i] += w * b.coef[i];
                    s.constant += w * b.constant;
                    next.push_back(std::move(s));
                }
            }
            normalize(next);
            acc = std::move(next);
        }
        return acc;
    }
};

Value lp_value(const Composite &c, const EvalSet &lambda, const VGraph &d, const Term &s, const Term &t)
{
    const auto &q = d.quantale();
    const auto &carrier = d.carrier();
    const std::size_t n = carrier.size();
    Rational best = 0;
    for (const auto &ev : lambda) {
        if (ev.size() != c.size()) throw ShapeError("evaluation map has the wrong number of layers");
        PieceBuilder pb{c, ev, carrier, q};
        Pieces ps = pb.at(0, s), pt = pb.at(0, t);
        for (const auto &a : pt) {
            LinearProgram lp;
            for (std::size_t x = 0; x < n; ++x) lp.add_variable("g(" + carrier.name(x) + ")", 0, Rational(1));
            std::size_t z = lp.add_variable("z");
            for (std::size_t x = 0; x < n; ++x) {
                for (std::size_t y = 0; y < n; ++y) {
                    if (x == y || d.at(x, y).numeric() >= 1) continue;
                    lp.add_constraint({{y, Rational(1)}, {x, Rational(-1)}}, LinearProgram::Sense::Leq, d.at(x, y).numeric());
                }
            }
            for (const auto &b : ps) {
                LinearProgram::Row row;
                for (std::size_t x = 0; x < n; ++x) {
                    if (b.coef[x] != 0) row.emplace_back(x, b.coef[x]);
                }
                row.emplace_back(z, Rational(-1));
                lp.add_constraint(std::move(row), LinearProgram::Sense::Leq, -b.constant);
            }
            LinearProgram::Row obj;
            for (std::size_t x = 0; x < n; ++x) {
                if (a.coef[x] != 0) obj.emplace_back(x, a.coef[x]);
            }
            obj.emplace_back(z, Rational(-1));
            lp.maximize(std::move(obj), a.constant);
            auto sol = lp.solve();
            if (sol.optimum > best) best = sol.optimum;
        }
    }
    return q.from_numeric(best);
}

} // namespace

VGraph kantorovich_generic(const Composite &c, const EvalSet &lambda, const VGraph &d, const PredSet &s,
                           const std::vector<Term> &terms)
{
    require_same_carrier(d.carrier(), s.carrier(), "kantorovich_generic");
    const auto &q = d.quantale();
    for (const auto &f : s.predicates()) {
        if (auto bad = nonexpansive_violation(d, f)) {
            throw PreconditionError("predicate is not non-expansive at (" + d.carrier().name(bad->first) + ", " +
                                    d.carrier().name(bad->second) + ")");
        }
    }
    for (const auto &t : terms) check_composite_shape(c, t);
    VGraph out = VGraph::top(q, term_carrier(terms));
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = 0; j < terms.size(); ++j)
            out.set(i, j, generic_value(c, lambda, q, d.carrier(), s.predicates(), terms[i], terms[j]));
    }
    return out;
}

Value kantorovich_exact(const Composite &c, const EvalSet &lambda, const VGraph &d, const Term &s, const Term &t)
{
    check_composite_shape(c, s);
    check_composite_shape(c, t);
    const auto &q = d.quantale();
    switch (q.id()) {
    case QuantaleId::Boolean: {
        PredSet all = gamma_enum(d, Grid{});
        return generic_value(c, lambda, q, d.carrier(), all.predicates(), s, t);
    }
    case QuantaleId::UnitOplus: return lp_value(c, lambda, d, s, t);
    case QuantaleId::ExtPlus:
        if (c.size() == 1 && c[0].kind == Layer::Kind::Monad) {
            if (c[0].monad == MonadKind::Powerset) return hausdorff_directed(d, s, t);
            return kantorovich_lp(d, s, t).value;
        }
        throw MethodUnavailable("no exact lifting method for " + composite_name(c) + " over ext-plus");
    }
    throw MethodUnavailable("unknown quantale");
}

VGraph kantorovich_exact(const Composite &c, const EvalSet &lambda, const VGraph &d, const std::vector<Term> &terms)
{
    VGraph out = VGraph::top(d.quantale(), term_carrier(terms));
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = 0; j < terms.size(); ++j) out.set(i, j, kantorovich_exact(c, lambda, d, terms[i], terms[j]));
    }
    return out;
}

CompositionalityReport check_compositionality(const Composite &f, const EvalSet &lf, const Composite &g,
                                              const EvalSet &lg, const VGraph &d, const std::vector<Term> &terms)
{
    std::set<Term> inner;
    for (const auto &t : terms) {
        map_base(f, t, [&](const Term &gt) {
            inner.insert(gt);
            return gt;
        });
    }
    std::vector<Term> ys(inner.begin(), inner.end());
    VGraph e = kantorovich_exact(g, lg, d, ys);

    std::vector<Term> outer;
    for (const auto &t : terms) outer.push_back(map_base(f, t, [](const Term &gt) { return Term::elem(gt.to_string()); }));

    Composite fg = f;
    fg.insert(fg.end(), g.begin(), g.end());
    VGraph lhs = kantorovich_exact(f, lf, e, outer);
    VGraph rhs = kantorovich_exact(fg, star(lf, lg), d, terms);
    VGraph lhs_on_terms = VGraph::top(d.quantale(), term_carrier(terms));
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = 0; j < terms.size(); ++j) lhs_on_terms.set(i, j, lhs.at(i, j));
    }
    bool eq = lhs_on_terms == rhs;
    bool below = graph_leq(lhs_on_terms, rhs);
    return {std::move(lhs_on_terms), std::move(rhs), eq, below};
}

} // namespace qlift
