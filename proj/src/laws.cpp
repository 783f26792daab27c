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

#include "qlift/laws.hpp"

#include "qlift/behaviour.hpp"
#include "qlift/composite.hpp"
#include "qlift/errors.hpp"
#include "qlift/models.hpp"

#include <random>
#include <set>
#include <sstream>

namespace qlift {

FunctorExpr machine_functor(const std::vector<std::string> &labels)
{
    return FunctorExpr::prod({FunctorExpr::constant_values(), FunctorExpr::pow(labels, FunctorExpr::id())});
}

FunctorExpr exception_functor(const std::vector<std::string> &labels)
{
    return FunctorExpr::coprod(FunctorExpr::constant_values(), FunctorExpr::pow(labels, FunctorExpr::id()));
}

namespace {

class Law {
public:
    Law(std::string suite, std::string name)
    {
        r_.suite = std::move(suite);
        r_.name = std::move(name);
    }

    template <class Describe>
    void expect(bool ok, Describe &&describe)
    {
        ++r_.checked;
        if (!ok && r_.passed) {
            r_.passed = false;
            r_.counterexample = describe();
        }
    }

    void fail(std::string why)
    {
        if (r_.passed) r_.counterexample = std::move(why);
        r_.passed = false;
    }

    LawResult result() const { return r_; }

private:
    LawResult r_;
};

template <class Body>
LawResult run(const std::string &suite, const std::string &name, Body &&body)
{
    Law law(suite, name);
    try {
        body(law);
    } catch (const std::exception &e) {
        law.fail(std::string("raised: ") + e.what());
    }
    return law.result();
}

std::string show(std::initializer_list<Value> vs)
{
    std::string out = "(";
    bool first = true;
    for (const auto &v : vs) {
        out += (first ? "" : ", ") + v.to_string();
        first = false;
    }
    return out + ")";
}

std::string show_graph(const VGraph &d) { return d.to_json().dump(); }

std::string show_pred(const Predicate &p)
{
    std::string out = "[";
    for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "," : "") + p[i].to_string();
    return out + "]";
}

Carrier points(std::size_t n, const char *prefix = "p")
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
    return Carrier(names);
}

std::vector<Term> elems(const Carrier &c)
{
    std::vector<Term> out;
    for (const auto &n : c.names()) out.push_back(Term::elem(n));
    return out;
}

// All boolean V-graphs on n points.
std::vector<VGraph> boolean_graphs(std::size_t n)
{
    Quantale q(QuantaleId::Boolean);
    std::vector<VGraph> out;
    Carrier c = points(n);
    for (std::size_t mask = 0; mask < (std::size_t(1) << (n * n)); ++mask) {
        VGraph d = VGraph::bottom(q, c);
        for (std::size_t k = 0; k < n * n; ++k) d.set(k / n, k % n, Value::boolean((mask >> k) & 1));
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<Predicate> all_predicates(const std::vector<Value> &values, std::size_t n)
{
    std::vector<Predicate> out = {{}};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Predicate> next;
        for (const auto &p : out) {
            for (const auto &v : values) {
                auto e = p;
                e.push_back(v);
                next.push_back(std::move(e));
            }
        }
        out = std::move(next);
    }
    return out;
}

std::vector<PredSet> all_predsets(const Quantale &q, const Carrier &c, const std::vector<Predicate> &preds)
{
    std::vector<PredSet> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << preds.size()); ++mask) {
        PredSet s(q, c);
        for (std::size_t i = 0; i < preds.size(); ++i) {
            if ((mask >> i) & 1) s.add(preds[i]);
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<FiniteMap> all_maps(const Carrier &dom, const Carrier &cod)
{
    std::vector<FiniteMap> out;
    std::vector<std::size_t> img(dom.size(), 0);
    while (true) {
        out.emplace_back(dom, cod, img);
        std::size_t i = 0;
        while (i < img.size() && ++img[i] == cod.size()) img[i++] = 0;
        if (i == img.size()) break;
    }
    return out;
}

using Rng = std::mt19937_64;

std::size_t pick(Rng &rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

VGraph random_graph(const Quantale &q, const Carrier &c, const std::vector<Value> &values, Rng &rng)
{
    VGraph d = VGraph::bottom(q, c);
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = 0; j < c.size(); ++j) d.set(i, j, i == j ? q.unit() : values[pick(rng, values.size())]);
    }
    return d;
}

// A subdistribution over `support` with weights in multiples of 1/den.
Term random_dist(const std::vector<Term> &support, unsigned den, Rng &rng, bool full)
{
    std::vector<unsigned> parts(support.size(), 0);
    unsigned total = full ? den : unsigned(pick(rng, den + 1));
    for (unsigned k = 0; k < total; ++k) ++parts[pick(rng, support.size())];
    std::vector<std::pair<Term, Rational>> w;
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (parts[i]) w.emplace_back(support[i], Rational(parts[i], den));
    }
    return Term::dist(std::move(w));
}

// Subsets of at most `limit` elements.
std::vector<Term> small_subsets(const std::vector<Term> &elems, std::size_t limit)
{
    std::vector<Term> out;
    std::vector<Term> cur;
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == elems.size()) {
            out.push_back(Term::set(cur));
            return;
        }
        go(i + 1);
        if (cur.size() < limit) {
            cur.push_back(elems[i]);
            go(i + 1);
            cur.pop_back();
        }
    };
    go(0);
    return out;
}

struct QuantaleGrid {
    Quantale q;
    std::vector<Value> values;
};

std::vector<QuantaleGrid> law_grids()
{
    Quantale b(QuantaleId::Boolean), u(QuantaleId::UnitOplus), e(QuantaleId::ExtPlus);
    return {{b, grid_values(b, Grid{})}, {u, grid_values(u, Grid{16, 1})}, {e, grid_values(e, Grid{4, 4})}};
}

template <class Fn>
void each_triple(const std::vector<QuantaleGrid> &gs, Fn &&fn)
{
    for (const auto &g : gs) {
        for (const auto &a : g.values) {
            for (const auto &b : g.values) {
                for (const auto &c : g.values) fn(g.q, a, b, c);
            }
        }
    }
}

template <class Fn>
void each_value(const std::vector<QuantaleGrid> &gs, Fn &&fn)
{
    for (const auto &g : gs) {
        for (const auto &a : g.values) fn(g.q, a);
    }
}

} // namespace

std::vector<LawResult> quantale_laws(const LawOptions &)
{
    const auto gs = law_grids();
    const std::string S = "quantale";
    std::vector<LawResult> out;
    auto named = [](const Quantale &q, std::initializer_list<Value> vs) { return std::string(quantale_name(q.id())) + " " + show(vs); };

    out.push_back(run(S, "adjunction: a*b <= c iff b <= [a,c]", [&](Law &law) {
        each_triple(gs, [&](const Quantale &q, const Value &a, const Value &b, const Value &c) {
            law.expect(q.leq(q.tensor(a, b), c) == q.leq(b, q.residuate(a, c)), [&] { return named(q, {a, b, c}); });
        });
    }));
    out.push_back(run(S, "residuation is the largest solution", [&](Law &law) {
        each_triple(gs, [&](const Quantale &q, const Value &u, const Value &v, const Value &w) {
            Value r = q.residuate(v, w);
            bool ok = q.leq(q.tensor(r, v), w) && (!q.leq(q.tensor(u, v), w) || q.leq(u, r));
            law.expect(ok, [&] { return named(q, {u, v, w}); });
        });
    }));
    out.push_back(run(S, "reflexivity: k <= [v,v]", [&](Law &law) {
        each_value(gs, [&](const Quantale &q, const Value &v) {
            law.expect(q.leq(q.unit(), q.residuate(v, v)), [&] { return named(q, {v}); });
        });
    }));
    out.push_back(run(S, "triangle: [u,v]*[v,w] <= [u,w]", [&](Law &law) {
        each_triple(gs, [&](const Quantale &q, const Value &u, const Value &v, const Value &w) {
            law.expect(q.leq(q.tensor(q.residuate(u, v), q.residuate(v, w)), q.residuate(u, w)), [&] { return named(q, {u, v, w}); });
        });
    }));
    out.push_back(run(S, "[k,w] = w", [&](Law &law) {
        each_value(gs, [&](const Quantale &q, const Value &w) {
            law.expect(q.residuate(q.unit(), w) == w, [&] { return named(q, {w}); });
        });
    }));
    out.push_back(run(S, "[bottom,w] = top", [&](Law &law) {
        each_value(gs, [&](const Quantale &q, const Value &w) {
            law.expect(q.residuate(q.bottom(), w) == q.top(), [&] { return named(q, {w}); });
        });
    }));
    out.push_back(run(S, "[v,top] = top", [&](Law &law) {
        each_value(gs, [&](const Quantale &q, const Value &v) {
            law.expect(q.residuate(v, q.top()) == q.top(), [&] { return named(q, {v}); });
        });
    }));
    out.push_back(run(S, "[top,bottom] = bottom", [&](Law &law) {
        for (const auto &g : gs) {
            law.expect(g.q.residuate(g.q.top(), g.q.bottom()) == g.q.bottom(), [&] { return std::string(quantale_name(g.q.id())); });
        }
    }));
    out.push_back(run(S, "[a,c] <= [[b,a],[b,c]]", [&](Law &law) {
        each_triple(gs, [&](const Quantale &q, const Value &a, const Value &b, const Value &c) {
            law.expect(q.leq(q.residuate(a, c), q.residuate(q.residuate(b, a), q.residuate(b, c))), [&] { return named(q, {a, b, c}); });
        });
    }));
    out.push_back(run(S, "[a,c] <= [[c,b],[a,b]]", [&](Law &law) {
        each_triple(gs, [&](const Quantale &q, const Value &a, const Value &b, const Value &c) {
            law.expect(q.leq(q.residuate(a, c), q.residuate(q.residuate(c, b), q.residuate(a, b))), [&] { return named(q, {a, b, c}); });
        });
    }));
    out.push_back(run(S, "meet of residuations <= residuation of meets", [&](Law &law) {
        for (const auto &g : gs) {
            const auto &q = g.q;
            law.expect(q.leq(q.top(), q.residuate(q.top(), q.top())), [&] { return std::string("empty family"); });
            for (const auto &a1 : g.values) {
                for (const auto &a2 : g.values) {
                    for (const auto &b1 : g.values) {
                        for (const auto &b2 : g.values) {
                            Value lhs = q.meet(q.residuate(a1, b1), q.residuate(a2, b2));
                            law.expect(q.leq(lhs, q.residuate(q.meet(a1, a2), q.meet(b1, b2))), [&] { return named(q, {a1, a2, b1, b2}); });
                        }
                    }
                }
            }
        }
    }));
    out.push_back(run(S, "tensor is a commutative monoid", [&](Law &law) {
        each_triple(gs, [&](const Quantale &q, const Value &a, const Value &b, const Value &c) {
            bool ok = q.tensor(a, b) == q.tensor(b, a) && q.tensor(q.tensor(a, b), c) == q.tensor(a, q.tensor(b, c)) &&
                      q.tensor(a, q.unit()) == a;
            law.expect(ok, [&] { return named(q, {a, b, c}); });
        });
    }));
    out.push_back(run(S, "tensor distributes over finite joins", [&](Law &law) {
        each_triple(gs, [&](const Quantale &q, const Value &a, const Value &b, const Value &c) {
            bool ok = q.tensor(a, q.join(b, c)) == q.join(q.tensor(a, b), q.tensor(a, c)) && q.tensor(a, q.bottom()) == q.bottom();
            law.expect(ok, [&] { return named(q, {a, b, c}); });
        });
    }));
    out.push_back(run(S, "join and meet are least upper and greatest lower bounds", [&](Law &law) {
        each_triple(gs, [&](const Quantale &q, const Value &a, const Value &b, const Value &c) {
            Value j = q.join(a, b), m = q.meet(a, b);
            bool ok = q.leq(a, j) && q.leq(b, j) && (!(q.leq(a, c) && q.leq(b, c)) || q.leq(j, c)) && q.leq(m, a) && q.leq(m, b) &&
                      (!(q.leq(c, a) && q.leq(c, b)) || q.leq(c, m)) && q.leq(q.bottom(), a) && q.leq(a, q.top());
            law.expect(ok, [&] { return named(q, {a, b, c}); });
        });
    }));
    return out;
}

std::vector<LawResult> galois_laws(const LawOptions &opt)
{
    const std::string S = "galois";
    const Quantale qb(QuantaleId::Boolean);
    const std::vector<Value> bools = {Value::boolean(false), Value::boolean(true)};
    std::vector<LawResult> out;

    out.push_back(run(S, "Galois connection d <= alpha(S) iff S in gamma(d), boolean, |X| <= 3", [&](Law &law) {
        for (std::size_t n = 1; n <= 3; ++n) {
            Carrier c = points(n);
            auto sets = all_predsets(qb, c, all_predicates(bools, n));
            std::vector<VGraph> alphas;
            for (const auto &s : sets) alphas.push_back(alpha(s));
            for (const auto &d : boolean_graphs(n)) {
                PredSet g = gamma_enum(d, Grid{});
                for (std::size_t i = 0; i < sets.size(); ++i) {
                    law.expect(graph_leq(d, alphas[i]) == sets[i].subset_of(g), [&] { return show_graph(d); });
                }
            }
        }
    }));
    out.push_back(run(S, "alpha(gamma(d)) is the metric closure, boolean, |X| <= 3", [&](Law &law) {
        for (std::size_t n = 1; n <= 3; ++n) {
            for (const auto &d : boolean_graphs(n)) {
                law.expect(alpha(gamma_enum(d, Grid{})) == metric_closure(d), [&] { return show_graph(d); });
            }
        }
    }));
    out.push_back(run(S, "alpha(S) is a V-category", [&](Law &law) {
        for (std::size_t n = 1; n <= 3; ++n) {
            Carrier c = points(n);
            for (const auto &s : all_predsets(qb, c, all_predicates(bools, n))) law.expect(is_vcat(alpha(s)), [&] { return std::to_string(s.size()) + " predicates"; });
        }
        Rng rng(opt.seed);
        for (QuantaleId id : {QuantaleId::UnitOplus, QuantaleId::ExtPlus}) {
            Quantale q(id);
            auto values = grid_values(q, Grid{opt.grid, 4});
            for (unsigned k = 0; k < opt.samples; ++k) {
                Carrier c = points(3);
                PredSet s(q, c);
                for (std::size_t i = 0, m = pick(rng, 4); i < m; ++i) s.add({values[pick(rng, values.size())], values[pick(rng, values.size())], values[pick(rng, values.size())]});
                law.expect(is_vcat(alpha(s)), [&] { return std::string(quantale_name(id)) + " sample " + std::to_string(k); });
            }
        }
    }));
    out.push_back(run(S, "alpha is natural: alpha(f.T) = f*(alpha T)", [&](Law &law) {
        for (std::size_t m = 1; m <= 3; ++m) {
            for (std::size_t n = 1; n <= 3; ++n) {
                Carrier x = points(m, "x"), y = points(n, "y");
                auto sets = all_predsets(qb, y, all_predicates(bools, n));
                for (const auto &f : all_maps(x, y)) {
                    for (const auto &t : sets) law.expect(alpha(pull(f, t)) == reindex(f, alpha(t)), [&] { return std::to_string(m) + "->" + std::to_string(n); });
                }
            }
        }
    }));
    out.push_back(run(S, "gamma is laxly natural, strictly on V-categories", [&](Law &law) {
        for (std::size_t m = 1; m <= 3; ++m) {
            for (std::size_t n = 1; n <= 3; ++n) {
                Carrier x = points(m, "x"), y = points(n, "y");
                auto maps = all_maps(x, y);
                for (const auto &dy0 : boolean_graphs(n)) {
                    VGraph dy = VGraph::bottom(qb, y);
                    for (std::size_t i = 0; i < n; ++i) {
                        for (std::size_t j = 0; j < n; ++j) dy.set(i, j, dy0.at(i, j));
                    }
                    PredSet gy = gamma_enum(dy, Grid{});
                    const bool cat = is_vcat(dy);
                    for (const auto &f : maps) {
                        PredSet lhs = pull(f, gy), rhs = gamma_enum(reindex(f, dy), Grid{});
                        law.expect(lhs.subset_of(rhs) && (!cat || rhs.subset_of(lhs)), [&] { return show_graph(dy); });
                    }
                }
            }
        }
    }));
    out.push_back(run(S, "alpha(gamma_k(d)) is the closure for grid-valued unit-oplus d", [&](Law &law) {
        Quantale q(QuantaleId::UnitOplus);
        Grid grid{opt.grid, 1};
        auto values = grid_values(q, grid);
        const std::size_t k = values.size();
        Carrier c2 = points(2);
        for (std::size_t mask = 0; mask < k * k * k * k; ++mask) {
            VGraph d = VGraph::bottom(q, c2);
            std::size_t r = mask;
            for (std::size_t e = 0; e < 4; ++e, r /= k) d.set(e / 2, e % 2, values[r % k]);
            law.expect(alpha(gamma_enum(d, grid)) == metric_closure(d), [&] { return show_graph(d); });
        }
        Carrier c3 = points(3);
        std::size_t total = 1;
        for (int e = 0; e < 6; ++e) total *= k;
        for (std::size_t mask = 0; mask < total; mask += 7) {
            VGraph d = VGraph::top(q, c3);
            std::size_t r = mask;
            for (std::size_t i = 0; i < 3; ++i) {
                for (std::size_t j = 0; j < 3; ++j) {
                    if (i == j) continue;
                    d.set(i, j, values[r % k]);
                    r /= k;
                }
            }
            law.expect(alpha(gamma_enum(d, grid)) == metric_closure(d), [&] { return show_graph(d); });
        }
    }));
    out.push_back(run(S, "alpha(gamma_k(d)) descends to the closure as k refines", [&](Law &law) {
        Quantale q(QuantaleId::UnitOplus);
        Rng rng(opt.seed + 1);
        std::vector<Value> thirds;
        for (int i = 0; i <= 6; ++i) thirds.push_back(Value::unit_interval(Rational(i, 6)));
        for (unsigned s = 0; s < opt.samples; ++s) {
            VGraph d = random_graph(q, points(3), thirds, rng);
            VGraph closed = metric_closure(d);
            std::optional<VGraph> prev;
            for (unsigned k : {2u, 4u, 8u}) {
                VGraph a = alpha(gamma_enum(d, Grid{k, 1}));
                bool ok = graph_leq(closed, a) && (!prev || graph_leq(a, *prev));
                law.expect(ok, [&] { return show_graph(d) + " at k=" + std::to_string(k); });
                prev = a;
            }
        }
    }));
    out.push_back(run(S, "extensions agree, are non-expansive, extremal and ordered", [&](Law &law) {
        Rng rng(opt.seed + 2);
        const unsigned instances = std::max(opt.samples, 100u);
        for (unsigned s = 0; s < instances; ++s) {
            Quantale q(s % 2 ? QuantaleId::ExtPlus : QuantaleId::UnitOplus);
            std::vector<Value> values = q.id() == QuantaleId::UnitOplus ? grid_values(q, Grid{8, 1}) : grid_values(q, Grid{2, 8});
            const std::size_t n = 3 + pick(rng, 2);
            Carrier c = points(n);
            VGraph d = metric_closure(random_graph(q, c, values, rng));
            std::vector<std::string> sub;
            std::vector<std::size_t> sub_idx;
            for (std::size_t i = 0; i < n; ++i) {
                if (pick(rng, 2) || (i + 1 == n && sub.empty())) {
                    sub.push_back(c.name(i));
                    sub_idx.push_back(i);
                }
            }
            Carrier sc(sub);
            VGraph ds = reindex(FiniteMap(sc, c, sub_idx), d);
            Predicate f;
            const std::size_t anchor = pick(rng, n);
            for (std::size_t i : sub_idx) f.push_back(d.at(anchor, i));
            if (pick(rng, 2)) {
                Predicate g;
                for (std::size_t i = 0; i < sub.size(); ++i) g.push_back(values[pick(rng, values.size())]);
                if (is_nonexpansive(ds, g)) f = g;
            }
            auto big = extension_largest(d, sub, f).values;
            auto small = extension_smallest(d, sub, f).values;
            auto tag = [&] { return std::string(quantale_name(q.id())) + " " + show_graph(d) + " f=" + show_pred(f); };
            bool agree = true, ordered = true;
            for (std::size_t k = 0; k < sub_idx.size(); ++k) agree = agree && big[sub_idx[k]] == f[k] && small[sub_idx[k]] == f[k];
            for (std::size_t i = 0; i < n; ++i) ordered = ordered && q.leq(small[i], big[i]);
            law.expect(agree && ordered && is_nonexpansive(d, big) && is_nonexpansive(d, small), tag);
            for (std::size_t z = 0; z < n; ++z) {
                if (std::find(sub_idx.begin(), sub_idx.end(), z) != sub_idx.end()) continue;
                auto idx = sub_idx;
                idx.push_back(z);
                std::vector<std::string> names = sub;
                names.push_back(c.name(z));
                VGraph dz = reindex(FiniteMap(Carrier(names), c, idx), d);
                for (const auto &w : values) {
                    Predicate h = f;
                    h.push_back(w);
                    if (q.leq(big[z], w) && !(w == big[z])) law.expect(!is_nonexpansive(dz, h), tag);
                    if (q.leq(w, small[z]) && !(w == small[z])) law.expect(!is_nonexpansive(dz, h), tag);
                }
            }
        }
    }));
    return out;
}

std::vector<LawResult> polyfunctor_laws(const LawOptions &opt)
{
    const std::string S = "polyfunctor";
    const Quantale qb(QuantaleId::Boolean), qu(QuantaleId::UnitOplus);
    const std::vector<Value> bools = {Value::boolean(false), Value::boolean(true)};
    const std::vector<Value> unit3 = {Value::unit_interval(0), Value::unit_interval(Rational(1, 2)), Value::unit_interval(1)};
    const Carrier xy({"x", "y"});
    const std::vector<Term> base = elems(xy);
    std::vector<LawResult> out;

    struct Shape {
        std::string name;
        FunctorExpr f;
    };
    const std::vector<Shape> shapes = {{"machine", machine_functor({"a"})}, {"exception", exception_functor({"a"})}};

    out.push_back(run(S, "compositionality for polynomial F, boolean, 2 points", [&](Law &law) {
        for (const auto &sh : shapes) {
            for (int gi = 0; gi < 2; ++gi) {
                Composite g = gi == 0 ? Composite{Layer::of(MonadKind::Powerset)} : Composite{Layer::of(machine_functor({"a"}))};
                std::vector<Term> gterms = gi == 0 ? all_subsets(base) : enumerate_terms(machine_functor({"a"}), base, bools);
                Composite f = {Layer::of(sh.f)};
                auto terms = enumerate_terms(sh.f, gterms, bools);
                for (const auto &d : boolean_graphs(2)) {
                    VGraph dd = VGraph::bottom(qb, xy);
                    for (std::size_t i = 0; i < 2; ++i) {
                        for (std::size_t j = 0; j < 2; ++j) dd.set(i, j, d.at(i, j));
                    }
                    auto rep = check_compositionality(f, composite_lambda(f), g, composite_lambda(g), dd, terms);
                    law.expect(rep.equal, [&] { return sh.name + " o " + composite_name(g) + " on " + show_graph(dd); });
                }
            }
        }
    }));
    out.push_back(run(S, "Lambda(gamma alpha S) is non-expansive for alpha(Lambda S)", [&](Law &law) {
        auto preds = all_predicates(bools, 2);
        for (const auto &sh : shapes) {
            auto terms = enumerate_terms(sh.f, base, bools);
            Carrier tc = term_carrier(terms);
            auto lambda = build_lambda(sh.f);
            auto lift = [&](const Predicate &p, const EvalMap &ev) {
                Predicate out;
                for (const auto &t : terms) out.push_back(apply_eval(sh.f, ev, t, qb, [&](const Term &l) { return p[xy.index(l.name())]; }));
                return out;
            };
            for (const auto &s : all_predsets(qb, xy, preds)) {
                if (s.empty()) continue;
                PredSet ls(qb, tc);
                for (const auto &p : s.predicates()) {
                    for (const auto &ev : lambda) ls.add(lift(p, ev));
                }
                VGraph df = alpha(ls);
                const PredSet closed = gamma_enum(alpha(s), Grid{});
                for (const auto &p : closed.predicates()) {
                    for (const auto &ev : lambda) law.expect(is_nonexpansive(df, lift(p, ev)), [&] { return sh.name + " " + show_pred(p); });
                }
            }
        }
    }));
    out.push_back(run(S, "coproduct lifting is associative", [&](Law &law) {
        const FunctorExpr f1 = FunctorExpr::constant_values(), f2 = FunctorExpr::id(), f3 = FunctorExpr::pow({"a", "b"}, FunctorExpr::id());
        const FunctorExpr left = FunctorExpr::coprod(FunctorExpr::coprod(f1, f2), f3);
        const FunctorExpr right = FunctorExpr::coprod(f1, FunctorExpr::coprod(f2, f3));
        auto rterms = enumerate_terms(right, base, unit3);
        std::vector<Term> lterms;
        for (const auto &t : rterms) {
            if (t.kind() == Term::Kind::Inl) lterms.push_back(Term::inl(Term::inl(t.child())));
            else if (t.child().kind() == Term::Kind::Inl) lterms.push_back(Term::inl(Term::inr(t.child().child())));
            else lterms.push_back(Term::inr(t.child().child()));
        }
        Rng rng(opt.seed + 3);
        auto values = grid_values(qu, Grid{opt.grid, 1});
        for (unsigned s = 0; s < opt.samples; ++s) {
            VGraph d = random_graph(qu, xy, values, rng);
            VGraph a = lift_closed(left, d, lterms), b = lift_closed(right, d, rterms);
            for (std::size_t i = 0; i < rterms.size(); ++i) {
                for (std::size_t j = 0; j < rterms.size(); ++j) law.expect(a.at(i, j) == b.at(i, j), [&] { return show_graph(d) + " at " + rterms[i].to_string() + ", " + rterms[j].to_string(); });
            }
        }
    }));
    out.push_back(run(S, "lift_closed is monotone and preserves V-categories", [&](Law &law) {
        Rng rng(opt.seed + 4);
        auto values = grid_values(qu, Grid{opt.grid, 1});
        for (const auto &sh : {machine_functor({"a", "b"}), exception_functor({"a", "b"})}) {
            auto terms = enumerate_terms(sh, base, unit3);
            for (unsigned s = 0; s < opt.samples; ++s) {
                VGraph d1 = random_graph(qu, xy, values, rng);
                VGraph d0 = graph_meet(d1, random_graph(qu, xy, values, rng));
                law.expect(graph_leq(lift_closed(sh, d0, terms), lift_closed(sh, d1, terms)), [&] { return sh.to_string() + " " + show_graph(d1); });
                law.expect(is_vcat(lift_closed(sh, metric_closure(d1), terms)), [&] { return sh.to_string() + " " + show_graph(d1); });
            }
        }
    }));
    out.push_back(run(S, "closed-form lifting equals the exact Kantorovich lifting", [&](Law &law) {
        for (const auto &sh : shapes) {
            Composite c = {Layer::of(sh.f)};
            auto lambda = composite_lambda(c);
            auto bterms = enumerate_terms(sh.f, base, bools);
            for (const auto &d0 : boolean_graphs(2)) {
                VGraph d = VGraph::bottom(qb, xy);
                for (std::size_t i = 0; i < 2; ++i) {
                    for (std::size_t j = 0; j < 2; ++j) d.set(i, j, d0.at(i, j));
                }
                law.expect(lift_closed(sh.f, d, bterms) == kantorovich_exact(c, lambda, d, bterms), [&] { return sh.name + " boolean " + show_graph(d); });
            }
            Rng rng(opt.seed + 5);
            auto values = grid_values(qu, Grid{opt.grid, 1});
            auto uterms = enumerate_terms(sh.f, base, unit3);
            for (unsigned s = 0; s < std::max(1u, opt.samples / 10); ++s) {
                VGraph d = random_graph(qu, xy, values, rng);
                law.expect(lift_closed(sh.f, d, uterms) == kantorovich_exact(c, lambda, d, uterms), [&] { return sh.name + " unit-oplus " + show_graph(d); });
            }
        }
    }));
    out.push_back(run(S, "machine lifting is max of payoff gap and successor distances", [&](Law &law) {
        Rng rng(opt.seed + 6);
        auto values = grid_values(qu, Grid{opt.grid, 1});
        const FunctorExpr f = machine_functor({"a", "b"});
        auto terms = enumerate_terms(f, base, unit3);
        for (unsigned s = 0; s < opt.samples; ++s) {
            VGraph d = random_graph(qu, xy, values, rng);
            VGraph dc = metric_closure(d);
            VGraph lifted = lift_closed(f, d, terms);
            for (std::size_t i = 0; i < terms.size(); ++i) {
                for (std::size_t j = 0; j < terms.size(); ++j) {
                    const auto &s1 = terms[i].children(), &s2 = terms[j].children();
                    Rational r1 = std::get<Value>(s1[0].atom()).numeric(), r2 = std::get<Value>(s2[0].atom()).numeric();
                    Rational best = r2 > r1 ? Rational(r2 - r1) : Rational(0);
                    for (std::size_t a = 0; a < 2; ++a) {
                        Rational v = dc.at(s1[1].children()[a].child().name(), s2[1].children()[a].child().name()).numeric();
                        if (v > best) best = v;
                    }
                    law.expect(lifted.at(i, j).numeric() == best, [&] { return show_graph(d) + " at " + terms[i].to_string() + ", " + terms[j].to_string(); });
                }
            }
        }
    }));
    return out;
}

std::vector<LawResult> monadlift_laws(const LawOptions &opt)
{
    const std::string S = "monadlift";
    const Quantale qb(QuantaleId::Boolean), qu(QuantaleId::UnitOplus), qe(QuantaleId::ExtPlus);
    std::vector<LawResult> out;

    out.push_back(run(S, "powerset monad laws", [&](Law &law) {
        auto x = elems(Carrier({"x", "y"}));
        auto tx = all_subsets(x);
        auto ttx = all_subsets(tx);
        const auto m = MonadKind::Powerset;
        for (const auto &t : tx) {
            law.expect(monad_mult(m, monad_unit(m, t)) == t && monad_mult(m, monad_map(m, t, [&](const Term &e) { return monad_unit(m, e); })) == t,
                       [&] { return t.to_string(); });
        }
        for (const auto &ttt : small_subsets(ttx, 3)) {
            Term a = monad_mult(m, monad_mult(m, ttt));
            Term b = monad_mult(m, monad_map(m, ttt, [&](const Term &tt) { return monad_mult(m, tt); }));
            law.expect(a == b, [&] { return ttt.to_string(); });
        }
    }));
    out.push_back(run(S, "subdistribution monad laws", [&](Law &law) {
        Rng rng(opt.seed + 10);
        auto x = elems(Carrier({"x", "y", "z"}));
        const auto m = MonadKind::Subdist;
        for (unsigned s = 0; s < std::max(opt.samples, 100u); ++s) {
            std::vector<Term> inner, outer;
            for (int i = 0; i < 3; ++i) inner.push_back(random_dist(x, 4, rng, false));
            Term t = inner[0];
            law.expect(monad_mult(m, monad_unit(m, t)) == t && monad_mult(m, monad_map(m, t, [&](const Term &e) { return monad_unit(m, e); })) == t,
                       [&] { return t.to_string(); });
            std::set<Term> distinct(inner.begin(), inner.end());
            std::vector<Term> tts;
            for (int i = 0; i < 3; ++i) tts.push_back(random_dist(std::vector<Term>(distinct.begin(), distinct.end()), 4, rng, false));
            std::set<Term> dt(tts.begin(), tts.end());
            Term ttt = random_dist(std::vector<Term>(dt.begin(), dt.end()), 4, rng, false);
            Term a = monad_mult(m, monad_mult(m, ttt));
            Term b = monad_mult(m, monad_map(m, ttt, [&](const Term &tt) { return monad_mult(m, tt); }));
            law.expect(a == b, [&] { return ttt.to_string(); });
        }
    }));
    out.push_back(run(S, "transport lifting of point masses is the closure", [&](Law &law) {
        Rng rng(opt.seed + 11);
        for (const auto &q : {qu, qe}) {
            auto values = grid_values(q, Grid{opt.grid, 4});
            Carrier c = points(3);
            auto pts = elems(c);
            for (unsigned s = 0; s < opt.samples; ++s) {
                VGraph d = random_graph(q, c, values, rng);
                VGraph dc = metric_closure(d);
                for (std::size_t i = 0; i < 3; ++i) {
                    for (std::size_t j = 0; j < 3; ++j) {
                        Value v = kantorovich_lp(d, monad_unit(MonadKind::Subdist, pts[i]), monad_unit(MonadKind::Subdist, pts[j])).value;
                        law.expect(v == dc.at(i, j), [&] { return show_graph(d); });
                    }
                }
            }
        }
    }));
    out.push_back(run(S, "transport lifting is a V-category and ignores closing the constraints", [&](Law &law) {
        Rng rng(opt.seed + 12);
        Carrier c = points(3);
        auto pts = elems(c);
        std::vector<Term> dists;
        const Rational h(1, 2);
        for (std::size_t i = 0; i < 3; ++i) dists.push_back(Term::dist({{pts[i], Rational(1)}}));
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = i + 1; j < 3; ++j) dists.push_back(Term::dist({{pts[i], h}, {pts[j], h}}));
        }
        for (const auto &q : {qu, qe}) {
            auto values = grid_values(q, Grid{opt.grid, 4});
            for (unsigned s = 0; s < std::max(1u, opt.samples / 4); ++s) {
                VGraph d = random_graph(q, c, values, rng);
                VGraph m = VGraph::top(q, term_carrier(dists));
                for (std::size_t i = 0; i < dists.size(); ++i) {
                    for (std::size_t j = 0; j < dists.size(); ++j) {
                        m.set(i, j, kantorovich_lp(d, dists[i], dists[j]).value);
                        law.expect(kantorovich_lp(d, dists[i], dists[j], false).value == m.at(i, j), [&] { return show_graph(d); });
                    }
                }
                law.expect(is_vcat(m), [&] { return show_graph(d); });
            }
        }
    }));
    out.push_back(run(S, "Hausdorff lifting: singletons and monotonicity", [&](Law &law) {
        Rng rng(opt.seed + 13);
        Carrier c = points(3);
        auto pts = elems(c);
        auto subsets = all_subsets(pts);
        auto sub = [](const Term &a, const Term &b) {
            for (const auto &e : a.children()) {
                if (std::find(b.children().begin(), b.children().end(), e) == b.children().end()) return false;
            }
            return true;
        };
        for (const auto &q : {qu, qe}) {
            auto values = grid_values(q, Grid{opt.grid, 4});
            for (unsigned s = 0; s < std::max(1u, opt.samples / 4); ++s) {
                VGraph d = random_graph(q, c, values, rng);
                VGraph dc = metric_closure(d);
                for (std::size_t i = 0; i < 3; ++i) {
                    for (std::size_t j = 0; j < 3; ++j)
                        law.expect(hausdorff_directed(d, Term::set({pts[i]}), Term::set({pts[j]})) == dc.at(i, j), [&] { return show_graph(d); });
                }
                for (const auto &u : subsets) {
                    for (const auto &u2 : subsets) {
                        if (!sub(u, u2)) continue;
                        for (const auto &v : subsets) {
                            bool ok = q.leq(hausdorff_directed(d, u, v), hausdorff_directed(d, u2, v)) &&
                                      q.leq(hausdorff_directed(d, v, u2), hausdorff_directed(d, v, u));
                            law.expect(ok, [&] { return show_graph(d) + " " + u.to_string() + " " + u2.to_string() + " " + v.to_string(); });
                        }
                    }
                }
            }
        }
    }));
    out.push_back(run(S, "closed forms equal the predicate lifting on two-valued instances", [&](Law &law) {
        for (std::size_t n = 2; n <= 3; ++n) {
            Carrier c = points(n);
            auto pts = elems(c);
            auto subsets = all_subsets(pts);
            std::vector<Term> dists;
            for (std::size_t i = 0; i < n; ++i) dists.push_back(Term::dist({{pts[i], Rational(1)}}));
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) dists.push_back(Term::dist({{pts[i], Rational(1, 2)}, {pts[j], Rational(1, 2)}}));
            }
            Composite cp = {Layer::of(MonadKind::Powerset)}, cd = {Layer::of(MonadKind::Subdist)};
            for (const auto &b : boolean_graphs(n)) {
                VGraph d = VGraph::bottom(qu, c);
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) d.set(i, j, Value::unit_interval(b.at(i, j).as_bool() ? 0 : 1));
                }
                auto lb = kantorovich_generic(cp, composite_lambda(cp), b, gamma_enum(b, Grid{}), subsets);
                auto lp = kantorovich_generic(cp, composite_lambda(cp), d, gamma_enum(d, Grid{1, 1}), subsets);
                for (std::size_t i = 0; i < subsets.size(); ++i) {
                    for (std::size_t j = 0; j < subsets.size(); ++j) {
                        law.expect(hausdorff_directed(b, subsets[i], subsets[j]) == lb.at(i, j), [&] { return "boolean " + show_graph(b); });
                        law.expect(hausdorff_directed(d, subsets[i], subsets[j]) == lp.at(i, j), [&] { return show_graph(d); });
                    }
                }
                auto ld = kantorovich_generic(cd, composite_lambda(cd), d, gamma_enum(d, Grid{1, 1}), dists);
                for (std::size_t i = 0; i < dists.size(); ++i) {
                    for (std::size_t j = 0; j < dists.size(); ++j)
                        law.expect(kantorovich_lp(d, dists[i], dists[j]).value == ld.at(i, j), [&] { return show_graph(d) + " " + dists[i].to_string() + " " + dists[j].to_string(); });
                }
            }
        }
    }));
    out.push_back(run(S, "grid oracle approaches the closed forms from below", [&](Law &law) {
        Rng rng(opt.seed + 14);
        Carrier c = points(3);
        auto pts = elems(c);
        auto subsets = all_subsets(pts);
        std::vector<Term> dists;
        for (std::size_t i = 0; i < 3; ++i) dists.push_back(Term::dist({{pts[i], Rational(1)}}));
        dists.push_back(Term::dist({{pts[0], Rational(1, 2)}, {pts[1], Rational(1, 4)}, {pts[2], Rational(1, 4)}}));
        dists.push_back(Term::dist({{pts[0], Rational(1, 8)}, {pts[2], Rational(7, 8)}}));
        Composite cp = {Layer::of(MonadKind::Powerset)}, cd = {Layer::of(MonadKind::Subdist)};
        auto eighths = grid_values(qu, Grid{8, 1});
        for (unsigned s = 0; s < std::max(1u, opt.samples / 20); ++s) {
            VGraph d = random_graph(qu, c, eighths, rng);
            std::vector<VGraph> hp, hd;
            for (unsigned k : {2u, 4u, 8u}) {
                PredSet g = gamma_enum(d, Grid{k, 1});
                hp.push_back(kantorovich_generic(cp, composite_lambda(cp), d, g, subsets));
                hd.push_back(kantorovich_generic(cd, composite_lambda(cd), d, g, dists));
            }
            for (std::size_t i = 0; i < subsets.size(); ++i) {
                for (std::size_t j = 0; j < subsets.size(); ++j) {
                    Value exact = hausdorff_directed(d, subsets[i], subsets[j]);
                    bool ok = qu.leq(exact, hp[0].at(i, j)) && qu.leq(hp[2].at(i, j), hp[1].at(i, j)) && qu.leq(hp[1].at(i, j), hp[0].at(i, j)) &&
                              hp[2].at(i, j) == exact;
                    law.expect(ok, [&] { return "hausdorff " + show_graph(d); });
                }
            }
            for (std::size_t i = 0; i < dists.size(); ++i) {
                for (std::size_t j = 0; j < dists.size(); ++j) {
                    Value exact = kantorovich_lp(d, dists[i], dists[j]).value;
                    bool ok = qu.leq(exact, hd[0].at(i, j)) && qu.leq(hd[2].at(i, j), hd[1].at(i, j)) && qu.leq(hd[1].at(i, j), hd[0].at(i, j)) &&
                              hd[2].at(i, j) == exact;
                    law.expect(ok, [&] { return "transport " + show_graph(d) + " " + dists[i].to_string() + " " + dists[j].to_string(); });
                }
            }
        }
    }));
    (void)qb;
    return out;
}

namespace {

struct LawConfig {
    std::string name;
    FunctorExpr f;
    MonadKind m;
    Quantale q;
    std::vector<Value> values;
};

std::vector<LawConfig> distlaw_configs()
{
    Quantale u(QuantaleId::UnitOplus), e(QuantaleId::ExtPlus);
    std::vector<Value> uv = {Value::unit_interval(0), Value::unit_interval(Rational(1, 2)), Value::unit_interval(1)};
    std::vector<Value> ev = {Value::extended(0), Value::extended(1), Value::infinity()};
    return {
        {"machine/subdist", machine_functor({"a"}), MonadKind::Subdist, u, uv},
        {"exception/powerset", exception_functor({"a"}), MonadKind::Powerset, u, uv},
        {"machine/powerset", machine_functor({"a"}), MonadKind::Powerset, u, uv},
        {"exception/subdist", exception_functor({"a"}), MonadKind::Subdist, e, ev},
    };
}

Term tag(const Split &s) { return s.left ? Term::inl(s.value) : Term::inr(s.value); }

} // namespace

std::vector<LawResult> distlaw_laws(const LawOptions &opt, SplitRule split)
{
    const std::string S = "distlaw";
    std::vector<LawResult> out;
    const auto configs = distlaw_configs();
    const std::vector<Term> x1 = elems(Carrier({"x", "y"}));
    const std::vector<Term> x0 = {Term::elem("x")};

    out.push_back(run(S, "constant algebras are homomorphic", [&](Law &law) {
        for (const auto &c : configs) {
            check_distlaw(DistLaw{c.f, c.m, split}, c.q);
            law.expect(true, [] { return std::string(); });
        }
    }));
    out.push_back(run(S, "EM triangle: zeta o eta = F eta", [&](Law &law) {
        for (const auto &c : configs) {
            DistLaw dl{c.f, c.m, split};
            for (const auto &t : enumerate_terms(c.f, x1, c.values)) {
                Term lhs = apply_zeta(dl, c.q, monad_unit(c.m, t));
                Term rhs = fmap(c.f, t, [&](const Term &e) { return monad_unit(c.m, e); });
                law.expect(lhs == rhs, [&] { return c.name + " " + t.to_string(); });
            }
        }
    }));
    out.push_back(run(S, "EM pentagon: zeta o mu = F mu o zeta o T zeta", [&](Law &law) {
        Rng rng(opt.seed + 20);
        for (const auto &c : configs) {
            DistLaw dl{c.f, c.m, split};
            auto check = [&](const Term &tt) {
                Term lhs = apply_zeta(dl, c.q, monad_mult(c.m, tt));
                Term inner = monad_map(c.m, tt, [&](const Term &t) { return apply_zeta(dl, c.q, t); });
                Term rhs = fmap(c.f, apply_zeta(dl, c.q, inner), [&](const Term &e) { return monad_mult(c.m, e); });
                law.expect(lhs == rhs, [&] { return c.name + " " + tt.to_string(); });
            };
            if (c.m == MonadKind::Powerset) {
                for (const auto &xs : {x0, x1}) {
                    auto tf = all_subsets(enumerate_terms(c.f, xs, c.values));
                    for (const auto &tt : small_subsets(tf, xs.size() == 1 ? tf.size() : 3)) check(tt);
                }
            } else {
                auto fx = enumerate_terms(c.f, x1, c.values);
                for (unsigned s = 0; s < std::max(opt.samples, 100u); ++s) {
                    std::set<Term> inner;
                    for (int i = 0; i < 3; ++i) inner.insert(random_dist(fx, 4, rng, false));
                    check(random_dist(std::vector<Term>(inner.begin(), inner.end()), 4, rng, false));
                }
            }
        }
    }));
    out.push_back(run(S, "g is compatible with the unit", [&](Law &law) {
        for (auto m : {MonadKind::Powerset, MonadKind::Subdist}) {
            for (const auto &name : {"a1", "a2", "b1", "b2"}) {
                const bool left = name[0] == 'a';
                Term e = Term::elem(name);
                Split s = apply_g(m, split, monad_unit(m, left ? Term::inl(e) : Term::inr(e)));
                law.expect(s.left == left && s.value == monad_unit(m, e), [&] { return std::string(monad_name(m)) + " at " + (left ? "inl " : "inr ") + name; });
            }
        }
    }));
    out.push_back(run(S, "g is compatible with the multiplication", [&](Law &law) {
        Rng rng(opt.seed + 21);
        std::vector<Term> sum = {Term::inl(Term::elem("a1")), Term::inl(Term::elem("a2")), Term::inr(Term::elem("b"))};
        auto check = [&](MonadKind m, const Term &tt) {
            Split lhs = apply_g(m, split, monad_mult(m, tt));
            Split mid = apply_g(m, split, monad_map(m, tt, [&](const Term &t) { return tag(apply_g(m, split, t)); }));
            bool ok = lhs.left == mid.left && lhs.value == monad_mult(m, mid.value);
            law.expect(ok, [&] { return std::string(monad_name(m)) + " " + tt.to_string(); });
        };
        for (const auto &tt : all_subsets(all_subsets(sum))) check(MonadKind::Powerset, tt);
        for (unsigned s = 0; s < std::max(opt.samples, 100u); ++s) {
            std::set<Term> inner;
            for (int i = 0; i < 3; ++i) inner.insert(random_dist(sum, 4, rng, false));
            check(MonadKind::Subdist, random_dist(std::vector<Term>(inner.begin(), inner.end()), 4, rng, false));
        }
    }));
    out.push_back(run(S, "g is well-behaved for the monad evaluation", [&](Law &law) {
        Rng rng(opt.seed + 22);
        std::vector<Term> sum = {Term::inl(Term::elem("a1")), Term::inl(Term::elem("a2")), Term::inr(Term::elem("b1")), Term::inr(Term::elem("b2"))};
        struct Case {
            MonadKind m;
            Quantale q;
        };
        for (const auto &cs : {Case{MonadKind::Powerset, Quantale(QuantaleId::UnitOplus)}, Case{MonadKind::Subdist, Quantale(QuantaleId::ExtPlus)},
                               Case{MonadKind::Subdist, Quantale(QuantaleId::Boolean)}}) {
            if (!cs.q.is_real()) continue;
            const auto &q = cs.q;
            auto values = grid_values(q, Grid{opt.grid, 2});
            std::vector<Term> inputs;
            if (cs.m == MonadKind::Powerset) inputs = all_subsets(sum);
            else {
                for (unsigned s = 0; s < std::max(opt.samples, 100u); ++s) inputs.push_back(random_dist(sum, 4, rng, false));
            }
            for (const auto &t : inputs) {
                Split g = apply_g(cs.m, split, t);
                for (std::size_t k = 0; k < values.size() * values.size(); ++k) {
                    const Value &fa = values[k % values.size()], &fb = values[k / values.size()];
                    auto f1 = [&](const Term &e) { return e.name() == "a1" ? fa : fb; };
                    auto f2 = [&](const Term &e) { return e.name() == "b1" ? fa : fb; };
                    auto lhs = [&](bool use1, bool use2) {
                        return monad_eval(cs.m, q, t, [&](const Term &e) {
                            if (e.kind() == Term::Kind::Inl) return use1 ? f1(e.child()) : q.bottom();
                            return use2 ? f2(e.child()) : q.top();
                        });
                    };
                    Value w1 = g.left ? monad_eval(cs.m, q, g.value, f1) : q.top();
                    Value w2 = g.left ? q.bottom() : monad_eval(cs.m, q, g.value, f2);
                    Value w3 = g.left ? q.bottom() : q.top();
                    bool ok = lhs(true, false) == w1 && lhs(false, true) == w2 && lhs(false, false) == w3;
                    law.expect(ok, [&] { return std::string(monad_name(cs.m)) + " " + t.to_string() + " f=" + show({fa, fb}); });
                }
            }
        }
    }));
    out.push_back(run(S, "evaluation exchange through zeta", [&](Law &law) {
        Rng rng(opt.seed + 23);
        for (const auto &c : configs) {
            DistLaw dl{c.f, c.m, split};
            std::vector<Term> vleaves;
            for (const auto &v : c.values) vleaves.push_back(Term::val(v));
            auto fv = enumerate_terms(c.f, vleaves, c.values);
            std::vector<Term> inputs;
            if (c.m == MonadKind::Powerset) inputs = all_subsets(fv);
            else {
                for (unsigned s = 0; s < std::max(opt.samples, 100u); ++s) inputs.push_back(random_dist(fv, 4, rng, false));
            }
            Composite tf = {Layer::of(c.m), Layer::of(c.f)}, ft = {Layer::of(c.f), Layer::of(c.m)};
            LeafValue base = [](const Term &t) { return t.value(); };
            for (const auto &t : inputs) {
                Term z = apply_zeta(dl, c.q, t);
                for (const auto &ev : build_lambda(c.f)) {
                    Value lhs = evaluate(tf, {EvalMap::identity(), ev}, t, c.q, base);
                    Value rhs = evaluate(ft, {ev, EvalMap::identity()}, z, c.q, base);
                    law.expect(lhs == rhs, [&] { return c.name + " " + ev.to_string() + " at " + t.to_string(); });
                }
            }
        }
    }));
    out.push_back(run(S, "zeta is non-expansive between the lifted distances, boolean", [&](Law &law) {
        Quantale qb(QuantaleId::Boolean);
        const Carrier xy({"x", "y"});
        std::vector<Value> bools = {Value::boolean(false), Value::boolean(true)};
        for (const auto &f : {machine_functor({"a"}), exception_functor({"a"})}) {
            DistLaw dl{f, MonadKind::Powerset, split};
            auto tfx = all_subsets(enumerate_terms(f, x1, bools));
            std::vector<Term> zs;
            for (const auto &t : tfx) zs.push_back(apply_zeta(dl, qb, t));
            Composite tf = {Layer::of(MonadKind::Powerset), Layer::of(f)}, ft = {Layer::of(f), Layer::of(MonadKind::Powerset)};
            auto ltf = composite_lambda(tf), lft = composite_lambda(ft);
            for (const auto &d0 : boolean_graphs(2)) {
                VGraph d = VGraph::bottom(qb, xy);
                for (std::size_t i = 0; i < 2; ++i) {
                    for (std::size_t j = 0; j < 2; ++j) d.set(i, j, d0.at(i, j));
                }
                VGraph a = kantorovich_exact(tf, ltf, d, tfx);
                for (std::size_t i = 0; i < tfx.size(); ++i) {
                    for (std::size_t j = 0; j < tfx.size(); ++j) {
                        Value b = kantorovich_exact(ft, lft, d, zs[i], zs[j]);
                        law.expect(qb.leq(a.at(i, j), b), [&] { return f.to_string() + " " + show_graph(d) + " at " + tfx[i].to_string() + ", " + tfx[j].to_string(); });
                    }
                }
            }
        }
    }));
    return out;
}

std::vector<LawResult> behaviour_laws(const LawOptions &opt)
{
    const std::string S = "behaviour";
    std::vector<LawResult> out;
    const Quantale qu(QuantaleId::UnitOplus);

    out.push_back(run(S, "trace bound <= Kleene iterate <= certified value", [&](Law &law) {
        CoalgebraModel em = exception_model(3);
        Determinization det(em);
        Certificate cert = exception_certificate(em, 3);
        for (const auto &[pair, v] : cert.entries) {
            for (std::size_t l = 0; l <= 8; ++l) {
                Value tr = trace_lower_bound(em, pair.first, pair.second, l);
                Value it = kleene_iterate(det, pair.first, pair.second, l);
                law.expect(qu.leq(it, tr) && qu.leq(v, it), [&] { return pair.first.to_string() + ", " + pair.second.to_string() + " L=" + std::to_string(l); });
            }
        }
        CoalgebraModel pm = probchain_model();
        Determinization pdet(pm);
        Certificate pc = probchain_certificate(pm);
        for (const auto &[pair, v] : pc.entries) {
            for (std::size_t l = 0; l <= 10; ++l) {
                Value tr = trace_lower_bound(pm, pair.first, pair.second, l);
                Value it = kleene_iterate(pdet, pair.first, pair.second, l);
                law.expect(qu.leq(it, tr) && qu.leq(v, it), [&] { return pair.first.to_string() + ", " + pair.second.to_string() + " L=" + std::to_string(l); });
            }
        }
    }));
    out.push_back(run(S, "Kleene iterates ascend and stabilize on the exception carrier", [&](Law &law) {
        CoalgebraModel em = exception_model(3);
        Determinization det(em);
        Term p = em.parse_state("{x0,y0}"), q = em.parse_state("{z0}");
        auto carrier = det.reachable({p, q});
        KleeneResult r = kleene_gfp(det, carrier, 1000);
        law.expect(r.converged, [] { return std::string("no exact stabilization"); });
        law.expect(r.at(p, q) == Value::unit_interval(Rational(1, 4)), [&] { return "value " + r.at(p, q).to_string(); });
        for (std::size_t n = 0; n < r.iterations; ++n) {
            for (const auto &a : {p, q}) {
                for (const auto &b : {p, q}) {
                    law.expect(qu.leq(kleene_iterate(det, a, b, n + 1), kleene_iterate(det, a, b, n)), [&] { return "n=" + std::to_string(n); });
                }
            }
        }
    }));
    out.push_back(run(S, "witness bound over-approximates the exact up-to closure", [&](Law &law) {
        Rng rng(opt.seed + 30);
        auto values = grid_values(qu, Grid{opt.grid, 1});
        for (std::size_t n : {2u, 3u}) {
            Carrier states = points(n, "s");
            auto ys = all_subsets(elems(states));
            for (unsigned s = 0; s < std::max(1u, opt.samples / 10); ++s) {
                Certificate cert;
                cert.quantale = qu;
                cert.monad = MonadKind::Powerset;
                for (unsigned e = 0; e < 2 * n; ++e) cert.entries.insert_or_assign(std::make_pair(ys[pick(rng, ys.size())], ys[pick(rng, ys.size())]), values[pick(rng, values.size())]);
                for (unsigned w = 0; w < n; ++w) {
                    std::vector<WitnessPart> parts;
                    std::vector<Term> ls, rs;
                    for (unsigned k = 0, count = 1 + unsigned(pick(rng, 3)); k < count; ++k) {
                        WitnessPart part{1, ys[pick(rng, ys.size())], ys[pick(rng, ys.size())]};
                        ls.push_back(part.lhs);
                        rs.push_back(part.rhs);
                        parts.push_back(part);
                    }
                    cert.witnesses.push_back(Witness{monad_mult(MonadKind::Powerset, Term::set(ls)),
                                                     monad_mult(MonadKind::Powerset, Term::set(rs)), std::move(parts)});
                }
                for (const auto &p : ys) {
                    for (const auto &q : ys) {
                        Value exact = u_exact(cert, states, p, q);
                        bool ok = qu.leq(witness_bound(cert, p, q), exact) && qu.leq(cert.candidate(p, q), exact);
                        law.expect(ok, [&] { return cert.to_json().dump() + " at " + p.to_string() + ", " + q.to_string(); });
                    }
                }
            }
        }
    }));
    out.push_back(run(S, "bundled certificates are accepted and tampering is caught", [&](Law &law) {
        CoalgebraModel em = exception_model(3);
        Determinization det(em);
        Certificate cert = exception_certificate(em, 3);
        law.expect(certify(det, cert).accepted, [] { return std::string("exception certificate rejected"); });
        Certificate bad = cert;
        auto key = std::make_pair(em.parse_state("{x0,y0}"), em.parse_state("{z0}"));
        bad.entries.insert_or_assign(key, Value::unit_interval(Rational(1, 5)));
        Verdict v = certify(det, bad);
        law.expect(!v.accepted && v.pair && *v.pair == key, [&] { return v.reason; });
        CoalgebraModel pm = probchain_model();
        Determinization pdet(pm);
        law.expect(certify(pdet, probchain_certificate(pm)).accepted, [] { return std::string("probabilistic certificate rejected"); });
    }));
    out.push_back(run(S, "lowering one entry keeps the other checks passing", [&](Law &law) {
        CoalgebraModel em = exception_model(3);
        Determinization det(em);
        const Certificate cert = exception_certificate(em, 3);
        for (const auto &[pair, v] : cert.entries) {
            for (const Rational &r : std::vector<Rational>{Rational(0), Rational(1, 12), Rational(v.numeric() / 2)}) {
                if (r >= v.numeric()) continue;
                Certificate lower = cert;
                lower.entries.insert_or_assign(pair, Value::unit_interval(r));
                Verdict verdict = certify(det, lower);
                for (const auto &c : verdict.checks) {
                    if (c.lhs == pair.first && c.rhs == pair.second) continue;
                    law.expect(c.ok, [&] { return "lowering " + pair.first.to_string() + ", " + pair.second.to_string() + " broke " + c.lhs.to_string() + ", " + c.rhs.to_string(); });
                }
            }
        }
    }));
    return out;
}

std::vector<LawResult> run_laws(const std::string &scope, const LawOptions &opt, SplitRule split)
{
    std::vector<LawResult> out;
    auto add = [&](std::vector<LawResult> r) { out.insert(out.end(), r.begin(), r.end()); };
    bool all = scope == "all", known = all;
    if (all || scope == "quantale") known = true, add(quantale_laws(opt));
    if (all || scope == "galois") known = true, add(galois_laws(opt));
    if (all || scope == "polyfunctor") known = true, add(polyfunctor_laws(opt));
    if (all || scope == "monadlift") known = true, add(monadlift_laws(opt));
    if (all || scope == "distlaw") known = true, add(distlaw_laws(opt, split));
    if (all || scope == "behaviour") known = true, add(behaviour_laws(opt));
    if (!known) throw PreconditionError("unknown law scope '" + scope + "'");
    return out;
}

} // namespace qlift
