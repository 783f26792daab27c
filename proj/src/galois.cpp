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

#include "qlift/galois.hpp"

#include "qlift/errors.hpp"

#include <algorithm>

namespace qlift {

void PredSet::add(Predicate p)
{
    if (p.size() != carrier_.size()) throw ShapeError("predicate size differs from carrier size");
    for (const auto &v : p) q_.check(v);
    preds_.insert(std::move(p));
}

bool PredSet::subset_of(const PredSet &other) const
{
    require_same_carrier(carrier_, other.carrier_, "PredSet::subset_of");
    return std::all_of(preds_.begin(), preds_.end(), [&](const Predicate &p) { return other.contains(p); });
}

std::vector<Value> grid_values(const Quantale &q, const Grid &grid)
{
    if (grid.resolution == 0) throw PreconditionError("grid resolution must be positive");
    std::vector<Value> out;
    switch (q.id()) {
    case QuantaleId::Boolean:
        out = {Value::boolean(false), Value::boolean(true)};
        break;
    case QuantaleId::UnitOplus:
        for (unsigned i = 0; i <= grid.resolution; ++i) out.push_back(Value::unit_interval(Rational(i, grid.resolution)));
        break;
    case QuantaleId::ExtPlus: {
        if (grid.cap < 0) throw PreconditionError("grid cap must be non-negative");
        for (mpz_class i = 0;; ++i) {
            Rational r(i, grid.resolution);
            r.canonicalize();
            if (r > grid.cap) break;
            out.push_back(Value::extended(r));
        }
        out.push_back(Value::infinity());
        break;
    }
    }
    return out;
}

VGraph alpha(const PredSet &s)
{
    const auto &q = s.quantale();
    VGraph out = VGraph::top(q, s.carrier());
    for (const auto &f : s.predicates()) {
        for (std::size_t x = 0; x < out.size(); ++x) {
            for (std::size_t y = 0; y < out.size(); ++y) out.set(x, y, q.meet(out.at(x, y), q.residuate(f[x], f[y])));
        }
    }
    return out;
}

std::optional<std::pair<std::size_t, std::size_t>> nonexpansive_violation(const VGraph &d, const Predicate &f)
{
    if (f.size() != d.size()) throw ShapeError("predicate size differs from carrier size");
    const auto &q = d.quantale();
    for (std::size_t x = 0; x < d.size(); ++x) {
        for (std::size_t y = 0; y < d.size(); ++y) {
            if (!q.leq(d.at(x, y), q.residuate(f[x], f[y]))) return std::make_pair(x, y);
        }
    }
    return std::nullopt;
}

PredSet gamma_enum(const VGraph &d, const Grid &grid, std::uint64_t budget)
{
    const auto &q = d.quantale();
    const auto values = grid_values(q, grid);
    const std::size_t n = d.size();

    std::uint64_t count = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (count > budget / values.size()) {
            count = budget + 1;
            break;
        }
        count *= values.size();
    }
    if (count > budget) throw BudgetExceeded("gamma enumeration", count, budget);

    PredSet out(q, d.carrier());
    std::vector<std::size_t> digits(n, 0);
    Predicate f(n, values.front());
    while (true) {
        for (std::size_t i = 0; i < n; ++i) f[i] = values[digits[i]];
        if (is_nonexpansive(d, f)) out.add(f);
        std::size_t i = 0;
        while (i < n && ++digits[i] == values.size()) digits[i++] = 0;
        if (i == n) break;
    }
    return out;
}

PredSet pull(const FiniteMap &f, const PredSet &t)
{
    require_same_carrier(f.codomain(), t.carrier(), "pull");
    PredSet out(t.quantale(), f.domain());
    for (const auto &g : t.predicates()) {
        Predicate h;
        h.reserve(f.domain().size());
        for (std::size_t x = 0; x < f.domain().size(); ++x) h.push_back(g[f(x)]);
        out.add(std::move(h));
    }
    return out;
}

namespace {

struct Prepared {
    VGraph d;
    std::vector<std::size_t> sub;
    std::optional<std::string> warning;
};

Prepared prepare_extension(const VGraph &d, const std::vector<std::string> &sub, const Predicate &f)
{
    if (f.size() != sub.size()) throw ShapeError("extension: predicate size differs from subset size");
    Prepared p{d, {}, std::nullopt};
    if (!is_vcat(d)) {
        p.d = metric_closure(d);
        p.warning = "input is not a V-category; extended against its metric closure";
    }
    for (const auto &name : sub) p.sub.push_back(d.carrier().index(name));
    const auto &q = d.quantale();
    for (const auto &v : f) q.check(v);
    for (std::size_t i = 0; i < sub.size(); ++i) {
        for (std::size_t j = 0; j < sub.size(); ++j) {
            if (!q.leq(p.d.at(p.sub[i], p.sub[j]), q.residuate(f[i], f[j]))) {
                throw PreconditionError("extension: predicate is not non-expansive on (" + sub[i] + ", " + sub[j] + ")");
            }
        }
    }
    return p;
}

} // namespace

Extension extension_largest(const VGraph &d, const std::vector<std::string> &sub, const Predicate &f)
{
    auto p = prepare_extension(d, sub, f);
    const auto &q = d.quantale();
    Extension out{Predicate(d.size(), q.top()), p.warning};
    for (std::size_t x = 0; x < d.size(); ++x) {
        for (std::size_t i = 0; i < p.sub.size(); ++i) {
            out.values[x] = q.meet(out.values[x], q.residuate(p.d.at(x, p.sub[i]), f[i]));
        }
    }
    return out;
}

Extension extension_smallest(const VGraph &d, const std::vector<std::string> &sub, const Predicate &f)
{
    auto p = prepare_extension(d, sub, f);
    const auto &q = d.quantale();
    Extension out{Predicate(d.size(), q.bottom()), p.warning};
    for (std::size_t x = 0; x < d.size(); ++x) {
        for (std::size_t i = 0; i < p.sub.size(); ++i) {
            out.values[x] = q.join(out.values[x], q.tensor(f[i], p.d.at(p.sub[i], x)));
        }
    }
    return out;
}

} // namespace qlift
