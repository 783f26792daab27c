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

#include "qlift/vgraph.hpp"

#include "qlift/errors.hpp"

namespace qlift {

Carrier::Carrier(std::vector<std::string> names) : names_(std::move(names))
{
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (!index_.emplace(names_[i], i).second) throw PreconditionError("duplicate element '" + names_[i] + "'");
    }
}

std::size_t Carrier::index(const std::string &name) const
{
    auto it = index_.find(name);
    if (it == index_.end()) throw PreconditionError("unknown element '" + name + "'");
    return it->second;
}

std::optional<std::size_t> Carrier::find(const std::string &name) const
{
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

FiniteMap::FiniteMap(Carrier domain, Carrier codomain, std::vector<std::size_t> image)
    : dom_(std::move(domain)), cod_(std::move(codomain)), image_(std::move(image))
{
    if (image_.size() != dom_.size()) throw PreconditionError("map image size differs from domain size");
    for (auto i : image_) {
        if (i >= cod_.size()) throw PreconditionError("map image outside codomain");
    }
}

void require_same_carrier(const Carrier &a, const Carrier &b, const char *where)
{
    if (!(a == b)) throw CarrierMismatch(std::string(where) + ": carriers differ");
}

VGraph::VGraph(Quantale q, Carrier carrier, const Value &fill)
    : q_(q), carrier_(std::move(carrier)), dist_(carrier_.size() * carrier_.size(), fill)
{
    q_.check(fill);
}

VGraph VGraph::discrete(Quantale q, Carrier carrier)
{
    VGraph g(q, std::move(carrier), q.bottom());
    for (std::size_t i = 0; i < g.size(); ++i) g.set(i, i, q.unit());
    return g;
}

void VGraph::set(std::size_t i, std::size_t j, const Value &v)
{
    q_.check(v);
    dist_.at(i * size() + j) = v;
}

bool operator==(const VGraph &a, const VGraph &b)
{
    return a.q_ == b.q_ && a.carrier_ == b.carrier_ && a.dist_ == b.dist_;
}

nlohmann::json VGraph::to_json() const
{
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < size(); ++j) row.push_back(q_.to_json(at(i, j)));
        rows.push_back(row);
    }
    return {{"quantale", std::string(quantale_name(q_.id()))}, {"elements", carrier_.names()}, {"dist", rows}};
}

VGraph VGraph::from_json(const nlohmann::json &j)
{
    if (!j.is_object() || !j.contains("quantale") || !j.contains("elements") || !j.contains("dist"))
        throw ParseError("V-graph needs quantale, elements and dist");
    Quantale q(parse_quantale(j.at("quantale").get<std::string>()));
    Carrier c(j.at("elements").get<std::vector<std::string>>());
    VGraph g(q, c, q.bottom());
    const auto &rows = j.at("dist");
    if (!rows.is_array() || rows.size() != c.size()) throw ParseError("dist must be a square matrix over elements");
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!rows[i].is_array() || rows[i].size() != c.size()) throw ParseError("dist must be a square matrix over elements");
        for (std::size_t k = 0; k < c.size(); ++k) g.set(i, k, q.from_json(rows[i][k]));
    }
    return g;
}

bool graph_leq(const VGraph &d1, const VGraph &d2)
{
    require_same_carrier(d1.carrier(), d2.carrier(), "graph_leq");
    if (!(d1.quantale() == d2.quantale())) throw QuantaleTypeError("graph_leq: quantales differ");
    for (std::size_t i = 0; i < d1.size(); ++i) {
        for (std::size_t j = 0; j < d1.size(); ++j) {
            if (!d1.quantale().leq(d1.at(i, j), d2.at(i, j))) return false;
        }
    }
    return true;
}

namespace {

template <class Op>
VGraph pointwise(const VGraph &d1, const VGraph &d2, Op op, const char *where)
{
    require_same_carrier(d1.carrier(), d2.carrier(), where);
    VGraph out = d1;
    for (std::size_t i = 0; i < d1.size(); ++i) {
        for (std::size_t j = 0; j < d1.size(); ++j) out.set(i, j, op(d1.at(i, j), d2.at(i, j)));
    }
    return out;
}

} // namespace

VGraph graph_join(const VGraph &d1, const VGraph &d2)
{
    const auto &q = d1.quantale();
    return pointwise(d1, d2, [&](const Value &a, const Value &b) { return q.join(a, b); }, "graph_join");
}

VGraph graph_meet(const VGraph &d1, const VGraph &d2)
{
    const auto &q = d1.quantale();
    return pointwise(d1, d2, [&](const Value &a, const Value &b) { return q.meet(a, b); }, "graph_meet");
}

VGraph reindex(const FiniteMap &f, const VGraph &d)
{
    require_same_carrier(f.codomain(), d.carrier(), "reindex");
    VGraph out(d.quantale(), f.domain(), d.quantale().top());
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = 0; j < out.size(); ++j) out.set(i, j, d.at(f(i), f(j)));
    }
    return out;
}

VGraph direct_image(const FiniteMap &f, const VGraph &d)
{
    require_same_carrier(f.domain(), d.carrier(), "direct_image");
    const auto &q = d.quantale();
    VGraph out = VGraph::bottom(q, f.codomain());
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = 0; j < d.size(); ++j) out.set(f(i), f(j), q.join(out.at(f(i), f(j)), d.at(i, j)));
    }
    return out;
}

bool is_vcat(const VGraph &d)
{
    const auto &q = d.quantale();
    const std::size_t n = d.size();
    for (std::size_t x = 0; x < n; ++x) {
        if (!q.leq(q.unit(), d.at(x, x))) return false;
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t z = 0; z < n; ++z) {
                if (!q.leq(q.tensor(d.at(x, y), d.at(y, z)), d.at(x, z))) return false;
            }
        }
    }
    return true;
}

VGraph metric_closure(const VGraph &d)
{
    const auto &q = d.quantale();
    const std::size_t n = d.size();
    VGraph out = d;
    for (std::size_t x = 0; x < n; ++x) out.set(x, x, q.join(out.at(x, x), q.unit()));
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t x = 0; x < n; ++x) {
                for (std::size_t z = 0; z < n; ++z) {
                    Value via = q.tensor(out.at(x, y), out.at(y, z));
                    if (!q.leq(via, out.at(x, z))) {
                        out.set(x, z, q.join(out.at(x, z), via));
                        changed = true;
                    }
                }
            }
        }
    }
    return out;
}

} // namespace qlift
