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

#pragma once

#include "qlift/quantale.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace qlift {

class Carrier {
public:
    Carrier() = default;
    explicit Carrier(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string &name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string> &names() const { return names_; }
    std::size_t index(const std::string &name) const;
    std::optional<std::size_t> find(const std::string &name) const;
    bool contains(const std::string &name) const { return find(name).has_value(); }

    friend bool operator==(const Carrier &a, const Carrier &b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

class FiniteMap {
public:
    FiniteMap(Carrier domain, Carrier codomain, std::vector<std::size_t> image);

    const Carrier &domain() const { return dom_; }
    const Carrier &codomain() const { return cod_; }
    std::size_t operator()(std::size_t i) const { return image_.at(i); }

private:
    Carrier dom_, cod_;
    std::vector<std::size_t> image_;
};

// A V-valued relation on a finite carrier, stored densely.
class VGraph {
public:
    VGraph(Quantale q, Carrier carrier, const Value &fill);
    static VGraph top(Quantale q, Carrier carrier) { return VGraph(q, std::move(carrier), q.top()); }
    static VGraph bottom(Quantale q, Carrier carrier) { return VGraph(q, std::move(carrier), q.bottom()); }
    // Bottom off the diagonal, unit on it.
    static VGraph discrete(Quantale q, Carrier carrier);

    const Quantale &quantale() const { return q_; }
    const Carrier &carrier() const { return carrier_; }
    std::size_t size() const { return carrier_.size(); }

    const Value &at(std::size_t i, std::size_t j) const { return dist_[i * size() + j]; }
    const Value &at(const std::string &a, const std::string &b) const { return at(carrier_.index(a), carrier_.index(b)); }
    void set(std::size_t i, std::size_t j, const Value &v);
    void set(const std::string &a, const std::string &b, const Value &v) { set(carrier_.index(a), carrier_.index(b), v); }

    nlohmann::json to_json() const;
    static VGraph from_json(const nlohmann::json &j);

    friend bool operator==(const VGraph &a, const VGraph &b);

private:
    Quantale q_;
    Carrier carrier_;
    std::vector<Value> dist_;
};

// Pointwise order; both graphs must live on the same carrier.
bool graph_leq(const VGraph &d1, const VGraph &d2);
VGraph graph_join(const VGraph &d1, const VGraph &d2);
VGraph graph_meet(const VGraph &d1, const VGraph &d2);

// f*(d) = d o (f x f)
VGraph reindex(const FiniteMap &f, const VGraph &d);
// Join over preimages; bottom where a preimage is empty.
VGraph direct_image(const FiniteMap &f, const VGraph &d);

bool is_vcat(const VGraph &d);
// The least V-category above d.
VGraph metric_closure(const VGraph &d);

void require_same_carrier(const Carrier &a, const Carrier &b, const char *where);

} // namespace qlift
