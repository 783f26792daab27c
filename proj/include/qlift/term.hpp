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

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qlift {

/**
 * Elements of composite functors applied to a base set.
 *
 * Polynomial layers use Const/Id/Tuple/Inl/Inr, the powerset monad uses Set
 * and the subdistribution monad uses Dist. Base elements are Elem (a named
 * state) or Val (a quantale value). Set and Dist nodes are kept canonical:
 * children sorted, duplicates merged, zero weights dropped.
 */
class Term {
public:
    enum class Kind { Elem, Val, Const, Id, Tuple, Inl, Inr, Set, Dist };
    using Atom = std::variant<std::string, Value>;

    static Term elem(std::string name);
    static Term val(Value v);
    static Term constant(Atom a);
    static Term id(Term child);
    static Term tuple(std::vector<Term> children);
    static Term inl(Term child);
    static Term inr(Term child);
    static Term set(std::vector<Term> members);
    // Weights must be non-negative and sum to at most 1.
    static Term dist(std::vector<std::pair<Term, Rational>> weighted);

    Kind kind() const { return kind_; }
    const std::string &name() const;
    const Value &value() const;
    const Atom &atom() const;
    const std::vector<Term> &children() const { return children_; }
    const Term &child() const;
    const std::vector<Rational> &weights() const { return weights_; }
    Rational mass() const;

    std::string to_string() const;

    friend int compare(const Term &a, const Term &b);
    friend bool operator==(const Term &a, const Term &b) { return compare(a, b) == 0; }
    friend bool operator<(const Term &a, const Term &b) { return compare(a, b) < 0; }

private:
    Term() = default;

    Kind kind_ = Kind::Elem;
    Atom atom_;
    std::vector<Term> children_;
    std::vector<Rational> weights_;
};

inline std::ostream &operator<<(std::ostream &os, const Term &t) { return os << t.to_string(); }

// Parses printed monad values over named states: x, {a,b}, [1/2:a,1/2:b],
// nested to any depth.
Term parse_term(std::string_view text);

// Rejects names that would clash with the printed term syntax.
void check_element_name(const std::string &name);

} // namespace qlift
