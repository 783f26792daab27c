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

#include "qlift/galois.hpp"
#include "qlift/term.hpp"
#include "qlift/vgraph.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qlift {

// A finite join-semilattice on constant atoms, used as a powerset algebra.
struct JoinAlgebra {
    std::size_t bottom = 0;
    std::vector<std::vector<std::size_t>> join;
};

struct ConstSpec {
    // True when the constant set is the quantale itself, evaluated by the identity.
    bool values = false;
    Carrier atoms;
    std::vector<Predicate> evals;
    std::optional<JoinAlgebra> algebra;

    std::size_t eval_count() const { return values ? 1 : evals.size(); }
};

// Polynomial functors: constants, identity, finite products and binary coproducts.
class FunctorExpr {
public:
    enum class Kind { Const, Id, Prod, Coprod };

    static FunctorExpr constant_values();
    static FunctorExpr constant_atoms(Carrier atoms, std::vector<Predicate> evals,
                                      std::optional<JoinAlgebra> algebra = std::nullopt);
    static FunctorExpr id();
    static FunctorExpr prod(std::vector<FunctorExpr> parts, std::vector<std::string> labels = {});
    // Labelled power of body, e.g. Id^A.
    static FunctorExpr pow(std::vector<std::string> labels, const FunctorExpr &body);
    static FunctorExpr coprod(FunctorExpr left, FunctorExpr right);

    Kind kind() const { return node_->kind; }
    const ConstSpec &const_spec() const;
    const std::vector<FunctorExpr> &parts() const { return node_->parts; }
    const std::vector<std::string> &labels() const { return node_->labels; }
    // Index of a labelled product component.
    std::size_t label_index(const std::string &label) const;

    std::string to_string() const;
    nlohmann::json to_json() const;
    static FunctorExpr from_json(const nlohmann::json &j, const Quantale &q);

private:
    struct Node {
        Kind kind;
        ConstSpec spec;
        std::vector<FunctorExpr> parts;
        std::vector<std::string> labels;
    };
    explicit FunctorExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    std::shared_ptr<const Node> node_;
};

// Evaluation maps F V -> V built from projections, constants and copairings with top/bottom.
class EvalMap {
public:
    enum class Kind { Const, Identity, Project, Left, Right, BotTop };

    static EvalMap constant(std::size_t index);
    static EvalMap identity();
    static EvalMap project(std::size_t index, EvalMap inner);
    // [inner, top]
    static EvalMap left(EvalMap inner);
    // [bottom, inner]
    static EvalMap right(EvalMap inner);
    // [bottom, top]
    static EvalMap bot_top();

    Kind kind() const { return kind_; }
    std::size_t index() const { return index_; }
    const EvalMap &inner() const { return *inner_; }
    std::string to_string() const;

private:
    Kind kind_ = Kind::Identity;
    std::size_t index_ = 0;
    std::shared_ptr<const EvalMap> inner_;
};

std::vector<EvalMap> build_lambda(const FunctorExpr &f);

using LeafValue = std::function<Value(const Term &)>;
using LeafMap = std::function<Term(const Term &)>;
using LeafDist = std::function<Value(const Term &, const Term &)>;

// Throws ShapeError when t is not an element of F applied to something.
void check_shape(const FunctorExpr &f, const Term &t);

// ev applied to F(leaf)(t).
Value apply_eval(const FunctorExpr &f, const EvalMap &ev, const Term &t, const Quantale &q, const LeafValue &leaf);

Term fmap(const FunctorExpr &f, const Term &t, const LeafMap &fn);
// Id children in left-to-right order.
std::vector<Term> id_leaves(const FunctorExpr &f, const Term &t);

// The structural lifting with a caller-supplied distance between Id children.
Value lift_poly(const FunctorExpr &f, const Quantale &q, const Term &s, const Term &t, const LeafDist &leaf);

// Carrier whose names are the printed terms.
Carrier term_carrier(const std::vector<Term> &terms);

// The Kantorovich lifting of d to the given terms over d's carrier, via closed forms.
VGraph lift_closed(const FunctorExpr &f, const VGraph &d, const std::vector<Term> &terms);

// Shape-directed JSON codec; Id positions are decoded by the leaf callback.
Term term_from_json(const FunctorExpr &f, const nlohmann::json &j, const Quantale &q,
                    const std::function<Term(const nlohmann::json &)> &leaf);
nlohmann::json term_to_json(const FunctorExpr &f, const Term &t, const Quantale &q,
                            const std::function<nlohmann::json(const Term &)> &leaf);

// All terms of F over `leaves`, value constants drawn from `values`.
std::vector<Term> enumerate_terms(const FunctorExpr &f, const std::vector<Term> &leaves, const std::vector<Value> &values);

} // namespace qlift
