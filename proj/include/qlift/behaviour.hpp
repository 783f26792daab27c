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

#include "qlift/distlaw.hpp"
#include "qlift/functor.hpp"
#include "qlift/monad.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qlift {

// A coalgebra X -> F T X, given state by state.
struct CoalgebraModel {
    Quantale quantale{QuantaleId::UnitOplus};
    FunctorExpr functor = FunctorExpr::id();
    MonadKind monad = MonadKind::Powerset;
    Carrier states;
    std::map<std::string, Term> transitions;

    const Term &step(const std::string &state) const;
    void validate() const;
    // Parses a monad value over states: a name, {..} or [..].
    Term parse_state(std::string_view text) const;

    nlohmann::json to_json() const;
    static CoalgebraModel from_json(const nlohmann::json &j);
};

// c# = F mu . zeta . T c, computed on demand and memoized by canonical term.
class Determinization {
public:
    explicit Determinization(const CoalgebraModel &model, SplitRule split = SplitRule::PriorityLeft,
                             std::uint64_t budget = 100'000);

    const CoalgebraModel &model() const { return model_; }
    const DistLaw &law() const { return law_; }

    const Term &successor(const Term &state);
    std::vector<Term> successor_states(const Term &state);
    // Breadth-first closure under successors; refuses beyond the budget.
    std::vector<Term> reachable(const std::vector<Term> &seeds);
    std::size_t memo_size() const { return memo_.size(); }

private:
    const CoalgebraModel &model_;
    DistLaw law_;
    std::uint64_t budget_;
    std::map<Term, Term> memo_;
};

// beh(d)(p, q): the structural lifting at (c# p, c# q) with d at identity positions.
Value beh_apply(Determinization &det, const Term &p, const Term &q, const LeafDist &d);

struct KleeneResult {
    VGraph dist;
    std::vector<Term> carrier;
    std::size_t iterations = 0;
    bool converged = false;

    Value at(const Term &p, const Term &q) const;
};

KleeneResult kleene_gfp(Determinization &det, const std::vector<Term> &carrier, std::size_t max_iters = 1000);
// The n-th iterate at one pair, exploring only what it needs.
Value kleene_iterate(Determinization &det, const Term &p, const Term &q, std::size_t n);

enum class TraceShape { Machine, Exception };
TraceShape trace_shape(const CoalgebraModel &model);

// Words over the labels of length below `length`, shortest first.
std::vector<std::vector<std::string>> words_below(const std::vector<std::string> &labels, std::size_t length);

struct TraceEntry {
    // Machine: the observed value. Exception: the least exception step and sup of values, if any.
    std::optional<std::size_t> exception_step;
    Value value;
};
TraceEntry trace_of(const CoalgebraModel &model, const Term &state, const std::vector<std::string> &word);
Value word_distance(const CoalgebraModel &model, const Term &p, const Term &q, const std::vector<std::string> &word);

// Largest per-word distance over all words of length below L.
Value trace_lower_bound(const CoalgebraModel &model, const Term &p, const Term &q, std::size_t length);

struct TraceTable {
    std::vector<std::string> words;
    std::vector<std::pair<std::string, std::vector<TraceEntry>>> rows;
};
TraceTable trace_table(const CoalgebraModel &model, const std::vector<Term> &states, std::size_t length);

struct WitnessPart {
    Rational weight = 1;
    Term lhs;
    Term rhs;
};

struct Witness {
    Term lhs;
    Term rhs;
    std::vector<WitnessPart> parts;
};

struct CertificateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A candidate distance on monad values (bottom off its support) with up-to witnesses.
struct Certificate {
    Quantale quantale{QuantaleId::UnitOplus};
    MonadKind monad = MonadKind::Powerset;
    std::map<std::pair<Term, Term>, Value> entries;
    std::vector<Witness> witnesses;

    Value candidate(const Term &p, const Term &q) const;

    nlohmann::json to_json() const;
    static Certificate from_json(const nlohmann::json &j, const CoalgebraModel &model);
};

// Throws CertificateError when the parts do not recombine to the pair.
void check_witness(MonadKind m, const Witness &w);

Value witness_bound(const Certificate &cert, const Term &p, const Term &q);

struct EntryCheck {
    Term lhs;
    Term rhs;
    Value claimed;
    Value bound;
    bool ok;
};

struct Verdict {
    bool accepted = false;
    std::string reason;
    std::optional<std::pair<Term, Term>> pair;
    std::vector<EntryCheck> checks;
};

Verdict certify(Determinization &det, const Certificate &cert);

// Exact up-to closure of the candidate at one pair (powerset only).
Value u_exact(const Certificate &cert, const Carrier &states, const Term &p, const Term &q,
              std::uint64_t budget = 1'000'000);

} // namespace qlift
