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
#include "qlift/laws.hpp"
#include "qlift/repro.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

using namespace qlift;

namespace {

enum Exit { kOk = 0, kRejected = 1, kUsage = 2, kBudget = 3 };

struct Options {
    std::string model, cert, pair, method = "kleene", fixtures = QLIFT_FIXTURES_DIR;
    std::string scope = "all", example = "all", mutant;
    unsigned grid = 4, samples = 100;
    std::size_t max_words = 10, max_iters = 1000;
    std::optional<std::size_t> depth;
    std::uint64_t seed = 1, budget = 2000;
    bool json = false, timing = false;
};

// The accumulated report; printed once at the end.
struct Report {
    nlohmann::json doc;
    std::vector<std::string> lines;

    void line(std::string s) { lines.push_back(std::move(s)); }
};

std::pair<std::string, std::string> split_pair(const std::string &pair)
{
    auto bar = pair.find('|');
    if (bar == std::string::npos || pair.find('|', bar + 1) != std::string::npos)
        throw ParseError("--pair expects \"lhs|rhs\", got \"" + pair + "\"");
    return {pair.substr(0, bar), pair.substr(bar + 1)};
}

Term graph_operand(const TransportInstance &inst, const std::string &text, bool dist)
{
    auto it = inst.distributions.find(text);
    if (it != inst.distributions.end()) return it->second;
    Term t = parse_term(text);
    if (t.kind() == Term::Kind::Elem) return dist ? Term::dist({{t, Rational(1)}}) : Term::set({t});
    return t;
}

// Records the functor, monad and generated evaluation maps the result depends on.
void describe_model(const CoalgebraModel &model, Report &rep)
{
    nlohmann::json evals = nlohmann::json::array();
    std::string line = "functor " + model.functor.to_string() + ", monad " + std::string(monad_name(model.monad)) + ", evaluation maps:";
    for (const auto &ev : build_lambda(model.functor)) {
        evals.push_back(ev.to_string());
        line += " " + ev.to_string();
    }
    rep.doc["model"] = {{"functor", model.functor.to_string()}, {"monad", monad_name(model.monad)}, {"evaluation_maps", evals}};
    rep.line(line);
}

int cmd_distance(const Options &o, Report &rep)
{
    if (o.model.empty() || o.pair.empty()) throw ParseError("distance needs --model and --pair");
    auto [ls, rs] = split_pair(o.pair);
    auto j = load_json(o.model);
    rep.doc["config"] = {{"method", o.method}, {"max_words", o.max_words}, {"max_iters", o.max_iters}, {"budget", o.budget}};
    if (o.depth) rep.doc["config"]["depth"] = *o.depth;

    std::string tag;
    Value v = Value::boolean(true);
    if (o.method == "lp" || o.method == "hausdorff") {
        auto inst = TransportInstance::from_json(j.contains("distributions") ? j : [&] {
            auto copy = j;
            copy["distributions"] = nlohmann::json::object();
            return copy;
        }());
        const bool lp = o.method == "lp";
        Term p = graph_operand(inst, ls, lp), q = graph_operand(inst, rs, lp);
        if (lp) {
            LPLifting r = kantorovich_lp(inst.d, p, q);
            v = r.value;
            nlohmann::json pot = nlohmann::json::object();
            for (std::size_t i = 0; i < inst.d.size(); ++i) pot[inst.d.carrier().name(i)] = format_rational(r.potential[i]);
            rep.doc["potential"] = pot;
            std::string line = "potential:";
            for (std::size_t i = 0; i < inst.d.size(); ++i) line += " " + inst.d.carrier().name(i) + "=" + format_rational(r.potential[i]);
            rep.line(line);
        } else {
            v = hausdorff_directed(inst.d, p, q);
        }
        tag = "exact";
    } else {
        CoalgebraModel model = CoalgebraModel::from_json(j);
        Term p = model.parse_state(ls), q = model.parse_state(rs);
        describe_model(model, rep);
        if (o.method == "kleene") {
            Determinization det(model, SplitRule::PriorityLeft, o.budget);
            if (o.depth) {
                v = kleene_iterate(det, p, q, *o.depth);
                tag = "lower bound";
            } else {
                KleeneResult k = kleene_gfp(det, det.reachable({p, q}), o.max_iters);
                v = k.at(p, q);
                tag = k.converged ? "exact" : "lower bound";
                rep.doc["iterations"] = k.iterations;
                rep.doc["carrier_size"] = k.carrier.size();
                rep.line("iterations: " + std::to_string(k.iterations) + " over " + std::to_string(k.carrier.size()) + " states" +
                         (k.converged ? "" : " (not stabilized)"));
            }
        } else if (o.method == "trace") {
            v = trace_lower_bound(model, p, q, o.max_words);
            tag = "lower bound";
        } else {
            throw ParseError("unknown method '" + o.method + "'");
        }
    }
    rep.doc["pair"] = {ls, rs};
    rep.doc["value"] = v.to_string();
    rep.doc["soundness"] = tag;
    rep.line("distance(" + ls + ", " + rs + ") = " + v.to_string() + " [" + tag + "]");
    return kOk;
}

int cmd_certify(const Options &o, Report &rep)
{
    if (o.model.empty() || o.cert.empty()) throw ParseError("certify needs --model and --cert");
    CoalgebraModel model = CoalgebraModel::from_json(load_json(o.model));
    Certificate cert = Certificate::from_json(load_json(o.cert), model);
    describe_model(model, rep);
    Determinization det(model);
    Verdict v = certify(det, cert);
    nlohmann::json checks = nlohmann::json::array();
    for (const auto &c : v.checks) {
        checks.push_back({{"lhs", c.lhs.to_string()}, {"rhs", c.rhs.to_string()}, {"claimed", c.claimed.to_string()}, {"bound", c.bound.to_string()}, {"ok", c.ok}});
        rep.line(std::string(c.ok ? "ok   " : "FAIL ") + "(" + c.lhs.to_string() + ", " + c.rhs.to_string() + ") claimed " + c.claimed.to_string() +
                 ", one step gives " + c.bound.to_string());
    }
    rep.doc["checks"] = checks;
    rep.doc["accepted"] = v.accepted;
    if (v.accepted) {
        rep.line("accepted [upper bound: each entry bounds the behavioural distance from above]");
        return kOk;
    }
    rep.doc["reason"] = v.reason;
    if (v.pair) rep.doc["pair"] = {v.pair->first.to_string(), v.pair->second.to_string()};
    rep.line("rejected: " + v.reason);
    return kRejected;
}

int cmd_laws(const Options &o, Report &rep)
{
    SplitRule split = SplitRule::PriorityLeft;
    if (o.mutant == "always-left") split = SplitRule::AlwaysLeft;
    else if (!o.mutant.empty()) throw ParseError("unknown mutant '" + o.mutant + "'");
    LawOptions opt{o.seed, o.grid, o.samples};
    rep.doc["config"] = {{"scope", o.scope}, {"grid", o.grid}, {"seed", o.seed}, {"samples", o.samples}};
    if (!o.mutant.empty()) rep.doc["config"]["mutant"] = o.mutant;
    auto results = run_laws(o.scope, opt, split);
    nlohmann::json rows = nlohmann::json::array();
    bool all = true;
    for (const auto &r : results) {
        all = all && r.passed;
        nlohmann::json row = {{"suite", r.suite}, {"law", r.name}, {"passed", r.passed}, {"checked", r.checked}};
        std::string line = std::string(r.passed ? "PASS " : "FAIL ") + r.suite + ": " + r.name + " (" + std::to_string(r.checked) + " cases)";
        if (!r.passed) {
            row["counterexample"] = r.counterexample;
            line += "\n     counterexample: " + r.counterexample;
        }
        rows.push_back(row);
        rep.line(line);
    }
    rep.doc["laws"] = rows;
    rep.doc["passed"] = all;
    return all ? kOk : kRejected;
}

int cmd_repro(const Options &o, Report &rep)
{
    std::vector<std::string> which;
    if (o.example == "all") which = repro_examples();
    else which = {o.example};
    nlohmann::json out = nlohmann::json::array();
    bool all = true;
    for (const auto &ex : which) {
        ReproReport r = run_repro(ex, o.fixtures);
        all = all && r.ok();
        out.push_back(r.to_json());
        rep.line("== " + ex);
        for (const auto &row : r.rows)
            rep.line(std::string(row.ok ? "  ok   " : "  MISS ") + row.quantity + ": " + row.computed + " (expected " + row.expected + ")");
    }
    rep.doc["examples"] = out;
    rep.doc["passed"] = all;
    return all ? kOk : kRejected;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"qlift: quantale-valued behavioural distances and up-to certificates"};
    app.require_subcommand(1);
    Options o;
    app.add_flag("--json", o.json, "Print a machine-readable report");
    app.add_flag("--timing", o.timing, "Include wall-clock time in the report");

    auto *distance = app.add_subcommand("distance", "Compute a distance between two states");
    distance->add_option("--model", o.model, "Model or V-graph JSON file")->required();
    distance->add_option("--pair", o.pair, "\"lhs|rhs\"")->required();
    distance->add_option("--method", o.method, "kleene, trace, lp or hausdorff")->check(CLI::IsMember({"kleene", "trace", "lp", "hausdorff"}));
    distance->add_option("--max-words", o.max_words, "trace: words of length below this");
    distance->add_option("--max-iters", o.max_iters, "kleene: iteration limit");
    distance->add_option("--depth", o.depth, "kleene: stop at this iterate");
    distance->add_option("--budget", o.budget, "kleene: most determinized states to explore");

    auto *cert = app.add_subcommand("certify", "Check an up-to certificate");
    cert->add_option("--model", o.model)->required();
    cert->add_option("--cert", o.cert)->required();

    auto *laws = app.add_subcommand("laws", "Run the law suites");
    laws->add_option("scope", o.scope, "quantale, galois, polyfunctor, monadlift, distlaw, behaviour or all");
    laws->add_option("--grid", o.grid, "Grid resolution for real-valued predicates");
    laws->add_option("--seed", o.seed, "Seed for sampled instances");
    laws->add_option("--samples", o.samples, "Sampled instances per law");
    laws->add_option("--mutant", o.mutant, "Inject a faulty split rule: always-left");

    auto *repro = app.add_subcommand("repro", "Recompute the bundled worked examples");
    repro->add_option("example", o.example, "transport, pp, pd, dp, dd, probchain, exceptions or all");
    repro->add_option("--fixtures", o.fixtures, "Fixtures directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    Report rep;
    std::string echo = "qlift";
    for (int i = 1; i < argc; ++i) echo += std::string(" ") + argv[i];
    rep.doc["command"] = echo;

    const auto start = std::chrono::steady_clock::now();
    int code = kOk;
    try {
        if (*distance) code = cmd_distance(o, rep);
        else if (*cert) code = cmd_certify(o, rep);
        else if (*laws) code = cmd_laws(o, rep);
        else code = cmd_repro(o, rep);
    } catch (const BudgetExceeded &e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kBudget;
    } catch (const CertificateError &e) {
        std::cerr << "rejected: " << e.what() << "\n";
        return kRejected;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.timing) rep.doc["seconds"] = secs;

    if (o.json) {
        std::cout << rep.doc.dump(2) << "\n";
    } else {
        std::cout << echo << "\n";
        for (const auto &l : rep.lines) std::cout << l << "\n";
        if (o.timing) std::cout << "time: " << secs << " s\n";
    }
    return code;
}
