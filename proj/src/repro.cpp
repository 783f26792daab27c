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

#include "qlift/repro.hpp"

#include "qlift/composite.hpp"
#include "qlift/errors.hpp"

#include <fstream>

namespace qlift {

bool ReproReport::ok() const
{
    for (const auto &r : rows) {
        if (!r.ok) return false;
    }
    return !rows.empty();
}

nlohmann::json ReproReport::to_json() const
{
    nlohmann::json out = {{"example", example}, {"ok", ok()}, {"rows", nlohmann::json::array()}};
    for (const auto &r : rows)
        out["rows"].push_back({{"quantity", r.quantity}, {"computed", r.computed}, {"expected", r.expected}, {"ok", r.ok}});
    return out;
}

const std::vector<std::string> &repro_examples()
{
    static const std::vector<std::string> names = {"transport", "pp", "pd", "dp", "dd", "probchain", "exceptions"};
    return names;
}

TransportInstance TransportInstance::from_json(const nlohmann::json &j)
{
    TransportInstance inst{VGraph::from_json(j), {}};
    if (!j.contains("distributions") || !j.at("distributions").is_object()) throw ParseError("transport instance needs a distributions object");
    for (const auto &[name, weights] : j.at("distributions").items()) {
        if (!weights.is_object()) throw ParseError("distribution '" + name + "' must map elements to weights");
        std::vector<std::pair<Term, Rational>> w;
        for (const auto &[elem, r] : weights.items()) {
            if (!inst.d.carrier().contains(elem)) throw ParseError("distribution '" + name + "' mentions unknown element '" + elem + "'");
            if (!r.is_string()) throw ParseError("weights are rational strings, got " + r.dump());
            w.emplace_back(Term::elem(elem), parse_rational(r.get<std::string>()));
        }
        inst.distributions.emplace(name, Term::dist(std::move(w)));
    }
    return inst;
}

nlohmann::json load_json(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void exact_row(ReproReport &r, std::string quantity, const Value &v, const Rational &want)
{
    bool ok = !v.is_infinite() && v.numeric() == want;
    r.rows.push_back({std::move(quantity), v.to_string(), format_rational(want), ok});
}

void at_least_row(ReproReport &r, std::string quantity, const Value &v, const Rational &want)
{
    bool ok = v.is_infinite() || v.numeric() >= want;
    r.rows.push_back({std::move(quantity), v.to_string(), ">= " + format_rational(want), ok});
}

void at_most_row(ReproReport &r, std::string quantity, const Value &v, const Rational &want)
{
    bool ok = !v.is_infinite() && v.numeric() <= want;
    r.rows.push_back({std::move(quantity), v.to_string(), "<= " + format_rational(want), ok});
}

void flag_row(ReproReport &r, std::string quantity, bool got)
{
    r.rows.push_back({std::move(quantity), yes_no(got), "yes", got});
}

Term dirac(const std::string &s) { return Term::dist({{Term::elem(s), Rational(1)}}); }

Term set_of(std::vector<std::string> names)
{
    std::vector<Term> out;
    for (auto &n : names) out.push_back(Term::elem(std::move(n)));
    return Term::set(std::move(out));
}

// 1 exactly on the full set {x, y}.
Value full_set_indicator(const Quantale &q, const Term &a)
{
    return q.from_numeric(a == set_of({"x", "y"}) ? 1 : 0);
}

// min(p, 1 - p) for p x + (1 - p) y.
Value balance(const Quantale &q, const Term &mu)
{
    Rational p = 0;
    for (std::size_t i = 0; i < mu.children().size(); ++i) {
        if (mu.children()[i].name() == "x") p += mu.weights()[i];
    }
    Rational rest = 1 - p;
    return q.from_numeric(p < rest ? p : rest);
}

} // namespace

ReproReport repro_transport(const TransportInstance &inst)
{
    ReproReport r{"transport", {}};
    const auto &d = inst.d;
    const Term &p = inst.distributions.at("P"), &q = inst.distributions.at("Q");
    LPLifting lp = kantorovich_lp(d, p, q);
    exact_row(r, "K(d)(P, Q)", lp.value, Rational(21, 10));

    const std::map<std::string, Rational> want = {{"A", 0}, {"B", 3}, {"C", 5}};
    std::string got = "(", expect = "(";
    bool same = true;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto &name = d.carrier().name(i);
        got += (i ? ", " : "") + name + "=" + format_rational(lp.potential[i]);
        expect += (i ? ", " : "") + name + "=" + format_rational(want.at(name));
        same = same && lp.potential[i] == want.at(name);
    }
    r.rows.push_back({"optimal potential", got + ")", expect + ")", same});

    // The stated potential, checked against the raw constraints on its own.
    bool feasible = true;
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = 0; j < d.size(); ++j) {
            const Value &e = d.at(i, j);
            if (e.is_infinite()) continue;
            feasible = feasible && want.at(d.carrier().name(j)) - want.at(d.carrier().name(i)) <= e.numeric();
        }
    }
    flag_row(r, "f(A)=0, f(B)=3, f(C)=5 is feasible", feasible);
    Rational objective = 0;
    for (std::size_t i = 0; i < q.children().size(); ++i) objective += q.weights()[i] * want.at(q.children()[i].name());
    for (std::size_t i = 0; i < p.children().size(); ++i) objective -= p.weights()[i] * want.at(p.children()[i].name());
    exact_row(r, "objective of that f", Value::extended(objective), Rational(21, 10));
    return r;
}

ReproReport repro_compositionality(const std::string &which)
{
    if (which.size() != 2 || (which[0] != 'p' && which[0] != 'd') || (which[1] != 'p' && which[1] != 'd'))
        throw PreconditionError("unknown compositionality example '" + which + "'");
    const Quantale q(QuantaleId::UnitOplus);
    const Carrier xy({"x", "y"});
    const VGraph d = VGraph::discrete(q, xy);
    auto kind = [](char c) { return c == 'p' ? MonadKind::Powerset : MonadKind::Subdist; };
    const MonadKind outer = kind(which[0]), inner = kind(which[1]);
    const Composite f = {Layer::of(outer)}, g = {Layer::of(inner)};

    Term s = set_of({}), t = set_of({});
    Term ix = inner == MonadKind::Powerset ? set_of({"x"}) : dirac("x");
    Term iy = inner == MonadKind::Powerset ? set_of({"y"}) : dirac("y");
    Term ixy = inner == MonadKind::Powerset ? set_of({"x", "y"})
                                            : Term::dist({{Term::elem("x"), Rational(1, 2)}, {Term::elem("y"), Rational(1, 2)}});
    if (outer == MonadKind::Powerset) {
        s = Term::set({ix, iy});
        t = Term::set({ix, ixy, iy});
    } else {
        s = Term::dist({{ix, Rational(1, 2)}, {iy, Rational(1, 2)}});
        t = Term::dist({{ixy, Rational(1)}});
    }

    ReproReport r{which, {}};
    auto rep = check_compositionality(f, composite_lambda(f), g, composite_lambda(g), d, {s, t});
    const Value lhs = rep.lhs.at(0, 1), rhs = rep.rhs.at(0, 1);

    auto witness = [&](const Term &a) { return inner == MonadKind::Powerset ? full_set_indicator(q, a) : balance(q, a); };
    std::vector<Term> ys = {ix, iy, ixy};
    VGraph e = kantorovich_exact(g, composite_lambda(g), d, ys);
    Predicate fw;
    for (const auto &y : ys) fw.push_back(witness(y));
    Value bound = q.residuate(monad_eval(outer, q, s, witness), monad_eval(outer, q, t, witness));

    const std::string pair = " at (" + s.to_string() + ", " + t.to_string() + ")";
    const Rational want = inner == MonadKind::Powerset ? Rational(1) : Rational(1, 2);
    flag_row(r, "witness predicate is non-expansive for the inner lifting", is_nonexpansive(e, fw));
    exact_row(r, "witness lower bound on the lifting of the lifting" + pair, bound, want);
    if (inner == MonadKind::Powerset) exact_row(r, "lifting of the lifting" + pair, lhs, want);
    else at_least_row(r, "lifting of the lifting" + pair, lhs, want);
    if (outer == MonadKind::Subdist && inner == MonadKind::Powerset) at_most_row(r, "lifting of the composite" + pair, rhs, Rational(1, 2));
    else exact_row(r, "lifting of the composite" + pair, rhs, 0);
    flag_row(r, "the two liftings differ", !(lhs == rhs));
    flag_row(r, "lifting of the lifting is below the composite lifting", rep.lhs_below_rhs);
    return r;
}

ReproReport repro_probchain(const CoalgebraModel &model, const Certificate &cert)
{
    ReproReport r{"probchain", {}};
    Determinization det(model);
    Verdict v = certify(det, cert);
    flag_row(r, "certificate accepted", v.accepted);
    const Term x = dirac("x"), y = dirac("y");
    const Value upper = cert.candidate(y, x);
    const Value lower = trace_lower_bound(model, y, x, 10);
    exact_row(r, "certified upper bound at (1y, 1x)", upper, Rational(1, 2));
    exact_row(r, "trace lower bound at (1y, 1x), words below length 10", lower, Rational(511, 1024));
    // Numerically the trace value sits below the certified one.
    const Rational width = upper.numeric() - lower.numeric();
    r.rows.push_back({"bracket width at (1y, 1x)", format_rational(width), "<= 1/1024", width >= 0 && width <= Rational(1, 1024)});
    exact_row(r, "trace lower bound at (1x, 1y), words below length 10", trace_lower_bound(model, x, y, 10), 0);
    return r;
}

ReproReport repro_exceptions(const CoalgebraModel &model, const Certificate &cert, unsigned n)
{
    ReproReport r{"exceptions", {}};
    Determinization det(model);
    const Term p = model.parse_state("{x0,y0}"), q = model.parse_state("{z0}");
    std::vector<Term> seeds = {p, q};
    for (unsigned i = 1; i <= n; ++i) {
        for (const char *c : {"x", "y", "z"}) seeds.push_back(model.parse_state(std::string("{") + c + std::to_string(i) + "}"));
    }
    KleeneResult k = kleene_gfp(det, det.reachable(seeds));
    flag_row(r, "Kleene iteration stabilizes on " + std::to_string(k.carrier.size()) + " states", k.converged);
    exact_row(r, "behavioural distance at ({x0,y0}, {z0})", k.at(p, q), Rational(1, 4));
    for (unsigned i = 1; i <= n; ++i) {
        const std::string si = std::to_string(i);
        const Term xi = model.parse_state("{x" + si + "}"), yi = model.parse_state("{y" + si + "}"), zi = model.parse_state("{z" + si + "}");
        exact_row(r, "behavioural distance at ({x" + si + "}, {z" + si + "})", k.at(xi, zi), Rational(1, 4));
        exact_row(r, "behavioural distance at ({y" + si + "}, {z" + si + "})", k.at(yi, zi), Rational(1, 6));
    }
    Verdict v = certify(det, cert);
    flag_row(r, "certificate accepted", v.accepted);
    exact_row(r, "trace lower bound at ({x0,y0}, {z0}), words below length " + std::to_string(n + 2), trace_lower_bound(model, p, q, n + 2),
              Rational(1, 4));
    return r;
}

ReproReport run_repro(const std::string &example, const std::filesystem::path &fixtures)
{
    if (example == "transport") return repro_transport(TransportInstance::from_json(load_json(fixtures / "transport.json")));
    if (example == "pp" || example == "pd" || example == "dp" || example == "dd") return repro_compositionality(example);
    if (example == "probchain") {
        auto model = CoalgebraModel::from_json(load_json(fixtures / "probchain.json"));
        return repro_probchain(model, Certificate::from_json(load_json(fixtures / "probchain_cert.json"), model));
    }
    if (example == "exceptions") {
        auto model = CoalgebraModel::from_json(load_json(fixtures / "exceptions.json"));
        return repro_exceptions(model, Certificate::from_json(load_json(fixtures / "exceptions_cert.json"), model), 3);
    }
    throw PreconditionError("unknown example '" + example + "'");
}

} // namespace qlift
