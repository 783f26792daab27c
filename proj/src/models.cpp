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

#include "qlift/models.hpp"

#include "qlift/laws.hpp"

namespace qlift {

namespace {

Term members(std::initializer_list<std::string> names)
{
    std::vector<Term> out;
    for (const auto &n : names) out.push_back(Term::elem(n));
    return Term::set(std::move(out));
}

std::string idx(const std::string &chain, unsigned i) { return chain + std::to_string(i); }

} // namespace

CoalgebraModel exception_model(unsigned n)
{
    CoalgebraModel m;
    m.quantale = Quantale(QuantaleId::UnitOplus);
    m.functor = exception_functor({"a", "b"});
    m.monad = MonadKind::Powerset;

    std::vector<std::string> names;
    for (const char *c : {"x", "y", "z"}) {
        for (unsigned i = 0; i <= n; ++i) names.push_back(idx(c, i));
    }
    m.states = Carrier(names);

    auto branch = [](Term a, Term b) { return Term::inr(Term::tuple({Term::id(std::move(a)), Term::id(std::move(b))})); };
    const Rational payoff[3] = {Rational(1, 4), Rational(1, 3), Rational(1, 2)};
    const std::string chains[3] = {"x", "y", "z"};
    for (int c = 0; c < 3; ++c) {
        const auto &ch = chains[c];
        for (unsigned i = 1; i < n; ++i) {
            Term next = members({idx(ch, i + 1)});
            m.transitions.emplace(idx(ch, i), branch(next, next));
        }
        m.transitions.emplace(idx(ch, n), Term::inl(Term::constant(Value::unit_interval(payoff[c]))));
    }
    Term stay_x = members({"x0"}), enter_x = members({"x0", "x1"});
    Term stay_y = members({"y0"}), enter_y = members({"y0", "y1"});
    Term enter_z = members({"z0", "z1"});
    if (n > 0) {
        m.transitions.emplace("x0", branch(enter_x, stay_x));
        m.transitions.emplace("y0", branch(stay_y, enter_y));
        m.transitions.emplace("z0", branch(enter_z, enter_z));
    }
    m.validate();
    return m;
}

Certificate exception_certificate(const CoalgebraModel &model, unsigned n)
{
    Certificate c;
    c.quantale = model.quantale;
    c.monad = model.monad;
    auto q = [&](const Rational &r) { return Value::unit_interval(r); };
    c.entries.emplace(std::make_pair(members({"x0", "y0"}), members({"z0"})), q(Rational(1, 4)));
    for (unsigned i = 1; i <= n; ++i) {
        c.entries.emplace(std::make_pair(members({idx("x", i)}), members({idx("z", i)})), q(Rational(1, 4)));
        c.entries.emplace(std::make_pair(members({idx("y", i)}), members({idx("z", i)})), q(Rational(1, 6)));
    }
    if (n == 0) return c;
    auto part = [](Term l, Term r) { return WitnessPart{1, std::move(l), std::move(r)}; };
    Term base_l = members({"x0", "y0"}), base_r = members({"z0"});
    c.witnesses.push_back({members({"x0", "x1", "y0"}), members({"z0", "z1"}),
                           {part(base_l, base_r), part(members({"x1"}), members({"z1"}))}});
    c.witnesses.push_back({members({"x0", "y0", "y1"}), members({"z0", "z1"}),
                           {part(base_l, base_r), part(members({"y1"}), members({"z1"}))}});
    return c;
}

CoalgebraModel probchain_model()
{
    CoalgebraModel m;
    m.quantale = Quantale(QuantaleId::UnitOplus);
    m.functor = machine_functor({"a"});
    m.monad = MonadKind::Subdist;
    m.states = Carrier({"x", "x'", "y"});
    auto step = [](Rational payoff, Term next) {
        return Term::tuple({Term::constant(Value::unit_interval(payoff)), Term::tuple({Term::id(std::move(next))})});
    };
    auto dirac = [](const std::string &s) { return Term::dist({{Term::elem(s), Rational(1)}}); };
    m.transitions.emplace("x", step(Rational(1, 2), Term::dist({{Term::elem("x"), Rational(1, 2)}, {Term::elem("x'"), Rational(1, 2)}})));
    m.transitions.emplace("x'", step(Rational(1), dirac("x'")));
    m.transitions.emplace("y", step(Rational(1, 2), dirac("y")));
    m.validate();
    return m;
}

Certificate probchain_certificate(const CoalgebraModel &model)
{
    Certificate c;
    c.quantale = model.quantale;
    c.monad = model.monad;
    auto dirac = [](const std::string &s) { return Term::dist({{Term::elem(s), Rational(1)}}); };
    const Value half = Value::unit_interval(Rational(1, 2));
    Term x = dirac("x"), xp = dirac("x'"), y = dirac("y");
    Term mix = Term::dist({{Term::elem("x"), Rational(1, 2)}, {Term::elem("x'"), Rational(1, 2)}});
    c.entries.emplace(std::make_pair(x, y), half);
    c.entries.emplace(std::make_pair(xp, y), half);
    c.entries.emplace(std::make_pair(y, x), half);
    c.entries.emplace(std::make_pair(y, xp), half);
    c.witnesses.push_back({mix, y, {{Rational(1, 2), x, y}, {Rational(1, 2), xp, y}}});
    c.witnesses.push_back({y, mix, {{Rational(1, 2), y, x}, {Rational(1, 2), y, xp}}});
    return c;
}

} // namespace qlift
