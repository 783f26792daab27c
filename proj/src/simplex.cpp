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

#include "qlift/simplex.hpp"

#include "qlift/errors.hpp"

#include <sstream>

namespace qlift {

std::size_t LinearProgram::add_variable(std::string name, Rational lower, std::optional<Rational> upper)
{
    if (upper && *upper < lower) throw PreconditionError("variable '" + name + "' has an empty range");
    names_.push_back(std::move(name));
    lower_.push_back(std::move(lower));
    upper_.push_back(std::move(upper));
    return names_.size() - 1;
}

void LinearProgram::add_constraint(Row coeffs, Sense sense, Rational rhs)
{
    for (const auto &[v, c] : coeffs) {
        if (v >= names_.size()) throw PreconditionError("constraint uses an unknown variable");
    }
    constraints_.push_back({std::move(coeffs), sense, std::move(rhs)});
}

void LinearProgram::maximize(Row coeffs, Rational constant)
{
    for (const auto &[v, c] : coeffs) {
        if (v >= names_.size()) throw PreconditionError("objective uses an unknown variable");
    }
    objective_ = std::move(coeffs);
    constant_ = std::move(constant);
}

std::string LinearProgram::dump() const
{
    std::ostringstream out;
    auto row = [&](const Row &r) {
        for (std::size_t i = 0; i < r.size(); ++i)
            out << (i ? " + " : "") << format_rational(r[i].second) << "*" << names_[r[i].first];
    };
    out << "maximize ";
    row(objective_);
    out << " + " << format_rational(constant_) << "\n";
    for (const auto &c : constraints_) {
        out << "  ";
        row(c.coeffs);
        out << (c.sense == Sense::Leq ? " <= " : c.sense == Sense::Geq ? " >= " : " = ") << format_rational(c.rhs) << "\n";
    }
    for (std::size_t i = 0; i < names_.size(); ++i) {
        out << "  " << names_[i] << " >= " << format_rational(lower_[i]);
        if (upper_[i]) out << ", <= " << format_rational(*upper_[i]);
        out << "\n";
    }
    return out.str();
}

namespace {

// Dense tableau over shifted variables y = x - lower >= 0.
struct Tableau {
    std::vector<std::vector<Rational>> a; // m rows, n columns
    std::vector<Rational> b;
    std::vector<std::size_t> basis;
    std::size_t n = 0;

    void pivot(std::size_t r, std::size_t c)
    {
        Rational p = a[r][c];
        for (auto &x : a[r]) x /= p;
        b[r] /= p;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                if (a[r][j] != 0) a[i][j] -= f * a[r][j];
            }
            b[i] -= f * b[r];
        }
        basis[r] = c;
    }

    // Maximizes cost . y over the allowed columns; false when unbounded.
    bool optimize(const std::vector<Rational> &cost, const std::vector<bool> &allowed)
    {
        while (true) {
            std::optional<std::size_t> enter;
            for (std::size_t j = 0; j < n && !enter; ++j) {
                if (!allowed[j]) continue;
                Rational reduced = cost[j];
                for (std::size_t i = 0; i < a.size(); ++i) reduced -= cost[basis[i]] * a[i][j];
                if (reduced > 0) enter = j;
            }
            if (!enter) return true;
            std::optional<std::size_t> leave;
            Rational best;
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i][*enter] <= 0) continue;
                Rational ratio = b[i] / a[i][*enter];
                if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (!leave) return false;
            pivot(*leave, *enter);
        }
    }
};

} // namespace

LinearProgram::Solution LinearProgram::solve() const
{
    const std::size_t nv = names_.size();

    struct StdRow {
        std::vector<Rational> coeffs;
        Sense sense;
        Rational rhs;
    };
    std::vector<StdRow> rows;
    auto shifted = [&](const Row &r, Rational rhs) {
        StdRow s{std::vector<Rational>(nv, 0), Sense::Leq, std::move(rhs)};
        for (const auto &[v, c] : r) {
            s.coeffs[v] += c;
            s.rhs -= c * lower_[v];
        }
        return s;
    };
    for (const auto &c : constraints_) {
        auto s = shifted(c.coeffs, c.rhs);
        s.sense = c.sense;
        rows.push_back(std::move(s));
    }
    for (std::size_t v = 0; v < nv; ++v) {
        if (!upper_[v]) continue;
        StdRow s{std::vector<Rational>(nv, 0), Sense::Leq, *upper_[v] - lower_[v]};
        s.coeffs[v] = 1;
        rows.push_back(std::move(s));
    }
    for (auto &r : rows) {
        if (r.rhs < 0) {
            for (auto &c : r.coeffs) c = -c;
            r.rhs = -r.rhs;
            if (r.sense == Sense::Leq) r.sense = Sense::Geq;
            else if (r.sense == Sense::Geq) r.sense = Sense::Leq;
        }
    }

    // Columns: structural, then one slack/surplus per inequality, then artificials.
    const std::size_t m = rows.size();
    std::size_t n_slack = 0, n_art = 0;
    for (const auto &r : rows) {
        if (r.sense != Sense::Eq) ++n_slack;
        if (r.sense != Sense::Leq) ++n_art;
    }
    Tableau t;
    t.n = nv + n_slack + n_art;
    t.a.assign(m, std::vector<Rational>(t.n, 0));
    t.b.resize(m);
    t.basis.resize(m);
    std::vector<bool> artificial(t.n, false);
    std::size_t slack = nv, art = nv + n_slack;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t v = 0; v < nv; ++v) t.a[i][v] = rows[i].coeffs[v];
        t.b[i] = rows[i].rhs;
        if (rows[i].sense == Sense::Leq) {
            t.a[i][slack] = 1;
            t.basis[i] = slack++;
        } else {
            if (rows[i].sense == Sense::Geq) t.a[i][slack++] = -1;
            t.a[i][art] = 1;
            artificial[art] = true;
            t.basis[i] = art++;
        }
    }

    std::vector<bool> all(t.n, true);
    if (n_art > 0) {
        std::vector<Rational> phase1(t.n, 0);
        for (std::size_t j = 0; j < t.n; ++j) {
            if (artificial[j]) phase1[j] = -1;
        }
        t.optimize(phase1, all);
        Rational infeasibility = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (artificial[t.basis[i]]) infeasibility += t.b[i];
        }
        if (infeasibility != 0) throw LPInfeasible("linear program is infeasible\n" + dump());
        // Drive zero-level artificials out of the basis; drop redundant rows.
        for (std::size_t i = 0; i < t.a.size();) {
            if (!artificial[t.basis[i]]) {
                ++i;
                continue;
            }
            std::optional<std::size_t> col;
            for (std::size_t j = 0; j < t.n && !col; ++j) {
                if (!artificial[j] && t.a[i][j] != 0) col = j;
            }
            if (col) {
                t.pivot(i, *col);
                ++i;
            } else {
                t.a.erase(t.a.begin() + static_cast<long>(i));
                t.b.erase(t.b.begin() + static_cast<long>(i));
                t.basis.erase(t.basis.begin() + static_cast<long>(i));
            }
        }
    }

    std::vector<Rational> cost(t.n, 0);
    for (const auto &[v, c] : objective_) cost[v] += c;
    std::vector<bool> allowed(t.n, true);
    for (std::size_t j = 0; j < t.n; ++j) allowed[j] = !artificial[j];
    if (!t.optimize(cost, allowed)) throw LPUnbounded("linear program is unbounded\n" + dump());

    Solution sol;
    sol.assignment.assign(nv, 0);
    for (std::size_t i = 0; i < t.a.size(); ++i) {
        if (t.basis[i] < nv) sol.assignment[t.basis[i]] = t.b[i];
    }
    sol.optimum = constant_;
    for (std::size_t v = 0; v < nv; ++v) {
        sol.assignment[v] += lower_[v];
    }
    for (const auto &[v, c] : objective_) sol.optimum += c * sol.assignment[v];
    return sol;
}

} // namespace qlift
