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

#include "qlift/quantale.hpp"

#include "qlift/errors.hpp"

#include <algorithm>
#include <cctype>

namespace qlift {

Rational parse_rational(std::string_view text)
{
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }
    if (s.empty()) throw ParseError("empty rational");

    auto all_digits = [](std::string_view v) {
        return !v.empty() && std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };

    bool negative = false;
    std::string_view body = s;
    if (body.front() == '-' || body.front() == '+') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    Rational r;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash), den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw ParseError("malformed rational '" + s + "'");
        mpz_class n(std::string(num), 10), d(std::string(den), 10);
        if (d == 0) throw ParseError("zero denominator in '" + s + "'");
        r = Rational(n, d);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        auto whole = body.substr(0, dot), frac = body.substr(dot + 1);
        if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) throw ParseError("malformed decimal '" + s + "'");
        mpz_class n(std::string(whole) + std::string(frac), 10);
        mpz_class d;
        mpz_ui_pow_ui(d.get_mpz_t(), 10, frac.size());
        r = Rational(n, d);
    } else {
        if (!all_digits(body)) throw ParseError("malformed rational '" + s + "'");
        r = Rational(mpz_class(std::string(body), 10));
    }
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

std::string format_rational(const Rational &r)
{
    Rational c = r;
    c.canonicalize();
    return c.get_str();
}

std::string_view quantale_name(QuantaleId id)
{
    switch (id) {
    case QuantaleId::Boolean: return "boolean";
    case QuantaleId::UnitOplus: return "unit-oplus";
    case QuantaleId::ExtPlus: return "ext-plus";
    }
    return "?";
}

QuantaleId parse_quantale(std::string_view name)
{
    if (name == "boolean") return QuantaleId::Boolean;
    if (name == "unit-oplus") return QuantaleId::UnitOplus;
    if (name == "ext-plus") return QuantaleId::ExtPlus;
    throw ParseError("unknown quantale '" + std::string(name) + "'");
}

Value Value::boolean(bool b) { return Value(QuantaleId::Boolean, false, Rational(b ? 1 : 0)); }

Value Value::unit_interval(const Rational &r)
{
    if (r < 0 || r > 1) throw QuantaleTypeError("value " + format_rational(r) + " outside [0,1]");
    return Value(QuantaleId::UnitOplus, false, r);
}

Value Value::extended(const Rational &r)
{
    if (r < 0) throw QuantaleTypeError("negative value " + format_rational(r) + " in [0,inf]");
    return Value(QuantaleId::ExtPlus, false, r);
}

Value Value::infinity() { return Value(QuantaleId::ExtPlus, true, Rational(0)); }

bool Value::as_bool() const
{
    if (q_ != QuantaleId::Boolean) throw QuantaleTypeError("not a boolean value");
    return num_ != 0;
}

const Rational &Value::numeric() const
{
    if (q_ == QuantaleId::Boolean) throw QuantaleTypeError("boolean value has no numeric view");
    if (inf_) throw QuantaleTypeError("infinite value has no rational view");
    return num_;
}

std::string Value::to_string() const
{
    if (q_ == QuantaleId::Boolean) return num_ != 0 ? "true" : "false";
    if (inf_) return "inf";
    return format_rational(num_);
}

int compare(const Value &a, const Value &b)
{
    if (a.q_ != b.q_) return a.q_ < b.q_ ? -1 : 1;
    if (a.inf_ != b.inf_) return a.inf_ ? 1 : -1;
    return cmp(a.num_, b.num_) < 0 ? -1 : (cmp(a.num_, b.num_) > 0 ? 1 : 0);
}

int numeric_compare(const Value &a, const Value &b)
{
    if (a.quantale() != b.quantale()) throw QuantaleTypeError("mixed-quantale comparison");
    if (a.quantale() == QuantaleId::Boolean) throw QuantaleTypeError("boolean values have no numeric order");
    return compare(a, b);
}

void Quantale::check(const Value &v) const
{
    if (v.quantale() != id_) {
        throw QuantaleTypeError("value of quantale " + std::string(quantale_name(v.quantale())) +
                                " used in " + std::string(quantale_name(id_)));
    }
}

Value Quantale::top() const
{
    switch (id_) {
    case QuantaleId::Boolean: return Value::boolean(true);
    case QuantaleId::UnitOplus: return Value::unit_interval(0);
    case QuantaleId::ExtPlus: return Value::extended(0);
    }
    return Value::boolean(true);
}

Value Quantale::bottom() const
{
    switch (id_) {
    case QuantaleId::Boolean: return Value::boolean(false);
    case QuantaleId::UnitOplus: return Value::unit_interval(1);
    case QuantaleId::ExtPlus: return Value::infinity();
    }
    return Value::boolean(false);
}

Value Quantale::unit() const { return top(); }

Value Quantale::tensor(const Value &a, const Value &b) const
{
    check(a);
    check(b);
    switch (id_) {
    case QuantaleId::Boolean: return Value::boolean(a.as_bool() && b.as_bool());
    case QuantaleId::UnitOplus: {
        Rational s = a.numeric() + b.numeric();
        return Value::unit_interval(s > 1 ? Rational(1) : s);
    }
    case QuantaleId::ExtPlus:
        if (a.is_infinite() || b.is_infinite()) return Value::infinity();
        return Value::extended(a.numeric() + b.numeric());
    }
    return a;
}

Value Quantale::residuate(const Value &a, const Value &b) const
{
    check(a);
    check(b);
    switch (id_) {
    case QuantaleId::Boolean: return Value::boolean(!a.as_bool() || b.as_bool());
    case QuantaleId::UnitOplus: {
        Rational d = b.numeric() - a.numeric();
        return Value::unit_interval(d < 0 ? Rational(0) : d);
    }
    case QuantaleId::ExtPlus: {
        if (a.is_infinite()) return Value::extended(0);
        if (b.is_infinite()) return Value::infinity();
        Rational d = b.numeric() - a.numeric();
        return Value::extended(d < 0 ? Rational(0) : d);
    }
    }
    return a;
}

bool Quantale::leq(const Value &a, const Value &b) const
{
    check(a);
    check(b);
    if (id_ == QuantaleId::Boolean) return !a.as_bool() || b.as_bool();
    return compare(a, b) >= 0;
}

Value Quantale::join(const Value &a, const Value &b) const { return leq(a, b) ? b : a; }

Value Quantale::meet(const Value &a, const Value &b) const { return leq(a, b) ? a : b; }

Value Quantale::join(std::span<const Value> xs) const
{
    Value acc = bottom();
    for (const auto &x : xs) acc = join(acc, x);
    return acc;
}

Value Quantale::meet(std::span<const Value> xs) const
{
    Value acc = top();
    for (const auto &x : xs) acc = meet(acc, x);
    return acc;
}

Value Quantale::from_numeric(const Rational &r) const
{
    switch (id_) {
    case QuantaleId::Boolean:
        if (r == 0) return Value::boolean(false);
        if (r == 1) return Value::boolean(true);
        throw QuantaleTypeError("boolean value must be 0 or 1");
    case QuantaleId::UnitOplus: return Value::unit_interval(r);
    case QuantaleId::ExtPlus: return Value::extended(r);
    }
    return top();
}

Value Quantale::scale(const Rational &p, const Value &v) const
{
    check(v);
    if (!is_real()) throw QuantaleTypeError("scaling needs a real-valued quantale");
    if (p < 0) throw QuantaleTypeError("negative scale factor");
    if (v.is_infinite()) return p == 0 ? Value::extended(0) : Value::infinity();
    return from_numeric(p * v.numeric());
}

Value Quantale::sum(std::span<const Value> xs) const
{
    if (!is_real()) throw QuantaleTypeError("sums need a real-valued quantale");
    Rational acc = 0;
    for (const auto &x : xs) {
        check(x);
        if (x.is_infinite()) return Value::infinity();
        acc += x.numeric();
    }
    return from_numeric(acc);
}

nlohmann::json Quantale::to_json(const Value &v) const
{
    check(v);
    if (id_ == QuantaleId::Boolean) return v.as_bool();
    return v.to_string();
}

Value Quantale::from_json(const nlohmann::json &j) const
{
    if (id_ == QuantaleId::Boolean) {
        if (!j.is_boolean()) throw ParseError("expected a boolean value, got " + j.dump());
        return Value::boolean(j.get<bool>());
    }
    if (j.is_string()) return parse(j.get<std::string>());
    if (j.is_number_integer()) return from_numeric(Rational(j.get<long>()));
    throw ParseError("expected a rational string, got " + j.dump());
}

Value Quantale::parse(std::string_view text) const
{
    if (id_ == QuantaleId::Boolean) {
        if (text == "true" || text == "1") return Value::boolean(true);
        if (text == "false" || text == "0") return Value::boolean(false);
        throw ParseError("malformed boolean '" + std::string(text) + "'");
    }
    if (text == "inf") {
        if (id_ != QuantaleId::ExtPlus) throw QuantaleTypeError("inf is only in ext-plus");
        return Value::infinity();
    }
    return from_numeric(parse_rational(text));
}

} // namespace qlift
