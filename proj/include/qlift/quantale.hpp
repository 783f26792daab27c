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

#include <gmpxx.h>

#include <json.hpp>

#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qlift {

using Rational = mpq_class;

// Accepts "p/q", integers and finite decimals such as "0.7".
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational &r);

enum class QuantaleId { Boolean, UnitOplus, ExtPlus };

std::string_view quantale_name(QuantaleId id);
QuantaleId parse_quantale(std::string_view name);

/**
 * An element of one of the three supported quantales.
 *
 * Real-valued quantales store the number itself; their lattice order is the
 * reverse of the numeric order, so numeric 0 is top.
 */
class Value {
public:
    static Value boolean(bool b);
    static Value unit_interval(const Rational &r);
    static Value extended(const Rational &r);
    static Value infinity();

    QuantaleId quantale() const { return q_; }
    bool is_infinite() const { return inf_; }
    bool as_bool() const;
    const Rational &numeric() const;

    std::string to_string() const;

    friend int compare(const Value &a, const Value &b);
    friend bool operator==(const Value &a, const Value &b) { return compare(a, b) == 0; }
    friend bool operator<(const Value &a, const Value &b) { return compare(a, b) < 0; }

private:
    Value(QuantaleId q, bool inf, Rational num) : q_(q), inf_(inf), num_(std::move(num)) { num_.canonicalize(); }

    QuantaleId q_;
    bool inf_;
    Rational num_;
};

inline std::ostream &operator<<(std::ostream &os, const Value &v) { return os << v.to_string(); }

class Quantale {
public:
    explicit Quantale(QuantaleId id) : id_(id) {}

    QuantaleId id() const { return id_; }
    bool is_real() const { return id_ != QuantaleId::Boolean; }

    Value top() const;
    Value bottom() const;
    Value unit() const;

    Value tensor(const Value &a, const Value &b) const;
    // Right adjoint of tensoring with a: tensor(a, u) <= c iff u <= residuate(a, c).
    Value residuate(const Value &a, const Value &b) const;
    bool leq(const Value &a, const Value &b) const;
    Value join(const Value &a, const Value &b) const;
    Value meet(const Value &a, const Value &b) const;
    Value join(std::span<const Value> xs) const;
    Value meet(std::span<const Value> xs) const;

    // Builds a value from a number, rejecting anything outside the carrier.
    Value from_numeric(const Rational &r) const;
    // p * v with 0 * inf = 0; real quantales only.
    Value scale(const Rational &p, const Value &v) const;
    // Plain sum of numeric values; real quantales only, must stay in range.
    Value sum(std::span<const Value> xs) const;

    void check(const Value &v) const;

    nlohmann::json to_json(const Value &v) const;
    Value from_json(const nlohmann::json &j) const;
    Value parse(std::string_view text) const;

    friend bool operator==(const Quantale &a, const Quantale &b) { return a.id_ == b.id_; }

private:
    QuantaleId id_;
};

// Numeric comparison helpers for real quantales; infinity is larger than any number.
int numeric_compare(const Value &a, const Value &b);

} // namespace qlift
