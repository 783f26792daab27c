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

#include "qlift/term.hpp"

#include "qlift/errors.hpp"

#include <algorithm>
#include <cctype>

namespace qlift {

Term Term::elem(std::string name)
{
    Term t;
    t.kind_ = Kind::Elem;
    t.atom_ = std::move(name);
    return t;
}

Term Term::val(Value v)
{
    Term t;
    t.kind_ = Kind::Val;
    t.atom_ = std::move(v);
    return t;
}

Term Term::constant(Atom a)
{
    Term t;
    t.kind_ = Kind::Const;
    t.atom_ = std::move(a);
    return t;
}

Term Term::id(Term child)
{
    Term t;
    t.kind_ = Kind::Id;
    t.children_.push_back(std::move(child));
    return t;
}

Term Term::tuple(std::vector<Term> children)
{
    Term t;
    t.kind_ = Kind::Tuple;
    t.children_ = std::move(children);
    return t;
}

Term Term::inl(Term child)
{
    Term t;
    t.kind_ = Kind::Inl;
    t.children_.push_back(std::move(child));
    return t;
}

Term Term::inr(Term child)
{
    Term t;
    t.kind_ = Kind::Inr;
    t.children_.push_back(std::move(child));
    return t;
}

Term Term::set(std::vector<Term> members)
{
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    Term t;
    t.kind_ = Kind::Set;
    t.children_ = std::move(members);
    return t;
}

Term Term::dist(std::vector<std::pair<Term, Rational>> weighted)
{
    std::sort(weighted.begin(), weighted.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    Term t;
    t.kind_ = Kind::Dist;
    Rational total = 0;
    for (auto &[child, w] : weighted) {
        w.canonicalize();
        if (w < 0) throw PreconditionError("negative probability weight");
        total += w;
        if (w == 0) continue;
        if (!t.children_.empty() && t.children_.back() == child) {
            t.weights_.back() += w;
        } else {
            t.children_.push_back(std::move(child));
            t.weights_.push_back(w);
        }
    }
    if (total > 1) throw PreconditionError("probability weights sum to " + format_rational(total) + " > 1");
    return t;
}

const std::string &Term::name() const
{
    if (kind_ != Kind::Elem) throw ShapeError("term is not an element");
    return std::get<std::string>(atom_);
}

const Value &Term::value() const
{
    if (kind_ != Kind::Val) throw ShapeError("term is not a value");
    return std::get<Value>(atom_);
}

const Term::Atom &Term::atom() const
{
    if (kind_ != Kind::Const) throw ShapeError("term is not a constant");
    return atom_;
}

const Term &Term::child() const
{
    if (children_.size() != 1 || (kind_ != Kind::Id && kind_ != Kind::Inl && kind_ != Kind::Inr))
        throw ShapeError("term has no single child");
    return children_.front();
}

Rational Term::mass() const
{
    if (kind_ != Kind::Dist) throw ShapeError("term is not a distribution");
    Rational total = 0;
    for (const auto &w : weights_) total += w;
    return total;
}

std::string Term::to_string() const
{
    auto atom_text = [&]() -> std::string {
        if (const auto *s = std::get_if<std::string>(&atom_)) return *s;
        return std::get<Value>(atom_).to_string();
    };
    auto joined = [&](char sep) {
        std::string out;
        for (std::size_t i = 0; i < children_.size(); ++i) {
            if (i) out += sep;
            if (kind_ == Kind::Dist) out += format_rational(weights_[i]) + ":";
            out += children_[i].to_string();
        }
        return out;
    };
    switch (kind_) {
    case Kind::Elem:
    case Kind::Val:
    case Kind::Const: return atom_text();
    case Kind::Id: return children_.front().to_string();
    case Kind::Tuple: return "(" + joined(',') + ")";
    case Kind::Inl: return "inl(" + children_.front().to_string() + ")";
    case Kind::Inr: return "inr(" + children_.front().to_string() + ")";
    case Kind::Set: return "{" + joined(',') + "}";
    case Kind::Dist: return "[" + joined(',') + "]";
    }
    return "?";
}

int compare(const Term &a, const Term &b)
{
    if (a.kind_ != b.kind_) return a.kind_ < b.kind_ ? -1 : 1;
    if (a.atom_.index() != b.atom_.index()) return a.atom_.index() < b.atom_.index() ? -1 : 1;
    if (const auto *s = std::get_if<std::string>(&a.atom_)) {
        int c = s->compare(std::get<std::string>(b.atom_));
        if (c != 0) return c < 0 ? -1 : 1;
    } else {
        int c = compare(std::get<Value>(a.atom_), std::get<Value>(b.atom_));
        if (c != 0) return c;
    }
    const std::size_t n = std::min(a.children_.size(), b.children_.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = compare(a.children_[i], b.children_[i]);
        if (c != 0) return c;
        if (i < a.weights_.size() && i < b.weights_.size()) {
            int w = cmp(a.weights_[i], b.weights_[i]);
            if (w != 0) return w < 0 ? -1 : 1;
        }
    }
    if (a.children_.size() != b.children_.size()) return a.children_.size() < b.children_.size() ? -1 : 1;
    return 0;
}

void check_element_name(const std::string &name)
{
    if (name.empty()) throw ParseError("empty element name");
    for (char c : name) {
        if (std::isspace(static_cast<unsigned char>(c)) || std::string_view("{}[](),:|").find(c) != std::string_view::npos)
            throw ParseError("element name '" + name + "' contains a reserved character");
    }
}

namespace {

class TermParser {
public:
    explicit TermParser(std::string_view text) : s_(text) {}

    Term parse_all()
    {
        Term t = parse();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        return t;
    }

private:
    [[noreturn]] void fail(const std::string &why) const
    {
        throw ParseError("cannot parse '" + std::string(s_) + "' at offset " + std::to_string(pos_) + ": " + why);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string token()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) &&
               std::string_view("{}[](),:|").find(s_[pos_]) == std::string_view::npos)
            ++pos_;
        if (start == pos_) fail("expected a name");
        return std::string(s_.substr(start, pos_ - start));
    }

    Term parse()
    {
        if (eat('{')) {
            std::vector<Term> members;
            if (!eat('}')) {
                do members.push_back(parse());
                while (eat(','));
                if (!eat('}')) fail("expected '}'");
            }
            return Term::set(std::move(members));
        }
        if (eat('[')) {
            std::vector<std::pair<Term, Rational>> weighted;
            if (!eat(']')) {
                do {
                    Rational w = parse_rational(token());
                    if (!eat(':')) fail("expected ':'");
                    weighted.emplace_back(parse(), w);
                } while (eat(','));
                if (!eat(']')) fail("expected ']'");
            }
            return Term::dist(std::move(weighted));
        }
        return Term::elem(token());
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

Term parse_term(std::string_view text) { return TermParser(text).parse_all(); }

} // namespace qlift
