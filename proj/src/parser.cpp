// Copyright 2026 The qadio Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cctype>
#include <map>

#include "qadio/error.hpp"
#include "qadio/polynomial.hpp"

namespace qadio {
namespace {

constexpr std::uint32_t kMaxExponent = 1024;

enum class Tok { Int, Ident, Plus, Minus, Star, Caret, LParen, RParen, Equals, End };

struct Token {
    Tok kind;
    std::string_view text;
    std::size_t pos;
};

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto is_ident_start = [](char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    };
    auto is_ident_char = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    };
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < src.size() &&
                   std::isdigit(static_cast<unsigned char>(src[i]))) {
                ++i;
            }
            if (i < src.size() && (src[i] == '.' || src[i] == 'e' ||
                                   src[i] == 'E')) {
                throw SyntaxError("non-integer literal", start);
            }
            out.push_back({Tok::Int, src.substr(start, i - start), start});
            continue;
        }
        if (c == '.') {
            throw SyntaxError("non-integer literal", start);
        }
        if (is_ident_start(c)) {
            while (i < src.size() && is_ident_char(src[i])) {
                ++i;
            }
            out.push_back({Tok::Ident, src.substr(start, i - start), start});
            continue;
        }
        Tok kind{};
        switch (c) {
        case '+': kind = Tok::Plus; break;
        case '-': kind = Tok::Minus; break;
        case '*': kind = Tok::Star; break;
        case '^': kind = Tok::Caret; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '=': kind = Tok::Equals; break;
        default:
            throw SyntaxError(std::string("unexpected character '") + c + "'",
                              start);
        }
        out.push_back({kind, src.substr(start, 1), start});
        ++i;
    }
    out.push_back({Tok::End, {}, src.size()});
    return out;
}

/// Sparse working representation used while parsing.
using Sparse = std::map<MultiIndex, BigInt>;

Sparse add(Sparse a, const Sparse &b, int sign) {
    for (const auto &[e, c] : b) {
        auto &slot = a[e];
        slot += sign > 0 ? c : BigInt(-c);
        if (slot == 0) {
            a.erase(e);
        }
    }
    return a;
}

Sparse multiply(const Sparse &a, const Sparse &b) {
    Sparse out;
    for (const auto &[ea, ca] : a) {
        for (const auto &[eb, cb] : b) {
            MultiIndex e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = ea[i] + eb[i];
            }
            auto &slot = out[e];
            slot += ca * cb;
            if (slot == 0) {
                out.erase(e);
            }
        }
    }
    return out;
}

class Parser {
  public:
    Parser(std::vector<Token> tokens, std::vector<std::string_view> names)
        : toks_(std::move(tokens)), names_(std::move(names)) {}

    Sparse equation() {
        Sparse lhs = expr();
        if (peek().kind == Tok::Equals) {
            ++cur_;
            Sparse rhs = expr();
            lhs = add(std::move(lhs), rhs, -1);
        }
        if (peek().kind != Tok::End) {
            unexpected();
        }
        return lhs;
    }

  private:
    const Token &peek() const { return toks_[cur_]; }

    [[noreturn]] void unexpected() const {
        const Token &t = peek();
        if (t.kind == Tok::End) {
            throw SyntaxError("unexpected end of input", t.pos);
        }
        if (cur_ > 0 && (t.kind == Tok::Ident || t.kind == Tok::Int ||
                         t.kind == Tok::LParen)) {
            const Tok prev = toks_[cur_ - 1].kind;
            if (prev == Tok::Int || prev == Tok::Ident || prev == Tok::RParen) {
                throw SyntaxError("implicit multiplication is not allowed; "
                                  "use '*'",
                                  t.pos);
            }
        }
        throw SyntaxError("unexpected '" + std::string(t.text) + "'", t.pos);
    }

    Sparse expr() {
        Sparse acc = term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const int sign = peek().kind == Tok::Plus ? 1 : -1;
            ++cur_;
            acc = add(std::move(acc), term(), sign);
        }
        return acc;
    }

    Sparse term() {
        Sparse acc = unary();
        while (peek().kind == Tok::Star) {
            ++cur_;
            acc = multiply(acc, unary());
        }
        return acc;
    }

    Sparse unary() {
        if (peek().kind == Tok::Minus) {
            ++cur_;
            return add(Sparse{}, unary(), -1);
        }
        if (peek().kind == Tok::Plus) {
            ++cur_;
            return unary();
        }
        return power();
    }

    Sparse power() {
        Sparse base = primary();
        if (peek().kind != Tok::Caret) {
            return base;
        }
        ++cur_;
        const Token &t = peek();
        if (t.kind != Tok::Int) {
            throw SyntaxError(
                "exponent must be a nonnegative integer literal", t.pos);
        }
        const BigInt big(std::string(t.text));
        if (big > kMaxExponent) {
            throw SyntaxError("exponent exceeds " +
                                  std::to_string(kMaxExponent),
                              t.pos);
        }
        ++cur_;
        if (peek().kind == Tok::Caret) {
            throw SyntaxError("chained '^' is ambiguous; use parentheses",
                              peek().pos);
        }
        auto k = static_cast<std::uint32_t>(big);
        Sparse result{{MultiIndex(names_.size(), 0), BigInt(1)}};
        Sparse square = base;
        while (k > 0) {
            if (k & 1U) {
                result = multiply(result, square);
            }
            k >>= 1U;
            if (k > 0) {
                square = multiply(square, square);
            }
        }
        return result;
    }

    Sparse primary() {
        const Token &t = peek();
        switch (t.kind) {
        case Tok::Int: {
            ++cur_;
            BigInt value(std::string(t.text));
            Sparse out;
            if (value != 0) {
                out.emplace(MultiIndex(names_.size(), 0), std::move(value));
            }
            return out;
        }
        case Tok::Ident: {
            ++cur_;
            MultiIndex e(names_.size(), 0);
            for (std::size_t i = 0; i < names_.size(); ++i) {
                if (names_[i] == t.text) {
                    e[i] = 1;
                }
            }
            return {{std::move(e), BigInt(1)}};
        }
        case Tok::LParen: {
            ++cur_;
            Sparse inner = expr();
            if (peek().kind != Tok::RParen) {
                if (peek().kind == Tok::End) {
                    throw SyntaxError("missing ')'", peek().pos);
                }
                unexpected();
            }
            ++cur_;
            return inner;
        }
        default:
            unexpected();
        }
    }

    std::vector<Token> toks_;
    std::vector<std::string_view> names_;
    std::size_t cur_ = 0;
};

} // namespace

DiophantinePolynomial parse(std::string_view text) {
    auto tokens = tokenize(text);
    if (tokens.size() == 1) {
        throw SyntaxError("empty input", 0);
    }
    std::vector<std::string_view> names;
    for (const auto &t : tokens) {
        if (t.kind == Tok::Ident &&
            std::find(names.begin(), names.end(), t.text) == names.end()) {
            names.push_back(t.text);
        }
    }
    if (names.empty()) {
        throw SyntaxError("equation has no unknowns", 0);
    }
    Parser parser(std::move(tokens), names);
    Sparse sparse = parser.equation();

    std::vector<std::string> unknowns(names.begin(), names.end());
    std::vector<Term> terms;
    terms.reserve(sparse.size());
    for (auto &[e, c] : sparse) {
        terms.push_back({std::move(c), e});
    }
    return {std::move(unknowns), std::move(terms)};
}

} // namespace qadio
