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

/**
 * @file
 * Integer-coefficient multivariate polynomials in canonical form, with a
 * textual parser/printer, exact evaluation at nonnegative integer points and
 * an exhaustive bounded search used as an independent oracle.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qadio {

using BigInt = boost::multiprecision::cpp_int;

/// Occupation numbers (n_1, ..., n_K); also used as exponent vectors.
using MultiIndex = std::vector<std::uint32_t>;

struct Term {
    BigInt coefficient;
    MultiIndex exponents;

    bool operator==(const Term &) const = default;
};

/// Graded lexicographic order: higher total degree first, ties broken by
/// lexicographically larger exponent vector first.
[[nodiscard]] bool grlex_before(const MultiIndex &a, const MultiIndex &b);

/**
 * Canonical polynomial D(x_1, ..., x_K).
 *
 * Terms are merged, free of zero coefficients and sorted by `grlex_before`.
 * The unknown order is the order the caller supplied (for `parse`, first
 * appearance in the source text); it fixes the mode order downstream.
 */
class DiophantinePolynomial {
  public:
    /// Canonicalizes `terms`. Throws InvalidArgument when `unknowns` is empty,
    /// has duplicates, or an exponent vector has the wrong length.
    DiophantinePolynomial(std::vector<std::string> unknowns,
                          std::vector<Term> terms);

    [[nodiscard]] std::size_t num_unknowns() const noexcept {
        return unknowns_.size();
    }
    [[nodiscard]] const std::vector<std::string> &unknowns() const noexcept {
        return unknowns_;
    }
    [[nodiscard]] const std::vector<Term> &terms() const noexcept {
        return terms_;
    }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] std::uint32_t degree() const noexcept;

    /// Exact D(n). Throws DimensionMismatch if n.size() != K.
    [[nodiscard]] BigInt evaluate(std::span<const std::uint32_t> n) const;

    /// Canonical text in the same grammar `parse` accepts.
    [[nodiscard]] std::string to_string() const;

    /// Sum over the union of both unknown lists (this polynomial's order
    /// first, then new names from `other` in their order).
    [[nodiscard]] DiophantinePolynomial
    operator+(const DiophantinePolynomial &other) const;

    bool operator==(const DiophantinePolynomial &) const = default;

  private:
    std::vector<std::string> unknowns_;
    std::vector<Term> terms_;
};

/// Re-sorts and merges terms; idempotent on canonical input.
[[nodiscard]] DiophantinePolynomial
canonicalize(const DiophantinePolynomial &p);

/**
 * Parse `text` with the grammar
 *
 *     equation := expr [ '=' expr ]
 *     expr     := term { ('+' | '-') term }
 *     term     := unary { '*' unary }
 *     unary    := ('-' | '+') unary | power
 *     power    := primary [ '^' INTEGER ]
 *     primary  := INTEGER | IDENT | '(' expr ')'
 *
 * `a = b` is read as `a - b`. Implicit multiplication (`2x`, `x(y)`) is a
 * syntax error. Throws SyntaxError with the offending byte offset.
 */
[[nodiscard]] DiophantinePolynomial parse(std::string_view text);

struct SearchResult {
    std::vector<MultiIndex> zeros;
    BigInt min_square;
    std::vector<MultiIndex> argmin;
    /// Smallest nonzero D^2 in the box and where it occurs; empty when D
    /// vanishes everywhere in the box.
    std::optional<BigInt> min_nonzero_square;
    std::vector<MultiIndex> argmin_nonzero;
};

inline constexpr std::uint64_t kDefaultSearchCap = 10'000'000;

/**
 * Enumerate every n with 0 <= n_i <= upper[i]. Results are listed in linear
 * order with mode 1 varying fastest. Throws ResourceExhausted when the box
 * holds more than `max_points` points.
 */
[[nodiscard]] SearchResult
brute_force_search(const DiophantinePolynomial &p,
                   std::span<const std::uint32_t> upper,
                   std::uint64_t max_points = kDefaultSearchCap);

} // namespace qadio
