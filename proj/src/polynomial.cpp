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

#include "qadio/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "qadio/error.hpp"

namespace qadio {

bool grlex_before(const MultiIndex &a, const MultiIndex &b) {
    const auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
    const auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
    if (da != db) {
        return da > db;
    }
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(),
                                        a.end());
}

namespace {

std::vector<Term> merge_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term &x, const Term &y) {
        return grlex_before(x.exponents, y.exponents);
    });
    std::vector<Term> merged;
    merged.reserve(terms.size());
    for (auto &t : terms) {
        if (!merged.empty() && merged.back().exponents == t.exponents) {
            merged.back().coefficient += t.coefficient;
        } else {
            merged.push_back(std::move(t));
        }
    }
    std::erase_if(merged, [](const Term &t) { return t.coefficient == 0; });
    return merged;
}

} // namespace

DiophantinePolynomial::DiophantinePolynomial(std::vector<std::string> unknowns,
                                             std::vector<Term> terms)
    : unknowns_(std::move(unknowns)) {
    if (unknowns_.empty()) {
        throw Error(ErrorKind::InvalidArgument,
                    "polynomial must have at least one unknown");
    }
    std::set<std::string> seen(unknowns_.begin(), unknowns_.end());
    if (seen.size() != unknowns_.size()) {
        throw Error(ErrorKind::InvalidArgument, "duplicate unknown name");
    }
    for (const auto &t : terms) {
        if (t.exponents.size() != unknowns_.size()) {
            throw Error(ErrorKind::InvalidArgument,
                        "exponent vector length does not match unknowns");
        }
    }
    terms_ = merge_terms(std::move(terms));
}

std::uint32_t DiophantinePolynomial::degree() const noexcept {
    std::uint32_t deg = 0;
    for (const auto &t : terms_) {
        deg = std::max(deg, std::accumulate(t.exponents.begin(),
                                            t.exponents.end(), 0U));
    }
    return deg;
}

BigInt DiophantinePolynomial::evaluate(std::span<const std::uint32_t> n) const {
    if (n.size() != unknowns_.size()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "evaluate: expected " + std::to_string(unknowns_.size()) +
                        " occupations, got " + std::to_string(n.size()));
    }
    BigInt sum = 0;
    for (const auto &t : terms_) {
        BigInt value = t.coefficient;
        for (std::size_t i = 0; i < n.size() && value != 0; ++i) {
            if (t.exponents[i] != 0) {
                value *= boost::multiprecision::pow(BigInt(n[i]),
                                                    t.exponents[i]);
            }
        }
        sum += value;
    }
    return sum;
}

std::string DiophantinePolynomial::to_string() const {
    std::ostringstream out;
    // Unknowns in the order the text below mentions them.
    std::vector<std::size_t> mentioned;
    bool first = true;
    for (const auto &t : terms_) {
        const bool negative = t.coefficient < 0;
        const BigInt magnitude = negative ? BigInt(-t.coefficient)
                                          : t.coefficient;
        if (first) {
            if (negative) {
                out << '-';
            }
        } else {
            out << (negative ? " - " : " + ");
        }
        first = false;

        std::vector<std::string> factors;
        for (std::size_t i = 0; i < unknowns_.size(); ++i) {
            if (t.exponents[i] == 0) {
                continue;
            }
            factors.push_back(t.exponents[i] == 1
                                  ? unknowns_[i]
                                  : unknowns_[i] + "^" +
                                        std::to_string(t.exponents[i]));
            if (std::find(mentioned.begin(), mentioned.end(), i) ==
                mentioned.end()) {
                mentioned.push_back(i);
            }
        }
        if (factors.empty() || magnitude != 1) {
            out << magnitude;
            if (!factors.empty()) {
                out << '*';
            }
        }
        for (std::size_t f = 0; f < factors.size(); ++f) {
            out << (f ? "*" : "") << factors[f];
        }
    }
    bool in_order = mentioned.size() == unknowns_.size();
    for (std::size_t i = 0; in_order && i < mentioned.size(); ++i) {
        in_order = mentioned[i] == i;
    }
    if (in_order) {
        return out.str();
    }
    // Parsing assigns unknowns in order of first appearance; a leading zero
    // term pins that order (and keeps unknowns the terms no longer mention).
    std::string prefix = "0";
    for (const auto &name : unknowns_) {
        prefix += "*" + name;
    }
    const std::string body = out.str();
    if (body.empty()) {
        return prefix;
    }
    return prefix + (body.front() == '-' ? " - " + body.substr(1)
                                         : " + " + body);
}

DiophantinePolynomial
DiophantinePolynomial::operator+(const DiophantinePolynomial &other) const {
    std::vector<std::string> names = unknowns_;
    std::vector<std::size_t> remap(other.unknowns_.size());
    for (std::size_t j = 0; j < other.unknowns_.size(); ++j) {
        auto it = std::find(names.begin(), names.end(), other.unknowns_[j]);
        remap[j] = static_cast<std::size_t>(it - names.begin());
        if (it == names.end()) {
            names.push_back(other.unknowns_[j]);
        }
    }
    std::vector<Term> terms;
    terms.reserve(terms_.size() + other.terms_.size());
    for (const auto &t : terms_) {
        MultiIndex e = t.exponents;
        e.resize(names.size(), 0);
        terms.push_back({t.coefficient, std::move(e)});
    }
    for (const auto &t : other.terms_) {
        MultiIndex e(names.size(), 0);
        for (std::size_t j = 0; j < t.exponents.size(); ++j) {
            e[remap[j]] = t.exponents[j];
        }
        terms.push_back({t.coefficient, std::move(e)});
    }
    return {std::move(names), std::move(terms)};
}

DiophantinePolynomial canonicalize(const DiophantinePolynomial &p) {
    return {p.unknowns(), p.terms()};
}

SearchResult brute_force_search(const DiophantinePolynomial &p,
                                std::span<const std::uint32_t> upper,
                                std::uint64_t max_points) {
    if (upper.size() != p.num_unknowns()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "search box has wrong number of bounds");
    }
    std::uint64_t points = 1;
    for (auto u : upper) {
        const std::uint64_t side = std::uint64_t{u} + 1;
        if (points > max_points / side) {
            throw Error(ErrorKind::ResourceExhausted,
                        "search box exceeds " + std::to_string(max_points) +
                            " points");
        }
        points *= side;
    }

    SearchResult result;
    MultiIndex n(upper.size(), 0);
    bool have_min = false;
    for (std::uint64_t k = 0; k < points; ++k) {
        const BigInt value = p.evaluate(n);
        const BigInt sq = value * value;
        if (value == 0) {
            result.zeros.push_back(n);
        } else if (!result.min_nonzero_square ||
                   sq < *result.min_nonzero_square) {
            result.min_nonzero_square = sq;
            result.argmin_nonzero = {n};
        } else if (sq == *result.min_nonzero_square) {
            result.argmin_nonzero.push_back(n);
        }
        if (!have_min || sq < result.min_square) {
            have_min = true;
            result.min_square = sq;
            result.argmin = {n};
        } else if (sq == result.min_square) {
            result.argmin.push_back(n);
        }
        for (std::size_t i = 0; i < n.size(); ++i) {
            if (n[i] < upper[i]) {
                ++n[i];
                break;
            }
            n[i] = 0;
        }
    }
    return result;
}

} // namespace qadio
