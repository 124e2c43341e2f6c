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

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "qadio/error.hpp"
#include "qadio/fock.hpp"

using namespace qadio;
using Catch::Approx;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

QuantumState random_state(const TruncatedFockSpace &space,
                          std::mt19937_64 &rng) {
    QuantumState psi(space, oracle::random_vector(space.dim(), rng));
    psi.normalize();
    return psi;
}

CoherentState coherent(double alpha, std::uint32_t m, double eps = 1e-2) {
    return coherent_state({{Complex(alpha, 0.0)}, eps},
                          TruncatedFockSpace({m}));
}

} // namespace

TEST_CASE("Linear and multi-index maps are inverse", "[fock]") {
    const TruncatedFockSpace space({3, 0, 4, 2});
    REQUIRE(space.dim() == 4 * 1 * 5 * 3);
    CHECK(space.stride(0) == 1);
    CHECK(space.stride(1) == 4);
    CHECK(space.stride(2) == 4);
    CHECK(space.stride(3) == 20);
    for (std::size_t i = 0; i < space.dim(); ++i) {
        const auto n = space.multi_index(i);
        CHECK(space.linear_index(n) == i);
        for (std::size_t mode = 0; mode < space.num_modes(); ++mode) {
            CHECK(space.occupation(i, mode) == n[mode]);
            CHECK(n[mode] <= space.cutoff(mode));
        }
    }
    const std::uint32_t n[] = {2, 0, 3, 1};
    CHECK(space.linear_index(n) == 2 + 4 * 3 + 20 * 1);
    const std::uint32_t out_of_box[] = {4, 0, 0, 0};
    CHECK_THROWS_AS(space.linear_index(out_of_box), Error);
    CHECK_THROWS_AS(TruncatedFockSpace({}), Error);
}

TEST_CASE("State basics", "[fock]") {
    const TruncatedFockSpace space({2, 2});
    const std::uint32_t n[] = {1, 2};
    auto psi = QuantumState::basis(space, n);
    CHECK(psi.probability(n) == 1.0);
    CHECK(psi.norm() == 1.0);
    psi.amplitudes()[0] = Complex(0.0, 1.0);
    psi.normalize();
    CHECK_THAT(psi.norm(), WithinAbs(1.0, 1e-12));
    CHECK(psi.is_finite());
    psi.amplitudes()[3] = Complex(std::nan(""), 0.0);
    CHECK_FALSE(psi.is_finite());
    QuantumState zero(space);
    CHECK_THROWS_AS(zero.normalize(), Error);
    CHECK_THROWS_AS(QuantumState(space, std::vector<Complex>(3)), Error);
}

TEST_CASE("Truncation from the Poisson tail", "[fock]") {
    // Poisson(4) masses from direct summation: m=8 leaves a deficit of
    // 0.01074 > 1e-2, m=9 leaves 0.00407.
    const long double s8 = oracle::poisson_mass(4.0L, 8);
    const long double s9 = oracle::poisson_mass(4.0L, 9);
    CHECK_THAT(static_cast<double>(1.0L - std::sqrt(s8)),
               WithinAbs(0.0107394, 1e-6));
    CHECK_THAT(static_cast<double>(1.0L - std::sqrt(s9)),
               WithinAbs(0.0040744, 1e-6));
    CHECK_THAT(truncated_coherent_norm_squared(Complex(2.0, 0.0), 9),
               WithinRel(static_cast<double>(s9), 1e-13));
    CHECK_THAT(truncated_coherent_norm_squared(Complex(0.0, 2.0), 8),
               WithinRel(static_cast<double>(s8), 1e-13));

    CHECK(oracle::scan_truncation(4.0L, 1e-2L) == 9);
    CHECK(min_truncation(Complex(2.0, 0.0), 1e-2) == 9);
    CHECK(oracle::scan_truncation(4.0L, 1e-3L) == 11);
    CHECK(min_truncation(Complex(2.0, 0.0), 1e-3) == 11);
    for (const double eps : {0.5, 1e-2, 1e-6}) {
        CHECK(min_truncation(Complex(0.0, 0.0), eps) == 0);
    }
    CHECK_THROWS_AS(min_truncation(Complex(2.0, 0.0), 0.0), Error);
    CHECK_THROWS_AS(min_truncation(Complex(2.0, 0.0), 1.0), Error);
}

TEST_CASE("Truncation agrees with a linear scan and is monotone",
          "[fock][property]") {
    std::uint32_t previous_alpha = 0;
    for (double alpha = 0.0; alpha <= 6.0; alpha += 0.25) {
        std::uint32_t previous_eps = 0;
        for (const double eps : {0.3, 1e-1, 1e-2, 1e-3, 1e-4, 1e-6, 1e-8}) {
            const auto m = min_truncation(Complex(alpha, 0.0), eps);
            CHECK(m == oracle::scan_truncation(alpha * alpha, eps));
            CHECK(m >= previous_eps);
            previous_eps = m;
        }
        const auto m = min_truncation(Complex(0.0, alpha), 1e-3);
        CHECK(m >= previous_alpha);
        previous_alpha = m;
    }
}

TEST_CASE("Coherent state amplitudes", "[fock]") {
    const auto cs = coherent(2.0, 9);
    const long double s9 = oracle::poisson_mass(4.0L, 9);
    CHECK_THAT(cs.state.norm(), WithinAbs(1.0, 1e-14));
    CHECK_THAT(cs.norm_deficit,
               WithinAbs(static_cast<double>(1.0L - std::sqrt(s9)), 1e-14));
    // e^-4 / 0.99187
    const std::uint32_t zero[] = {0};
    const double p0 = static_cast<double>(oracle::poisson(4.0L, 0) / s9);
    CHECK_THAT(p0, WithinAbs(0.01846, 1e-5));
    CHECK_THAT(cs.state.probability(zero), WithinRel(p0, 1e-12));

    long double mean = 0.0L;
    for (unsigned n = 0; n <= 9; ++n) {
        mean += n * oracle::poisson(4.0L, n) / s9;
    }
    CHECK_THAT(static_cast<double>(mean), WithinAbs(3.94664, 1e-5));
    double n_expect = 0.0;
    for (std::uint32_t n = 0; n <= 9; ++n) {
        const std::uint32_t idx[] = {n};
        n_expect += n * cs.state.probability(idx);
        CHECK(cs.state.amplitude(idx).real() > 0.0);
        CHECK(cs.state.amplitude(idx).imag() == 0.0);
    }
    CHECK_THAT(n_expect, WithinRel(static_cast<double>(mean), 1e-12));
}

TEST_CASE("Coherent product state", "[fock]") {
    SECTION("vacuum for zero amplitudes") {
        const auto cs = coherent_state({{Complex{}, Complex{}}, 1e-2},
                                       TruncatedFockSpace({3, 5}));
        const std::uint32_t vac[] = {0, 0};
        CHECK(cs.state.amplitude(vac) == Complex(1.0, 0.0));
        CHECK(cs.norm_deficit == 0.0);
    }
    SECTION("factorizes over modes and carries the phase of alpha") {
        const Complex a(1.0, 0.5);
        const Complex b(-0.7, 0.0);
        const TruncatedFockSpace space({9, 8});
        const auto cs = coherent_state({{a, b}, 1e-2}, space);
        const double la = std::norm(a);
        const double lb = std::norm(b);
        const double norm = std::sqrt(
            static_cast<double>(oracle::poisson_mass(la, 9) *
                                oracle::poisson_mass(lb, 8)));
        for (std::size_t idx = 0; idx < space.dim(); ++idx) {
            const auto n = space.multi_index(idx);
            double fact = 1.0;
            Complex num(1.0, 0.0);
            for (std::uint32_t j = 1; j <= n[0]; ++j) {
                num *= a;
                fact *= j;
            }
            Complex num_b(1.0, 0.0);
            double fact_b = 1.0;
            for (std::uint32_t j = 1; j <= n[1]; ++j) {
                num_b *= b;
                fact_b *= j;
            }
            const Complex expected = std::exp(-(la + lb) / 2.0) * num * num_b /
                                     std::sqrt(fact * fact_b) / norm;
            CHECK(std::abs(cs.state.amplitudes()[idx] - expected) < 1e-14);
        }
    }
    SECTION("cutoff below the minimum is rejected") {
        CHECK_THROWS_AS(coherent(2.0, 8), Error);
        CHECK_NOTHROW(coherent(2.0, 8, 0.02));
    }
    SECTION("large cutoffs stay finite") {
        const auto cs = coherent(20.0, 700, 1e-6);
        CHECK(cs.state.is_finite());
        CHECK_THAT(cs.state.norm(), WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("Growth embeds amplitudes", "[fock]") {
    std::mt19937_64 rng(3);
    const TruncatedFockSpace space({4, 3, 2});
    const auto psi = random_state(space, rng);

    SECTION("zero increment is the identity") {
        const std::uint32_t zero[] = {0, 0, 0};
        const auto same = grow(psi, zero);
        CHECK(same.space() == space);
        CHECK(std::equal(same.amplitudes().begin(), same.amplitudes().end(),
                         psi.amplitudes().begin()));
    }
    SECTION("amplitudes keep their occupation labels; new ones are zero") {
        const std::uint32_t delta[] = {2, 0, 1};
        const auto big = grow(psi, delta);
        CHECK(big.space().cutoffs() == std::vector<std::uint32_t>{6, 3, 3});
        CHECK(big.norm_squared() == psi.norm_squared());
        for (std::size_t idx = 0; idx < big.dim(); ++idx) {
            const auto n = big.space().multi_index(idx);
            const bool inside = n[0] <= 4 && n[1] <= 3 && n[2] <= 2;
            CHECK(big.amplitudes()[idx] ==
                  (inside ? psi.amplitude(n) : Complex{}));
        }
    }
    SECTION("two growths equal one combined growth") {
        const std::uint32_t a[] = {1, 2, 0};
        const std::uint32_t b[] = {2, 0, 3};
        const std::uint32_t ab[] = {3, 2, 3};
        const auto twice = grow(grow(psi, a), b);
        const auto once = grow(psi, ab);
        CHECK(twice.space() == once.space());
        CHECK(std::equal(twice.amplitudes().begin(), twice.amplitudes().end(),
                         once.amplitudes().begin()));
    }
    SECTION("norm is preserved to the last bit for random states") {
        for (int trial = 0; trial < 20; ++trial) {
            const auto phi = random_state(space, rng);
            const std::uint32_t d[] = {static_cast<std::uint32_t>(trial % 3),
                                       2, 1};
            CHECK(grow(phi, d).norm() == phi.norm());
        }
    }
    SECTION("dimension cap") {
        const std::uint32_t delta[] = {10, 10, 10};
        try {
            (void)grow(psi, delta, 1000);
            FAIL("expected ResourceExhausted");
        } catch (const Error &e) {
            CHECK(e.kind() == ErrorKind::ResourceExhausted);
        }
        const std::uint32_t wrong[] = {1, 1};
        CHECK_THROWS_AS(grow(psi, wrong), Error);
    }
}

TEST_CASE("Boundary mass", "[fock]") {
    const TruncatedFockSpace space({9, 9});
    const std::uint32_t vac[] = {0, 0};
    const std::uint32_t edge[] = {9, 0};
    CHECK(boundary_mass(QuantumState::basis(space, vac), 1) == 0.0);
    CHECK(boundary_mass(QuantumState::basis(space, edge), 1) == 1.0);
    CHECK(boundary_mass(QuantumState::basis(space, edge), 1, 0) == 1.0);
    CHECK(boundary_mass(QuantumState::basis(space, edge), 1, 1) == 0.0);
    CHECK_THROWS_AS(boundary_mass(QuantumState::basis(space, vac), 0), Error);

    // Renormalized Poisson(4) on {0..9}: mass of n in {8, 9}.
    const auto cs = coherent(2.0, 9);
    const long double s9 = oracle::poisson_mass(4.0L, 9);
    const double expected = static_cast<double>(
        (oracle::poisson(4.0L, 8) + oracle::poisson(4.0L, 9)) / s9);
    CHECK_THAT(expected, WithinAbs(0.0433539, 1e-6));
    CHECK_THAT(boundary_mass(cs.state, 2), WithinRel(expected, 1e-12));
    CHECK_THAT(boundary_mass(cs.state, 1),
               WithinRel(static_cast<double>(oracle::poisson(4.0L, 9) / s9),
                         1e-12));
    // A shell wider than the box covers everything.
    CHECK_THAT(boundary_mass(cs.state, 12), WithinRel(1.0, 1e-14));

    std::mt19937_64 rng(5);
    const TruncatedFockSpace box({4, 6});
    const auto psi = random_state(box, rng);
    double naive = 0.0;
    for (std::size_t idx = 0; idx < box.dim(); ++idx) {
        const auto n = box.multi_index(idx);
        if (n[0] > 4 - 2 || n[1] > 6 - 2) {
            naive += std::norm(psi.amplitudes()[idx]);
        }
    }
    CHECK_THAT(boundary_mass(psi, 2), WithinAbs(naive, 1e-14));
}

TEST_CASE("Inner product and state dump", "[fock]") {
    const TruncatedFockSpace space({1, 1});
    QuantumState a(space, {Complex(1, 0), Complex(0, 1), Complex(0, 0),
                           Complex(0.5, 0)});
    QuantumState b(space, {Complex(0, 1), Complex(1, 0), Complex(2, 0),
                           Complex(0, 0)});
    // sum conj(a) b = -i ... (1)(i) + (-i)(1) = 0
    CHECK(inner_product(a, b) == Complex(0.0, 0.0));
    CHECK(inner_product(a, a) == Complex(2.25, 0.0));
    CHECK_THROWS_AS(inner_product(a, QuantumState(TruncatedFockSpace({2}))),
                    Error);

    std::ostringstream out;
    write_state(out, a);
    CHECK(out.str() == "0 0 1 0\n"
                       "1 0 0 1\n"
                       "0 1 0 0\n"
                       "1 1 0.5 0\n");
}
