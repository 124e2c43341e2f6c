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
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "qadio/error.hpp"
#include "qadio/spectral.hpp"

using namespace qadio;
using namespace qadio::spectral;
using Catch::Matchers::WithinAbs;

namespace {

const std::vector<Complex> kAlpha1 = {Complex(2.0, 0.0)};
const std::vector<Complex> kAlpha2 = {Complex(2.0, 0.0), Complex(2.0, 0.0)};

double max_abs(const Matrix &m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("Dense H(s) construction", "[spectral]") {
    SECTION("s = 1 is the diagonal of D(n)^2") {
        const auto p = parse("x*y + x + 4*y - 11");
        const TruncatedFockSpace space({4, 3});
        const auto h = dense_h(1.0, p, kAlpha2, space);
        for (std::size_t j = 0; j < space.dim(); ++j) {
            const auto n = space.multi_index(j);
            const double d = 1.0 * n[0] * n[1] + n[0] + 4.0 * n[1] - 11.0;
            for (std::size_t i = 0; i < space.dim(); ++i) {
                CHECK(h(i, j) == (i == j ? Complex(d * d) : Complex{}));
            }
        }
    }
    SECTION("s = 0, alpha = 2, three levels") {
        const auto h = dense_h(0.0, parse("x"), kAlpha1, TruncatedFockSpace({2}));
        Matrix expected(3, 3);
        expected << 4.0, -2.0, 0.0,  //
            -2.0, 5.0, -2.0 * std::sqrt(2.0), //
            0.0, -2.0 * std::sqrt(2.0), 6.0;
        CHECK(max_abs(h - expected) <= 1e-15);
    }
    SECTION("Kronecker-product oracle agreement and Hermiticity") {
        std::mt19937_64 rng(41);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int trial = 0; trial < 15; ++trial) {
            const std::size_t k = 1 + trial % 3;
            const auto p = oracle::random_polynomial(k, rng);
            std::vector<Complex> alphas;
            std::vector<std::uint32_t> cutoffs;
            for (std::size_t i = 0; i < k; ++i) {
                alphas.emplace_back(3.0 * unit(rng) - 1.5, 3.0 * unit(rng) - 1.5);
                cutoffs.push_back(static_cast<std::uint32_t>(
                    k == 1 ? 12 + rng() % 20 : k == 2 ? 3 + rng() % 6 : 2 + rng() % 3));
            }
            const double s = unit(rng);
            const auto h = dense_h(s, p, alphas, TruncatedFockSpace(cutoffs));
            const auto ref = oracle::hamiltonian(s, oracle::from(p), alphas, cutoffs);
            CHECK(max_abs(h - ref) <= 1e-12);
            CHECK(max_abs(h - h.adjoint()) <= 1e-12);
        }
    }
    SECTION("errors") {
        try {
            (void)dense_h(0.5, parse("x*y"), kAlpha2, TruncatedFockSpace({99, 99}),
                          4096);
            FAIL("expected ResourceExhausted");
        } catch (const Error &e) {
            CHECK(e.kind() == ErrorKind::ResourceExhausted);
        }
        CHECK_THROWS_AS(dense_h(0.5, parse("x"), kAlpha2, TruncatedFockSpace({3})),
                        Error);
        CHECK_THROWS_AS(dense_h(1.5, parse("x"), kAlpha1, TruncatedFockSpace({3})),
                        Error);
    }
}

TEST_CASE("Spectra at the endpoints", "[spectral]") {
    SECTION("s = 1 eigenvalues are the sorted D(n)^2 multiset") {
        const auto p = parse("x*y + x + 4*y - 11");
        const TruncatedFockSpace space({9, 9});
        const auto e = eigenvalues(dense_h(1.0, p, kAlpha2, space));
        std::vector<double> expected;
        for (std::size_t j = 0; j < space.dim(); ++j) {
            const auto n = space.multi_index(j);
            const double d = 1.0 * n[0] * n[1] + n[0] + 4.0 * n[1] - 11.0;
            expected.push_back(d * d);
        }
        std::sort(expected.begin(), expected.end());
        REQUIRE(e.size() == expected.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            CHECK(std::fabs(e[i] - expected[i]) <= 1e-10 * std::max(1.0, expected[i]));
        }
    }
    SECTION("s = 0 ground state is the coherent state with energy near 0") {
        for (const Complex alpha : {Complex(2.0, 0.0), Complex(1.0, -1.5)}) {
            const auto e = eigenvalues(
                dense_h(0.0, parse("x - 3"), std::vector{alpha}, TruncatedFockSpace({30})));
            CHECK(std::fabs(e[0]) <= 1e-9);
            CHECK_FALSE(is_degenerate(e[0], e[1]));
            CHECK_THAT(e[1], WithinAbs(1.0, 1e-6));
        }
    }
    SECTION("eigenvalues are ascending") {
        std::mt19937_64 rng(43);
        const auto p = oracle::random_polynomial(2, rng);
        const auto e = eigenvalues(dense_h(0.37, p, kAlpha2, TruncatedFockSpace({7, 7})));
        CHECK(std::is_sorted(e.begin(), e.end()));
    }
}

TEST_CASE("Gap profiles", "[spectral]") {
    SECTION("x - 20 at s = 1: ground 0 under a degenerate pair at 1") {
        const std::vector<double> grid = {0.0, 0.5, 1.0};
        const auto g = gap_profile(parse("x - 20"), kAlpha1, TruncatedFockSpace({25}),
                                   grid);
        const auto &top = g.eigenvalues.back();
        REQUIRE(top.size() == 4);
        CHECK_THAT(top[0], WithinAbs(0.0, 1e-12));
        CHECK_THAT(top[1], WithinAbs(1.0, 1e-12));
        CHECK_THAT(top[2], WithinAbs(1.0, 1e-12));
        CHECK_THAT(top[3], WithinAbs(4.0, 1e-12));
        CHECK(is_degenerate(top[1], top[2]));
        CHECK_THAT(top[1] - top[0], WithinAbs(1.0, 1e-12));
        CHECK(g.min_gap_s == 0.5);
    }
    SECTION("two-variable equation: interior gap stays open on 101 points") {
        const auto p = parse("x*y + x + 4*y - 11");
        const std::vector<std::uint32_t> cutoffs = {9, 9};
        const auto grid = uniform_grid(101);
        const auto g = gap_profile(p, kAlpha2, TruncatedFockSpace(cutoffs), grid);
        CHECK(g.s_values.size() == 101);
        CHECK(g.eigenvalues.size() == 101);
        CHECK(g.min_gap > 0.0);
        CHECK(g.min_gap_s > 0.0);
        CHECK(g.min_gap_s < 1.0);
        for (const auto &row : g.eigenvalues) {
            CHECK(std::is_sorted(row.begin(), row.end()));
        }
        // Reference eigenvalues of the Kronecker-product matrix at the minimum.
        const Eigen::SelfAdjointEigenSolver<oracle::Dense> ref(
            oracle::hamiltonian(g.min_gap_s, oracle::from(p), kAlpha2, cutoffs),
            Eigen::EigenvaluesOnly);
        const auto &ev = ref.eigenvalues();
        CHECK_THAT(g.min_gap, WithinAbs(ev(1) - ev(0), 1e-9));
    }
    SECTION("relabeling the unknowns leaves the gap unchanged") {
        const auto grid = uniform_grid(21);
        const auto a = gap_profile(parse("x*y + x + 4*y - 11"), kAlpha2,
                                   TruncatedFockSpace({6, 6}), grid);
        const auto b = gap_profile(parse("x*y + 4*x + y - 11"), kAlpha2,
                                   TruncatedFockSpace({6, 6}), grid);
        CHECK_THAT(a.min_gap, WithinAbs(b.min_gap, 1e-9));
        CHECK(a.min_gap_s == b.min_gap_s);
    }
    SECTION("argument checks") {
        CHECK_THROWS_AS(uniform_grid(1), Error);
        const auto grid = uniform_grid(5);
        CHECK(grid.front() == 0.0);
        CHECK(grid.back() == 1.0);
        CHECK(grid[2] == 0.5);
        CHECK_THROWS_AS(gap_profile(parse("x"), kAlpha1, TruncatedFockSpace({4}), grid, 1),
                        Error);
    }
}

TEST_CASE("Degeneracy threshold", "[spectral]") {
    CHECK(is_degenerate(1.0, 1.0));
    CHECK(is_degenerate(0.0, 5e-10));
    CHECK_FALSE(is_degenerate(0.0, 2e-9));
    CHECK(is_degenerate(1e6, 1e6 + 5e-4));
    CHECK_FALSE(is_degenerate(1e6, 1e6 + 5e-3));
}

TEST_CASE("Gap CSV", "[spectral]") {
    GapProfile g;
    g.s_values = {0.0, 1.0};
    g.eigenvalues = {{0.0, 1.0}, {0.25, 2.5}};
    std::ostringstream out;
    write_gap_csv(out, g);
    CHECK(out.str() == "s,E0,E1\n0,0,1\n1,0.25,2.5\n");
}

TEST_CASE("Piecewise-exact propagation", "[spectral]") {
    const auto p = parse("x - 2");
    const TruncatedFockSpace space({5});
    std::mt19937_64 rng(47);
    QuantumState psi(space, oracle::random_vector(space.dim(), rng));
    psi.normalize();

    SECTION("diagonal H gives per-entry phases") {
        const std::vector<Segment> one = {{1.0, 0.3}};
        const auto out = exact_propagate(psi, one, p, kAlpha1);
        for (std::uint32_t n = 0; n <= 5; ++n) {
            const std::uint32_t idx[] = {n};
            const double e = (n - 2.0) * (n - 2.0);
            CHECK(std::abs(out.amplitude(idx) -
                           std::polar(1.0, -e * 0.3) * psi.amplitude(idx)) <= 1e-13);
        }
    }
    SECTION("empty schedule and zero-length segments are the identity") {
        const auto a = exact_propagate(psi, {}, p, kAlpha1);
        const std::vector<Segment> zero = {{0.2, 0.0}, {0.7, 0.0}};
        const auto b = exact_propagate(psi, zero, p, kAlpha1);
        for (std::size_t i = 0; i < space.dim(); ++i) {
            CHECK(a.amplitudes()[i] == psi.amplitudes()[i]);
            CHECK(std::abs(b.amplitudes()[i] - psi.amplitudes()[i]) <= 1e-14);
        }
    }
    SECTION("agrees with a Taylor-series exponential and keeps the norm") {
        const auto schedule = uniform_schedule(3.0, 50);
        const auto out = exact_propagate(psi, schedule, p, kAlpha1);
        Eigen::VectorXcd ref = oracle::to_vector(psi.amplitudes());
        for (const auto &seg : schedule) {
            ref = oracle::expm(oracle::hamiltonian(seg.s, oracle::from(p), kAlpha1, {5}),
                               seg.dt) *
                  ref;
        }
        CHECK((oracle::to_vector(out.amplitudes()) - ref).norm() <= 1e-11);
        CHECK_THAT(out.norm(), WithinAbs(1.0, 1e-12));
    }
    SECTION("uniform schedules use midpoints") {
        const auto s = uniform_schedule(2.0, 4);
        REQUIRE(s.size() == 4);
        CHECK(s[0].s == 0.125);
        CHECK(s[3].s == 0.875);
        for (const auto &seg : s) {
            CHECK(seg.dt == 0.5);
        }
    }
    SECTION("cap") {
        CHECK_THROWS_AS(exact_propagate(psi, uniform_schedule(1.0, 1), p, kAlpha1, 3),
                        Error);
    }
}
