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
 * Dense exact-diagonalization oracle for small truncations.
 */

#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qadio/fock.hpp"
#include "qadio/polynomial.hpp"

namespace qadio::spectral {

using Matrix = Eigen::MatrixXcd;

inline constexpr std::size_t kDefaultOracleCap = 4096;

/// Explicit H(s) on `space`. Throws ResourceExhausted above `cap`.
[[nodiscard]] Matrix dense_h(double s, const DiophantinePolynomial &p,
                             std::span<const Complex> alphas,
                             const TruncatedFockSpace &space,
                             std::size_t cap = kDefaultOracleCap);

/// exp(-i H t) for Hermitian H via eigendecomposition.
[[nodiscard]] Matrix expm_hermitian(const Matrix &h, double t);

/// Ascending eigenvalues of a Hermitian matrix. Throws Eigensolver on failure.
[[nodiscard]] std::vector<double> eigenvalues(const Matrix &h);

struct GapProfile {
    std::vector<double> s_values;
    /// Lowest `levels` eigenvalues per grid point, ascending.
    std::vector<std::vector<double>> eigenvalues;
    /// Smallest E1 - E0 over interior grid points (0 < s < 1).
    double min_gap_s = 0.0;
    double min_gap = 0.0;
};

/// Uniform grid of `points` values covering [0, 1].
[[nodiscard]] std::vector<double> uniform_grid(std::size_t points);

[[nodiscard]] GapProfile gap_profile(const DiophantinePolynomial &p,
                                     std::span<const Complex> alphas,
                                     const TruncatedFockSpace &space,
                                     std::span<const double> grid,
                                     std::size_t levels = 4,
                                     std::size_t cap = kDefaultOracleCap);

/// Spacing below 1e-9 * max(1, |E|) counts as degenerate.
[[nodiscard]] bool is_degenerate(double e0, double e1);

/// `s,E0,E1,...` with a header row.
void write_gap_csv(std::ostream &out, const GapProfile &profile);

/// One piecewise-constant segment of the schedule: H(s) for duration dt.
struct Segment {
    double s;
    double dt;
};

/**
 * Product of exp(-i H(s_k) dt_k) over the schedule, applied to psi0 on its
 * own (fixed) space.
 */
[[nodiscard]] QuantumState
exact_propagate(const QuantumState &psi0, std::span<const Segment> schedule,
                const DiophantinePolynomial &p,
                std::span<const Complex> alphas,
                std::size_t cap = kDefaultOracleCap);

/// Midpoint segments for `steps` uniform steps across a run of length T.
[[nodiscard]] std::vector<Segment> uniform_schedule(double T,
                                                    std::uint32_t steps);

} // namespace qadio::spectral
