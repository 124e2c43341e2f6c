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

#include "qadio/spectral.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "qadio/error.hpp"
#include "qadio/hamiltonian.hpp"

namespace qadio::spectral {

Matrix dense_h(double s, const DiophantinePolynomial &p,
               std::span<const Complex> alphas,
               const TruncatedFockSpace &space, std::size_t cap) {
    if (space.dim() > cap) {
        throw Error(ErrorKind::ResourceExhausted,
                    "dense oracle dimension " + std::to_string(space.dim()) +
                        " exceeds cap " + std::to_string(cap));
    }
    if (alphas.size() != space.num_modes()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "number of alphas does not match number of modes");
    }
    const SchedulePoint point(s);
    const auto d = diag_hp(p, space);
    const auto dim = static_cast<Eigen::Index>(space.dim());
    Matrix h = Matrix::Zero(dim, dim);
    const double w = 1.0 - point.value();
    for (Eigen::Index col = 0; col < dim; ++col) {
        const auto n = space.multi_index(static_cast<std::size_t>(col));
        double number = 0.0;
        double alpha_sq = 0.0;
        for (std::size_t i = 0; i < n.size(); ++i) {
            number += n[i];
            alpha_sq += std::norm(alphas[i]);
        }
        h(col, col) = w * (number + alpha_sq) + point.value() * d[col];
        for (std::size_t i = 0; i < n.size(); ++i) {
            // <n+e_i| (-alpha a^+) |n> = -alpha sqrt(n_i + 1)
            if (n[i] < space.cutoff(i)) {
                auto up = n;
                ++up[i];
                const auto row =
                    static_cast<Eigen::Index>(space.linear_index(up));
                h(row, col) = -w * alphas[i] * std::sqrt(n[i] + 1.0);
            }
            // <n-e_i| (-conj(alpha) a) |n> = -conj(alpha) sqrt(n_i)
            if (n[i] > 0) {
                auto down = n;
                --down[i];
                const auto row =
                    static_cast<Eigen::Index>(space.linear_index(down));
                h(row, col) = -w * std::conj(alphas[i]) * std::sqrt(n[i] * 1.0);
            }
        }
    }
    return h;
}

namespace {

Eigen::SelfAdjointEigenSolver<Matrix> diagonalize(const Matrix &h,
                                                  bool vectors) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(
        h, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::Eigensolver,
                    "Hermitian eigensolver failed to converge");
    }
    return solver;
}

} // namespace

Matrix expm_hermitian(const Matrix &h, double t) {
    const auto solver = diagonalize(h, true);
    const auto &v = solver.eigenvectors();
    const auto &e = solver.eigenvalues();
    Eigen::VectorXcd phases(e.size());
    for (Eigen::Index k = 0; k < e.size(); ++k) {
        phases(k) = std::polar(1.0, -e(k) * t);
    }
    return v * phases.asDiagonal() * v.adjoint();
}

std::vector<double> eigenvalues(const Matrix &h) {
    const auto solver = diagonalize(h, false);
    const auto &e = solver.eigenvalues();
    return {e.data(), e.data() + e.size()};
}

std::vector<double> uniform_grid(std::size_t points) {
    if (points < 2) {
        throw Error(ErrorKind::InvalidArgument, "grid needs >= 2 points");
    }
    std::vector<double> grid(points);
    for (std::size_t k = 0; k < points; ++k) {
        grid[k] = static_cast<double>(k) / static_cast<double>(points - 1);
    }
    return grid;
}

bool is_degenerate(double e0, double e1) {
    return std::fabs(e1 - e0) < 1e-9 * std::max(1.0, std::fabs(e0));
}

GapProfile gap_profile(const DiophantinePolynomial &p,
                       std::span<const Complex> alphas,
                       const TruncatedFockSpace &space,
                       std::span<const double> grid, std::size_t levels,
                       std::size_t cap) {
    if (levels < 2) {
        throw Error(ErrorKind::InvalidArgument,
                    "gap profile needs at least two levels");
    }
    GapProfile profile;
    profile.s_values.assign(grid.begin(), grid.end());
    bool have_interior = false;
    for (const double s : grid) {
        const auto all = eigenvalues(dense_h(s, p, alphas, space, cap));
        const std::size_t keep = std::min(levels, all.size());
        profile.eigenvalues.emplace_back(all.begin(),
                                         all.begin() +
                                             static_cast<std::ptrdiff_t>(keep));
        if (s > 0.0 && s < 1.0 && all.size() >= 2) {
            const double gap = all[1] - all[0];
            if (!have_interior || gap < profile.min_gap) {
                profile.min_gap = gap;
                profile.min_gap_s = s;
                have_interior = true;
            }
        }
    }
    return profile;
}

void write_gap_csv(std::ostream &out, const GapProfile &profile) {
    std::size_t levels = 0;
    for (const auto &row : profile.eigenvalues) {
        levels = std::max(levels, row.size());
    }
    out << 's';
    for (std::size_t k = 0; k < levels; ++k) {
        out << ",E" << k;
    }
    out << '\n';
    char buf[48];
    for (std::size_t r = 0; r < profile.s_values.size(); ++r) {
        std::snprintf(buf, sizeof buf, "%.10g", profile.s_values[r]);
        out << buf;
        for (const double e : profile.eigenvalues[r]) {
            std::snprintf(buf, sizeof buf, ",%.15g", e);
            out << buf;
        }
        out << '\n';
    }
}

QuantumState exact_propagate(const QuantumState &psi0,
                             std::span<const Segment> schedule,
                             const DiophantinePolynomial &p,
                             std::span<const Complex> alphas,
                             std::size_t cap) {
    const auto &space = psi0.space();
    const auto in = psi0.amplitudes();
    Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(
        in.data(), static_cast<Eigen::Index>(in.size()));
    for (const auto &seg : schedule) {
        v = expm_hermitian(dense_h(seg.s, p, alphas, space, cap), seg.dt) * v;
    }
    return {space, std::vector<Complex>(v.data(), v.data() + v.size())};
}

std::vector<Segment> uniform_schedule(double T, std::uint32_t steps) {
    std::vector<Segment> out;
    out.reserve(steps);
    for (std::uint32_t k = 0; k < steps; ++k) {
        out.push_back({(k + 0.5) / steps, T / steps});
    }
    return out;
}

} // namespace qadio::spectral
