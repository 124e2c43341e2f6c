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
 * Matrix-free application of the problem Hamiltonian H_P = D(N_1..N_K)^2, the
 * displaced-number initial Hamiltonian H_I = sum_i (a_i^+ - conj(alpha_i))
 * (a_i - alpha_i) and their linear interpolation H(s) = (1-s) H_I + s H_P.
 */

#pragma once

#include <span>
#include <vector>

#include "qadio/fock.hpp"
#include "qadio/polynomial.hpp"

namespace qadio {

/// Largest D(n)^2 that converts to double exactly.
inline constexpr double kMaxExactDiagonal = 9007199254740992.0; // 2^53

/// Ratio t/T, checked to lie in [0, 1].
class SchedulePoint {
  public:
    explicit SchedulePoint(double s);
    [[nodiscard]] double value() const noexcept { return s_; }

  private:
    double s_;
};

/**
 * Entry idx(n) is D(n)^2, computed in exact integers and converted to double.
 * Throws Overflow if some D(n)^2 exceeds 2^53.
 */
[[nodiscard]] std::vector<double> diag_hp(const DiophantinePolynomial &p,
                                          const TruncatedFockSpace &space);

struct ProblemHamiltonian {
    DiophantinePolynomial polynomial;
    TruncatedFockSpace space;
    std::vector<double> diagonal;

    ProblemHamiltonian(DiophantinePolynomial p, TruncatedFockSpace s);
};

struct InitialHamiltonian {
    std::vector<Complex> alphas;
};

/// Result of an operator application that may push amplitude out of the box.
struct Applied {
    QuantumState state;
    /// Squared norm of the amplitude dropped at the truncation boundary.
    double leakage;
};

[[nodiscard]] Applied apply_hi(std::span<const Complex> alphas,
                               const QuantumState &psi);

/// (1-s) H_I psi + s H_P psi. Leakage is the H_I part scaled by (1-s)^2.
[[nodiscard]] Applied apply_h(SchedulePoint s, const ProblemHamiltonian &hp,
                              const InitialHamiltonian &hi,
                              const QuantumState &psi);

/**
 * H(s) bound to one space, applied into caller-owned buffers. This is what
 * the integrator's inner loop uses; the free functions above wrap it.
 */
class InterpolatedHamiltonian {
  public:
    InterpolatedHamiltonian(DiophantinePolynomial p,
                            std::vector<Complex> alphas,
                            TruncatedFockSpace space);

    [[nodiscard]] const TruncatedFockSpace &space() const noexcept {
        return space_;
    }
    [[nodiscard]] const DiophantinePolynomial &polynomial() const noexcept {
        return poly_;
    }
    [[nodiscard]] std::span<const Complex> alphas() const noexcept {
        return alphas_;
    }
    [[nodiscard]] std::span<const double> problem_diagonal() const noexcept {
        return hp_diag_;
    }

    /// True when every alpha is real, so H(s) is a real symmetric matrix.
    [[nodiscard]] bool is_real_symmetric() const noexcept;

    /// Re-target to a new (typically grown) space; H_P is re-evaluated.
    void rebind(TruncatedFockSpace space);

    /// out = H_I in; returns the squared norm dropped at the boundary.
    double apply_initial(std::span<const Complex> in,
                         std::span<Complex> out) const;

    /// out = H(s) in; returns the squared norm dropped at the boundary.
    double apply(double s, std::span<const Complex> in,
                 std::span<Complex> out) const;

    /// Diagonal of H(s) in the Fock basis.
    void diagonal(double s, std::span<double> out) const;

  private:
    DiophantinePolynomial poly_;
    std::vector<Complex> alphas_;
    double alpha_sq_sum_;
    TruncatedFockSpace space_;
    std::vector<double> hp_diag_;
    /// sum_i n_i per basis state.
    std::vector<double> number_sum_;
    /// Per mode: alpha_i sqrt(n+1) for n = 0..m_i.
    std::vector<std::vector<Complex>> ladder_;
};

} // namespace qadio
