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
 * Crank-Nicolson integration of i d/dt psi = H(t/T) psi with a Krylov linear
 * solver, step-doubling error control and Fock-space growth between steps.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <span>
#include <vector>

#include "qadio/fock.hpp"
#include "qadio/hamiltonian.hpp"

namespace qadio {

struct IntegratorConfig {
    double dt_initial = 1e-3;
    /// Step-doubling threshold on the phase-aligned state difference
    /// ||psi_full - psi_halves||.
    double dt_tolerance = 1e-3;
    double dt_min = 1e-10;
    double dt_max = 1.0;
    /// Relative residual target of each implicit solve.
    double solver_tolerance = 1e-10;
    std::uint32_t solver_max_iterations = 2000;
    /// Adaptive steps propagate with H - <H> (a global phase only), which
    /// keeps Crank-Nicolson phase errors proportional to the energy spread
    /// instead of the absolute energy.
    bool energy_shift = true;

    /// Throws InvalidArgument when the fields are inconsistent.
    void validate() const;
};

struct StepReport {
    double t_before = 0.0;
    double dt_used = 0.0;
    std::uint32_t solver_iterations = 0;
    double estimated_local_error = 0.0;
    /// ||psi_after|| - ||psi_before||.
    double norm_drift = 0.0;
    double leakage = 0.0;
    std::uint32_t rejections = 0;
    std::size_t dim = 0;
};

/// Linear map in -> out on dense amplitude vectors.
using LinearOperator =
    std::function<void(std::span<const Complex>, std::span<Complex>)>;

struct SolveResult {
    std::vector<Complex> x;
    std::uint32_t iterations = 0;
    double relative_residual = 0.0;
};

/**
 * Solve (1 + i dt/2 H) x = rhs for Hermitian H given as an operator plus its
 * diagonal (used for Jacobi preconditioning).
 *
 * The general path runs conjugate gradients on the normal equations of the
 * Jacobi-scaled system. When H is real symmetric the system matrix is
 * complex symmetric and conjugate orthogonal CG is tried first, falling back
 * to the normal equations on breakdown. Throws SolverDivergence if the
 * relative residual is not below `tol` after `max_iterations`.
 */
[[nodiscard]] SolveResult solve_linear(const LinearOperator &apply_h,
                                       std::span<const double> h_diagonal,
                                       std::span<const Complex> rhs, double dt,
                                       double tol,
                                       std::uint32_t max_iterations,
                                       bool real_symmetric = false);

struct CnResult {
    QuantumState state;
    std::uint32_t iterations = 0;
    double leakage = 0.0;
};

/**
 * One Crank-Nicolson step psi' = (1 - i/2 H dt)(1 + i/2 H dt)^{-1} psi with H
 * frozen at `s_mid` and replaced by H - shift. The solve tolerance is scaled
 * so that the error in psi' is below `config.solver_tolerance * ||psi||`,
 * and results whose norm moved by more than 1% of that bound get iterative
 * refinement, so norm drift does not accumulate over long runs.
 */
[[nodiscard]] CnResult cn_step(const InterpolatedHamiltonian &h,
                               const QuantumState &psi, SchedulePoint s_mid,
                               double dt, const IntegratorConfig &config,
                               double shift = 0.0);

/// Exact inverse of `cn_step` for the same H, dt and shift.
[[nodiscard]] CnResult cn_step_inverse(const InterpolatedHamiltonian &h,
                                       const QuantumState &psi,
                                       SchedulePoint s_mid, double dt,
                                       const IntegratorConfig &config,
                                       double shift = 0.0);

/// <psi|H(s)|psi> / <psi|psi>.
[[nodiscard]] double energy_expectation(const InterpolatedHamiltonian &h,
                                        const QuantumState &psi, double s);

/// min over phi of ||e^{i phi} a - b||.
[[nodiscard]] double phase_aligned_distance(std::span<const Complex> a,
                                            std::span<const Complex> b);

struct AdaptiveStep {
    double dt_accepted;
    QuantumState state;
    StepReport report;
    /// Suggested size of the next step (at most twice dt_accepted).
    double dt_next;
};

/**
 * Step-doubling control at time t of a run of length T: compare one step of
 * dt with two of dt/2 (each with H at its own midpoint). Accept the half-step
 * result when the phase-aligned difference is within
 * `config.dt_tolerance`; otherwise halve dt and retry. Throws StepUnderflow
 * when dt would drop below `config.dt_min`.
 */
[[nodiscard]] AdaptiveStep adaptive_dt(const InterpolatedHamiltonian &h,
                                       const QuantumState &psi, double t,
                                       double T, double dt_candidate,
                                       const IntegratorConfig &config);

enum class GrowthMode {
    /// Never change the space.
    Fixed,
    /// Grow every mode by `increment` when the outer shell holds more than
    /// `threshold` probability.
    Threshold,
    /// Grow every mode by `increment` before every step.
    Always,
};

struct GrowthPolicy {
    GrowthMode mode = GrowthMode::Threshold;
    std::uint32_t increment = 2;
    std::uint32_t shell = 2;
    double threshold = 1e-8;
    std::size_t max_dim = kDefaultMaxDim;
};

enum class EvolutionStatus { Completed, DimensionCapReached };

struct EvolutionResult {
    QuantumState state;
    std::vector<StepReport> steps;
    EvolutionStatus status = EvolutionStatus::Completed;
    /// t reached (T when completed).
    double t_final = 0.0;
    std::string message;
};

struct EvolutionHooks {
    GrowthPolicy growth;
    /// Called after each accepted step.
    std::function<void(const StepReport &, const QuantumState &)> on_step;
};

/**
 * Integrate from t = 0 to T starting at psi0, applying the growth policy
 * before every step. Reaching the dimension cap ends the run early with
 * status DimensionCapReached and the last state; other failures throw.
 */
[[nodiscard]] EvolutionResult evolve(const QuantumState &psi0, double T,
                                     const DiophantinePolynomial &p,
                                     std::span<const Complex> alphas,
                                     const IntegratorConfig &config,
                                     const EvolutionHooks &hooks = {});

/// Fixed space, `steps` uniform Crank-Nicolson steps with midpoint sampling.
[[nodiscard]] QuantumState evolve_uniform(const QuantumState &psi0, double T,
                                          std::uint32_t steps,
                                          const InterpolatedHamiltonian &h,
                                          const IntegratorConfig &config);

/// One step-log line: `t dt norm leakage solver_iters`.
void write_step_line(std::ostream &out, const StepReport &report,
                     double norm_after);

} // namespace qadio
