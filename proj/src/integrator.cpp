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

#include "qadio/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>

#include "qadio/error.hpp"

namespace qadio {

void IntegratorConfig::validate() const {
    if (!(dt_min > 0.0 && dt_min <= dt_initial && dt_initial <= dt_max)) {
        throw Error(ErrorKind::InvalidArgument,
                    "integrator requires 0 < dt_min <= dt_initial <= dt_max");
    }
    if (!(dt_tolerance >= 0.0) || !(solver_tolerance > 0.0)) {
        throw Error(ErrorKind::InvalidArgument,
                    "integrator tolerances must be positive");
    }
    if (solver_max_iterations == 0) {
        throw Error(ErrorKind::InvalidArgument,
                    "solver_max_iterations must be positive");
    }
}

namespace {

double norm2(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto &z : v) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

} // namespace

namespace {

SolveResult solve_cgnr(const LinearOperator &apply_h,
                       std::span<const double> h_diagonal,
                       std::span<const Complex> rhs, double dt, double tol,
                       std::uint32_t max_iterations) {
    const std::size_t n = rhs.size();
    if (h_diagonal.size() != n) {
        throw Error(ErrorKind::DimensionMismatch,
                    "solve_linear: diagonal and rhs sizes differ");
    }
    const Complex ic(0.0, 0.5 * dt);
    const double rhs_norm = norm2(rhs);
    SolveResult result;
    result.x.assign(n, Complex{});
    if (rhs_norm == 0.0) {
        return result;
    }

    // Jacobi scaling D = diag(A), A = 1 + i dt/2 H. Iterate on M = D^{-1} A.
    std::vector<Complex> dvals(n), dinv(n);
    for (std::size_t j = 0; j < n; ++j) {
        dvals[j] = 1.0 + ic * h_diagonal[j];
        dinv[j] = 1.0 / dvals[j];
    }
    std::vector<Complex> hv(n);
    // out = A v
    auto apply_a = [&](std::span<const Complex> v, std::span<Complex> out) {
        apply_h(v, hv);
        for (std::size_t j = 0; j < n; ++j) {
            out[j] = v[j] + ic * hv[j];
        }
    };
    std::vector<Complex> tmp(n);
    // out = M^H v = A^H D^{-H} v
    auto apply_mh = [&](std::span<const Complex> v, std::span<Complex> out) {
        for (std::size_t j = 0; j < n; ++j) {
            tmp[j] = std::conj(dinv[j]) * v[j];
        }
        apply_h(tmp, hv);
        for (std::size_t j = 0; j < n; ++j) {
            out[j] = tmp[j] - ic * hv[j];
        }
    };

    auto &x = result.x;
    for (std::size_t j = 0; j < n; ++j) {
        x[j] = dinv[j] * rhs[j];
    }
    std::vector<Complex> r(n), z(n), p(n), w(n);
    // Scaled residual r = D^{-1}(b - A x); ||D r|| is the true residual.
    auto restart = [&]() {
        apply_a(x, w);
        for (std::size_t j = 0; j < n; ++j) {
            r[j] = dinv[j] * (rhs[j] - w[j]);
        }
        apply_mh(r, z);
        std::copy(z.begin(), z.end(), p.begin());
    };
    auto true_residual = [&]() {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            s += std::norm(r[j] * dvals[j]);
        }
        return std::sqrt(s) / rhs_norm;
    };

    restart();
    double gamma = 0.0;
    for (const auto &v : z) {
        gamma += std::norm(v);
    }
    result.relative_residual = true_residual();
    std::uint32_t it = 0;
    bool verified = false;
    while (it < max_iterations) {
        if (result.relative_residual <= tol) {
            // The recursive residual drifts; confirm with b - A x.
            apply_a(x, w);
            for (std::size_t j = 0; j < n; ++j) {
                r[j] = dinv[j] * (rhs[j] - w[j]);
            }
            result.relative_residual = true_residual();
            if (result.relative_residual <= tol) {
                verified = true;
                break;
            }
            apply_mh(r, z);
            std::copy(z.begin(), z.end(), p.begin());
            gamma = 0.0;
            for (const auto &v : z) {
                gamma += std::norm(v);
            }
        }
        if (gamma == 0.0) {
            break;
        }
        apply_a(p, w);
        for (std::size_t j = 0; j < n; ++j) {
            w[j] *= dinv[j];
        }
        double ww = 0.0;
        for (const auto &v : w) {
            ww += std::norm(v);
        }
        if (ww == 0.0) {
            break;
        }
        const double step = gamma / ww;
        for (std::size_t j = 0; j < n; ++j) {
            x[j] += step * p[j];
            r[j] -= step * w[j];
        }
        ++it;
        result.relative_residual = true_residual();
        if (result.relative_residual <= tol) {
            continue;
        }
        apply_mh(r, z);
        double gamma_next = 0.0;
        for (const auto &v : z) {
            gamma_next += std::norm(v);
        }
        const double beta = gamma_next / gamma;
        gamma = gamma_next;
        for (std::size_t j = 0; j < n; ++j) {
            p[j] = z[j] + beta * p[j];
        }
    }
    result.iterations = it;
    if (!verified) {
        restart();
        result.relative_residual = true_residual();
        if (!(result.relative_residual <= tol)) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "linear solver stalled at relative residual %.3e "
                          "after %u iterations (tolerance %.3e)",
                          result.relative_residual, it, tol);
            throw Error(ErrorKind::SolverDivergence, buf);
        }
    }
    return result;
}

/// Jacobi-preconditioned conjugate orthogonal CG for complex-symmetric A
/// (real symmetric H). Returns nullopt on breakdown or stagnation.
std::optional<SolveResult> solve_cocg(const LinearOperator &apply_h,
                                      std::span<const double> h_diagonal,
                                      std::span<const Complex> rhs, double dt,
                                      double tol,
                                      std::uint32_t max_iterations) {
    const std::size_t n = rhs.size();
    const Complex ic(0.0, 0.5 * dt);
    const double rhs_norm = norm2(rhs);
    SolveResult result;
    result.x.assign(n, Complex{});
    if (rhs_norm == 0.0) {
        return result;
    }
    std::vector<Complex> dinv(n);
    for (std::size_t j = 0; j < n; ++j) {
        dinv[j] = 1.0 / (1.0 + ic * h_diagonal[j]);
    }
    std::vector<Complex> hv(n);
    auto apply_a = [&](std::span<const Complex> v, std::span<Complex> out) {
        apply_h(v, hv);
        for (std::size_t j = 0; j < n; ++j) {
            out[j] = v[j] + ic * hv[j];
        }
    };
    auto residual_norm = [&](std::span<const Complex> r) {
        return norm2(r) / rhs_norm;
    };

    auto &x = result.x;
    std::vector<Complex> r(n), z(n), p(n), q(n);
    for (std::size_t j = 0; j < n; ++j) {
        x[j] = dinv[j] * rhs[j];
    }
    apply_a(x, q);
    Complex rho{};
    for (std::size_t j = 0; j < n; ++j) {
        r[j] = rhs[j] - q[j];
        z[j] = dinv[j] * r[j];
        p[j] = z[j];
        rho += r[j] * z[j];
    }
    result.relative_residual = residual_norm(r);
    std::uint32_t it = 0;
    while (result.relative_residual > tol) {
        if (it >= max_iterations || rho == Complex{}) {
            return std::nullopt;
        }
        apply_a(p, q);
        Complex mu{};
        for (std::size_t j = 0; j < n; ++j) {
            mu += p[j] * q[j];
        }
        if (mu == Complex{}) {
            return std::nullopt;
        }
        const Complex step = rho / mu;
        for (std::size_t j = 0; j < n; ++j) {
            x[j] += step * p[j];
            r[j] -= step * q[j];
        }
        ++it;
        result.relative_residual = residual_norm(r);
        if (result.relative_residual <= tol) {
            // The recursive residual drifts; confirm with b - A x.
            apply_a(x, q);
            for (std::size_t j = 0; j < n; ++j) {
                r[j] = rhs[j] - q[j];
            }
            result.relative_residual = residual_norm(r);
            if (result.relative_residual <= tol) {
                break;
            }
        }
        Complex rho_next{};
        for (std::size_t j = 0; j < n; ++j) {
            z[j] = dinv[j] * r[j];
            rho_next += r[j] * z[j];
        }
        const Complex beta = rho_next / rho;
        rho = rho_next;
        for (std::size_t j = 0; j < n; ++j) {
            p[j] = z[j] + beta * p[j];
        }
    }
    result.iterations = it;
    return result;
}

} // namespace

SolveResult solve_linear(const LinearOperator &apply_h,
                         std::span<const double> h_diagonal,
                         std::span<const Complex> rhs, double dt, double tol,
                         std::uint32_t max_iterations, bool real_symmetric) {
    if (h_diagonal.size() != rhs.size()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "solve_linear: diagonal and rhs sizes differ");
    }
    if (real_symmetric) {
        if (auto solved = solve_cocg(apply_h, h_diagonal, rhs, dt, tol,
                                     max_iterations)) {
            return std::move(*solved);
        }
    }
    return solve_cgnr(apply_h, h_diagonal, rhs, dt, tol, max_iterations);
}

namespace {

/// psi' = (1 - i dt/2 H)(1 + i dt/2 H)^{-1} psi; negative dt inverts.
CnResult cayley(const InterpolatedHamiltonian &h, const QuantumState &psi,
                double s, double signed_dt, const IntegratorConfig &config,
                double shift) {
    if (!(h.space() == psi.space())) {
        throw Error(ErrorKind::DimensionMismatch,
                    "state space does not match the Hamiltonian space");
    }
    const std::size_t n = psi.dim();
    const auto in = psi.amplitudes();
    std::vector<Complex> hpsi(n);
    const double leakage = h.apply(s, in, hpsi);
    const Complex ic(0.0, 0.5 * signed_dt);
    std::vector<Complex> rhs(n);
    for (std::size_t j = 0; j < n; ++j) {
        rhs[j] = in[j] - ic * (hpsi[j] - shift * in[j]);
    }
    std::vector<double> diag(n);
    h.diagonal(s, diag);
    for (auto &d : diag) {
        d -= shift;
    }
    const LinearOperator op = [&h, s, shift](std::span<const Complex> v,
                                             std::span<Complex> out) {
        h.apply(s, v, out);
        if (shift != 0.0) {
            for (std::size_t j = 0; j < v.size(); ++j) {
                out[j] -= shift * v[j];
            }
        }
    };
    // ||A^{-1}|| <= 1, so a residual below tol * ||psi|| bounds the error.
    const double rhs_norm = norm2(rhs);
    const double psi_norm = norm2(in);
    const double tol =
        rhs_norm > 0.0 ? config.solver_tolerance * psi_norm / rhs_norm
                       : config.solver_tolerance;
    SolveResult solved =
        solve_linear(op, diag, rhs, signed_dt, tol,
                     config.solver_max_iterations, h.is_real_symmetric());
    // The exact step preserves the norm, so any change is solver error. Krylov
    // truncation biases it with a consistent sign, which adds up over millions
    // of steps; iterative refinement on the true residual removes it.
    const double drift_limit = 1e-2 * config.solver_tolerance * psi_norm;
    std::vector<Complex> ax(n), residual(n);
    for (int round = 0;
         round < 3 && std::fabs(norm2(solved.x) - psi_norm) > drift_limit;
         ++round) {
        op(solved.x, ax);
        for (std::size_t j = 0; j < n; ++j) {
            residual[j] = rhs[j] - (solved.x[j] + ic * ax[j]);
        }
        if (norm2(residual) == 0.0) {
            break;
        }
        const SolveResult correction =
            solve_linear(op, diag, residual, signed_dt, 1e-2,
                         config.solver_max_iterations, h.is_real_symmetric());
        for (std::size_t j = 0; j < n; ++j) {
            solved.x[j] += correction.x[j];
        }
        solved.iterations += correction.iterations;
    }
    return {QuantumState(psi.space(), std::move(solved.x)), solved.iterations,
            leakage};
}

} // namespace

CnResult cn_step(const InterpolatedHamiltonian &h, const QuantumState &psi,
                 SchedulePoint s_mid, double dt, const IntegratorConfig &config,
                 double shift) {
    if (!(dt > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "cn_step requires dt > 0");
    }
    return cayley(h, psi, s_mid.value(), dt, config, shift);
}

CnResult cn_step_inverse(const InterpolatedHamiltonian &h,
                         const QuantumState &psi, SchedulePoint s_mid,
                         double dt, const IntegratorConfig &config,
                         double shift) {
    if (!(dt > 0.0)) {
        throw Error(ErrorKind::InvalidArgument,
                    "cn_step_inverse requires dt > 0");
    }
    return cayley(h, psi, s_mid.value(), -dt, config, shift);
}

double energy_expectation(const InterpolatedHamiltonian &h,
                          const QuantumState &psi, double s) {
    const auto in = psi.amplitudes();
    std::vector<Complex> hpsi(in.size());
    h.apply(s, in, hpsi);
    Complex num{};
    double den = 0.0;
    for (std::size_t j = 0; j < in.size(); ++j) {
        num += std::conj(in[j]) * hpsi[j];
        den += std::norm(in[j]);
    }
    return den > 0.0 ? num.real() / den : 0.0;
}

double phase_aligned_distance(std::span<const Complex> a,
                              std::span<const Complex> b) {
    if (a.size() != b.size()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "phase_aligned_distance: size mismatch");
    }
    Complex overlap{};
    for (std::size_t j = 0; j < a.size(); ++j) {
        overlap += std::conj(a[j]) * b[j];
    }
    const double mag = std::abs(overlap);
    const Complex phase = mag > 0.0 ? overlap / mag : Complex(1.0);
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        s += std::norm(phase * a[j] - b[j]);
    }
    return std::sqrt(s);
}

AdaptiveStep adaptive_dt(const InterpolatedHamiltonian &h,
                         const QuantumState &psi, double t, double T,
                         double dt_candidate, const IntegratorConfig &config) {
    if (!(T > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "total time T must be > 0");
    }
    const double remaining = T - t;
    double dt = std::min({dt_candidate, config.dt_max, remaining});
    const double norm_before = psi.norm();
    std::uint32_t rejections = 0;
    auto s_at = [T](double time) { return std::clamp(time / T, 0.0, 1.0); };

    for (;;) {
        bool ok = true;
        double err = 0.0;
        std::uint32_t iterations = 0;
        double leakage = 0.0;
        std::optional<QuantumState> halves;
        try {
            const double shift = config.energy_shift
                                     ? energy_expectation(h, psi,
                                                          s_at(t + 0.5 * dt))
                                     : 0.0;
            const CnResult full =
                cayley(h, psi, s_at(t + 0.5 * dt), dt, config, shift);
            const CnResult first = cayley(h, psi, s_at(t + 0.25 * dt),
                                          0.5 * dt, config, shift);
            CnResult second = cayley(h, first.state, s_at(t + 0.75 * dt),
                                     0.5 * dt, config, shift);
            iterations = full.iterations + first.iterations + second.iterations;
            leakage = first.leakage + second.leakage;
            err = phase_aligned_distance(full.state.amplitudes(),
                                         second.state.amplitudes());
            ok = err <= config.dt_tolerance;
            halves.emplace(std::move(second.state));
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::SolverDivergence) {
                throw;
            }
            ok = false;
        }

        if (ok) {
            StepReport report;
            report.t_before = t;
            report.dt_used = dt;
            report.solver_iterations = iterations;
            report.estimated_local_error = err;
            report.norm_drift = halves->norm() - norm_before;
            report.leakage = leakage;
            report.rejections = rejections;
            report.dim = psi.dim();
            // Local error of the doubled step scales as dt^3.
            double factor = 2.0;
            if (err > 0.0) {
                factor = std::clamp(
                    0.9 * std::cbrt(config.dt_tolerance / err), 0.5, 2.0);
            }
            const double next =
                std::clamp(dt * factor, config.dt_min, config.dt_max);
            return {dt, std::move(*halves), report, next};
        }

        ++rejections;
        dt *= 0.5;
        if (dt < config.dt_min) {
            char buf[200];
            std::snprintf(buf, sizeof buf,
                          "time step underflow at t=%.6g: dt=%.3e below "
                          "dt_min=%.3e after %u rejections (last error "
                          "estimate %.3e)",
                          t, dt, config.dt_min, rejections, err);
            throw Error(ErrorKind::StepUnderflow, buf);
        }
    }
}

namespace {

/// Applies the growth policy; returns true if the space changed.
bool maybe_grow(QuantumState &psi, const GrowthPolicy &policy) {
    if (policy.mode == GrowthMode::Fixed) {
        return false;
    }
    const std::size_t k = psi.space().num_modes();
    std::vector<std::uint32_t> delta(k, 0);
    bool any = false;
    if (policy.mode == GrowthMode::Always) {
        std::fill(delta.begin(), delta.end(), policy.increment);
        any = true;
    } else if (boundary_mass(psi, policy.shell) > policy.threshold) {
        std::fill(delta.begin(), delta.end(), policy.increment);
        any = true;
    }
    if (any) {
        psi = grow(psi, delta, policy.max_dim);
    }
    return any;
}

} // namespace

EvolutionResult evolve(const QuantumState &psi0, double T,
                       const DiophantinePolynomial &p,
                       std::span<const Complex> alphas,
                       const IntegratorConfig &config,
                       const EvolutionHooks &hooks) {
    config.validate();
    if (!(T > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "total time T must be > 0");
    }
    EvolutionResult result{psi0, {}, EvolutionStatus::Completed, 0.0, {}};
    QuantumState &psi = result.state;
    InterpolatedHamiltonian h(p, std::vector<Complex>(alphas.begin(),
                                                      alphas.end()),
                              psi.space());
    double t = 0.0;
    double dt = config.dt_initial;
    // Growth only embeds; it can keep firing while the shell stays occupied.
    auto grow_until_settled = [&]() {
        std::size_t rounds = 0;
        while (maybe_grow(psi, hooks.growth)) {
            ++rounds;
            if (hooks.growth.mode == GrowthMode::Always ||
                boundary_mass(psi, hooks.growth.shell) <=
                    hooks.growth.threshold ||
                rounds > 64) {
                break;
            }
        }
        if (rounds > 0) {
            h.rebind(psi.space());
        }
    };

    while (T - t > 1e-14 * T) {
        try {
            grow_until_settled();
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::ResourceExhausted) {
                throw;
            }
            result.status = EvolutionStatus::DimensionCapReached;
            result.message = e.what();
            break;
        }
        AdaptiveStep step = adaptive_dt(h, psi, t, T, dt, config);
        psi = std::move(step.state);
        t += step.dt_accepted;
        dt = step.dt_next;
        result.steps.push_back(step.report);
        if (hooks.on_step) {
            hooks.on_step(step.report, psi);
        }
    }
    result.t_final = result.status == EvolutionStatus::Completed ? T : t;
    return result;
}

QuantumState evolve_uniform(const QuantumState &psi0, double T,
                            std::uint32_t steps,
                            const InterpolatedHamiltonian &h,
                            const IntegratorConfig &config) {
    if (steps == 0 || !(T > 0.0)) {
        throw Error(ErrorKind::InvalidArgument,
                    "evolve_uniform needs T > 0 and at least one step");
    }
    const double dt = T / steps;
    QuantumState psi = psi0;
    for (std::uint32_t k = 0; k < steps; ++k) {
        const double s = (k + 0.5) / steps;
        psi = cn_step(h, psi, SchedulePoint(s), dt, config).state;
    }
    return psi;
}

void write_step_line(std::ostream &out, const StepReport &report,
                     double norm_after) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.12g %.6e %.15f %.3e %u",
                  report.t_before + report.dt_used, report.dt_used,
                  norm_after, report.leakage, report.solver_iterations);
    out << buf << '\n';
}

} // namespace qadio
