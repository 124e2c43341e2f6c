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

#include "qadio/fock.hpp"

#include <cmath>
#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>

#include "qadio/error.hpp"

namespace qadio {

TruncatedFockSpace::TruncatedFockSpace(std::vector<std::uint32_t> cutoffs)
    : cutoffs_(std::move(cutoffs)), strides_(cutoffs_.size()), dim_(1) {
    if (cutoffs_.empty()) {
        throw Error(ErrorKind::InvalidArgument, "Fock space needs >= 1 mode");
    }
    for (std::size_t i = 0; i < cutoffs_.size(); ++i) {
        strides_[i] = dim_;
        const std::size_t side = std::size_t{cutoffs_[i]} + 1;
        if (dim_ > std::numeric_limits<std::size_t>::max() / side) {
            throw Error(ErrorKind::ResourceExhausted,
                        "Fock space dimension overflows size_t");
        }
        dim_ *= side;
    }
}

std::size_t
TruncatedFockSpace::linear_index(std::span<const std::uint32_t> n) const {
    if (n.size() != cutoffs_.size()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "multi-index has wrong number of modes");
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i] > cutoffs_[i]) {
            throw Error(ErrorKind::InvalidArgument,
                        "occupation " + std::to_string(n[i]) +
                            " exceeds cutoff " + std::to_string(cutoffs_[i]));
        }
        idx += n[i] * strides_[i];
    }
    return idx;
}

MultiIndex TruncatedFockSpace::multi_index(std::size_t index) const {
    if (index >= dim_) {
        throw Error(ErrorKind::InvalidArgument, "linear index out of range");
    }
    MultiIndex n(cutoffs_.size());
    for (std::size_t i = 0; i < n.size(); ++i) {
        n[i] = static_cast<std::uint32_t>(index % (cutoffs_[i] + 1U));
        index /= cutoffs_[i] + 1U;
    }
    return n;
}

QuantumState::QuantumState(TruncatedFockSpace space)
    : space_(std::move(space)), amps_(space_.dim(), Complex{}) {}

QuantumState::QuantumState(TruncatedFockSpace space,
                           std::vector<Complex> amplitudes)
    : space_(std::move(space)), amps_(std::move(amplitudes)) {
    if (amps_.size() != space_.dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "amplitude count does not match space dimension");
    }
}

QuantumState QuantumState::basis(TruncatedFockSpace space,
                                 std::span<const std::uint32_t> n) {
    QuantumState s(std::move(space));
    s.amps_[s.space_.linear_index(n)] = 1.0;
    return s;
}

double QuantumState::norm_squared() const {
    double sum = 0.0;
    for (const auto &a : amps_) {
        sum += std::norm(a);
    }
    return sum;
}

double QuantumState::norm() const { return std::sqrt(norm_squared()); }

void QuantumState::normalize() {
    const double n = norm();
    if (n == 0.0 || !std::isfinite(n)) {
        throw Error(ErrorKind::InvalidArgument,
                    "cannot normalize a zero or non-finite state");
    }
    for (auto &a : amps_) {
        a /= n;
    }
}

bool QuantumState::is_finite() const {
    for (const auto &a : amps_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            return false;
        }
    }
    return true;
}

Complex inner_product(const QuantumState &a, const QuantumState &b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "inner product of states with different dimensions");
    }
    Complex sum{};
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += std::conj(x[i]) * y[i];
    }
    return sum;
}

namespace {

/// Poisson weight exp(-x) x^n / n! evaluated in log space.
long double poisson_weight(long double x, std::uint32_t n) {
    if (x == 0.0L) {
        return n == 0 ? 1.0L : 0.0L;
    }
    return std::exp(-x + n * std::log(x) - std::lgamma(n + 1.0L));
}

/// Single-mode truncated coherent amplitudes for n = 0..m.
std::vector<Complex> mode_amplitudes(Complex alpha, std::uint32_t m) {
    std::vector<Complex> out(std::size_t{m} + 1, Complex{});
    const double r = std::abs(alpha);
    if (r == 0.0) {
        out[0] = 1.0;
        return out;
    }
    const double phase = std::arg(alpha);
    const double log_r = std::log(r);
    for (std::uint32_t n = 0; n <= m; ++n) {
        const double log_mag =
            -0.5 * r * r + n * log_r - 0.5 * std::lgamma(n + 1.0);
        out[n] = std::polar(std::exp(log_mag), n * phase);
    }
    return out;
}

} // namespace

double truncated_coherent_norm_squared(Complex alpha, std::uint32_t m) {
    const long double x = std::norm(alpha);
    long double sum = 0.0L;
    for (std::uint32_t n = 0; n <= m; ++n) {
        sum += poisson_weight(x, n);
    }
    return static_cast<double>(sum);
}

std::uint32_t min_truncation(Complex alpha, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "epsilon must lie in (0, 1)");
    }
    const long double x = std::norm(alpha);
    long double sum = 0.0L;
    for (std::uint32_t m = 0;; ++m) {
        sum += poisson_weight(x, m);
        if (std::fabs(1.0L - std::sqrt(sum)) <= epsilon) {
            return m;
        }
        if (m == std::numeric_limits<std::uint32_t>::max()) {
            throw Error(ErrorKind::InvalidArgument,
                        "min_truncation: |alpha| too large");
        }
    }
}

std::vector<std::uint32_t> min_cutoffs(const CoherentParams &params) {
    std::vector<std::uint32_t> m;
    m.reserve(params.alphas.size());
    for (const auto &a : params.alphas) {
        m.push_back(min_truncation(a, params.epsilon));
    }
    return m;
}

CoherentState coherent_state(const CoherentParams &params,
                             const TruncatedFockSpace &space) {
    if (params.alphas.size() != space.num_modes()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "number of alphas does not match number of modes");
    }
    const auto required = min_cutoffs(params);
    std::vector<std::vector<Complex>> factors;
    for (std::size_t i = 0; i < space.num_modes(); ++i) {
        if (space.cutoff(i) < required[i]) {
            throw Error(ErrorKind::InvalidArgument,
                        "cutoff " + std::to_string(space.cutoff(i)) +
                            " of mode " + std::to_string(i + 1) +
                            " is below the minimum " +
                            std::to_string(required[i]) +
                            " for the requested epsilon");
        }
        factors.push_back(mode_amplitudes(params.alphas[i], space.cutoff(i)));
    }

    std::vector<Complex> amps(space.dim());
    MultiIndex n(space.num_modes(), 0);
    for (auto &amp : amps) {
        Complex v = 1.0;
        for (std::size_t i = 0; i < n.size(); ++i) {
            v *= factors[i][n[i]];
        }
        amp = v;
        for (std::size_t i = 0; i < n.size(); ++i) {
            if (n[i] < space.cutoff(i)) {
                ++n[i];
                break;
            }
            n[i] = 0;
        }
    }
    QuantumState state(space, std::move(amps));
    const double deficit = 1.0 - state.norm();
    state.normalize();
    return {std::move(state), deficit};
}

QuantumState grow(const QuantumState &state,
                  std::span<const std::uint32_t> delta, std::size_t max_dim) {
    const auto &old_space = state.space();
    if (delta.size() != old_space.num_modes()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "growth vector has wrong number of modes");
    }
    std::vector<std::uint32_t> cutoffs = old_space.cutoffs();
    std::size_t new_dim = 1;
    for (std::size_t i = 0; i < cutoffs.size(); ++i) {
        cutoffs[i] += delta[i];
        new_dim *= std::size_t{cutoffs[i]} + 1;
        if (new_dim > max_dim) {
            throw Error(ErrorKind::ResourceExhausted,
                        "Fock space growth exceeds the dimension cap of " +
                            std::to_string(max_dim));
        }
    }
    TruncatedFockSpace space(std::move(cutoffs));
    QuantumState out(space);
    auto dst = out.amplitudes();
    const auto src = state.amplitudes();
    // Copy whole mode-1 rows; they are contiguous in both layouts.
    const std::size_t row = old_space.cutoff(0) + 1U;
    MultiIndex n(old_space.num_modes(), 0);
    for (std::size_t base = 0; base < src.size(); base += row) {
        std::size_t target = 0;
        for (std::size_t i = 1; i < n.size(); ++i) {
            target += n[i] * space.stride(i);
        }
        std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(base), row,
                    dst.begin() + static_cast<std::ptrdiff_t>(target));
        for (std::size_t i = 1; i < n.size(); ++i) {
            if (n[i] < old_space.cutoff(i)) {
                ++n[i];
                break;
            }
            n[i] = 0;
        }
    }
    return out;
}

namespace {

/// Probability inside the box n_i <= limit_i (negative limit: empty box).
double inner_box_mass(const QuantumState &state,
                      std::span<const std::int64_t> limit) {
    const auto &space = state.space();
    for (auto l : limit) {
        if (l < 0) {
            return 0.0;
        }
    }
    const auto amps = state.amplitudes();
    const std::size_t k = space.num_modes();
    const auto row = static_cast<std::size_t>(limit[0]) + 1;
    MultiIndex n(k, 0);
    double mass = 0.0;
    for (;;) {
        std::size_t base = 0;
        for (std::size_t i = 1; i < k; ++i) {
            base += n[i] * space.stride(i);
        }
        for (std::size_t j = 0; j < row; ++j) {
            mass += std::norm(amps[base + j]);
        }
        std::size_t i = 1;
        for (; i < k; ++i) {
            if (n[i] < static_cast<std::uint64_t>(limit[i])) {
                ++n[i];
                break;
            }
            n[i] = 0;
        }
        if (i == k) {
            return mass;
        }
    }
}

} // namespace

double boundary_mass(const QuantumState &state, std::uint32_t shell) {
    if (shell == 0) {
        throw Error(ErrorKind::InvalidArgument, "shell width must be >= 1");
    }
    const auto &space = state.space();
    std::vector<std::int64_t> limit(space.num_modes());
    for (std::size_t i = 0; i < limit.size(); ++i) {
        limit[i] = std::int64_t{space.cutoff(i)} - shell;
    }
    return std::max(0.0, state.norm_squared() - inner_box_mass(state, limit));
}

double boundary_mass(const QuantumState &state, std::uint32_t shell,
                     std::size_t mode) {
    if (shell == 0) {
        throw Error(ErrorKind::InvalidArgument, "shell width must be >= 1");
    }
    const auto &space = state.space();
    std::vector<std::int64_t> limit(space.num_modes());
    for (std::size_t i = 0; i < limit.size(); ++i) {
        limit[i] = std::int64_t{space.cutoff(i)};
    }
    limit[mode] -= shell;
    return std::max(0.0, state.norm_squared() - inner_box_mass(state, limit));
}

void write_state(std::ostream &out, const QuantumState &state) {
    const auto &space = state.space();
    const auto amps = state.amplitudes();
    char buf[64];
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        for (std::size_t i = 0; i < space.num_modes(); ++i) {
            out << space.occupation(idx, i) << ' ';
        }
        std::snprintf(buf, sizeof buf, "%.17g %.17g", amps[idx].real(),
                      amps[idx].imag());
        out << buf << '\n';
    }
}

} // namespace qadio
