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
 * Truncated multi-mode bosonic Fock spaces, dense states over them and the
 * coherent-state machinery that seeds an adiabatic run.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "qadio/polynomial.hpp"

namespace qadio {

using Complex = std::complex<double>;

/**
 * Box {n : 0 <= n_i <= m_i} of Fock states. Linear index layout has mode 1
 * varying fastest: idx(n) = n_1 + (m_1+1) n_2 + (m_1+1)(m_2+1) n_3 + ...
 */
class TruncatedFockSpace {
  public:
    explicit TruncatedFockSpace(std::vector<std::uint32_t> cutoffs);

    [[nodiscard]] std::size_t num_modes() const noexcept {
        return cutoffs_.size();
    }
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] const std::vector<std::uint32_t> &cutoffs() const noexcept {
        return cutoffs_;
    }
    [[nodiscard]] std::uint32_t cutoff(std::size_t mode) const {
        return cutoffs_[mode];
    }
    /// Distance in linear index between |n> and |n + e_mode>.
    [[nodiscard]] std::size_t stride(std::size_t mode) const {
        return strides_[mode];
    }

    [[nodiscard]] std::size_t linear_index(std::span<const std::uint32_t> n) const;
    [[nodiscard]] MultiIndex multi_index(std::size_t index) const;
    /// Occupation of `mode` in the basis state at `index`.
    [[nodiscard]] std::uint32_t occupation(std::size_t index,
                                           std::size_t mode) const {
        return static_cast<std::uint32_t>((index / strides_[mode]) %
                                          (cutoffs_[mode] + 1U));
    }

    bool operator==(const TruncatedFockSpace &o) const {
        return cutoffs_ == o.cutoffs_;
    }

  private:
    std::vector<std::uint32_t> cutoffs_;
    std::vector<std::size_t> strides_;
    std::size_t dim_;
};

/// Dense amplitude vector over a TruncatedFockSpace.
class QuantumState {
  public:
    /// All-zero amplitudes.
    explicit QuantumState(TruncatedFockSpace space);
    QuantumState(TruncatedFockSpace space, std::vector<Complex> amplitudes);

    /// The basis state |n>.
    static QuantumState basis(TruncatedFockSpace space,
                              std::span<const std::uint32_t> n);

    [[nodiscard]] const TruncatedFockSpace &space() const noexcept {
        return space_;
    }
    [[nodiscard]] std::size_t dim() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept {
        return amps_;
    }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amps_; }
    [[nodiscard]] Complex amplitude(std::span<const std::uint32_t> n) const {
        return amps_[space_.linear_index(n)];
    }
    [[nodiscard]] double probability(std::span<const std::uint32_t> n) const {
        return std::norm(amplitude(n));
    }

    [[nodiscard]] double norm() const;
    [[nodiscard]] double norm_squared() const;
    /// Scales to unit norm. Throws InvalidArgument for the zero vector.
    void normalize();
    [[nodiscard]] bool is_finite() const;

  private:
    TruncatedFockSpace space_;
    std::vector<Complex> amps_;
};

/// <a|b>
[[nodiscard]] Complex inner_product(const QuantumState &a,
                                    const QuantumState &b);

struct CoherentParams {
    std::vector<Complex> alphas;
    double epsilon = 1e-2;
};

/// <alpha;m|alpha;m> = exp(-|alpha|^2) sum_{n<=m} |alpha|^{2n}/n!.
[[nodiscard]] double truncated_coherent_norm_squared(Complex alpha,
                                                     std::uint32_t m);

/**
 * Smallest m with |1 - sqrt(<alpha;m|alpha;m>)| <= epsilon.
 * Throws InvalidArgument unless 0 < epsilon < 1.
 */
[[nodiscard]] std::uint32_t min_truncation(Complex alpha, double epsilon);

/// Per-mode min_truncation.
[[nodiscard]] std::vector<std::uint32_t>
min_cutoffs(const CoherentParams &params);

struct CoherentState {
    QuantumState state;
    /// 1 - ||psi|| of the truncated product state before renormalization.
    double norm_deficit;
};

/**
 * Truncated product coherent state |alpha_1> x ... x |alpha_K>, renormalized
 * to unit norm. Throws InvalidArgument if a cutoff is below min_truncation
 * for the requested epsilon or the mode counts disagree.
 */
[[nodiscard]] CoherentState coherent_state(const CoherentParams &params,
                                           const TruncatedFockSpace &space);

inline constexpr std::size_t kDefaultMaxDim = 2'000'000;

/**
 * Embed `state` into the box with cutoffs m + delta. New amplitudes are zero.
 * Throws ResourceExhausted if the grown dimension exceeds `max_dim`.
 */
[[nodiscard]] QuantumState grow(const QuantumState &state,
                                std::span<const std::uint32_t> delta,
                                std::size_t max_dim = kDefaultMaxDim);

/// Probability on basis states with some n_i > m_i - shell. Requires shell >= 1.
[[nodiscard]] double boundary_mass(const QuantumState &state,
                                   std::uint32_t shell);

/// Probability on basis states with n_mode > m_mode - shell.
[[nodiscard]] double boundary_mass(const QuantumState &state,
                                   std::uint32_t shell, std::size_t mode);

/// One line per basis state, `n1 n2 ... nK re im`, in linear-index order.
void write_state(std::ostream &out, const QuantumState &state);

} // namespace qadio
