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

#include "qadio/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qadio/error.hpp"

namespace qadio {

SchedulePoint::SchedulePoint(double s) : s_(s) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw Error(ErrorKind::InvalidArgument,
                    "schedule point must lie in [0, 1]");
    }
}

std::vector<double> diag_hp(const DiophantinePolynomial &p,
                            const TruncatedFockSpace &space) {
    if (p.num_unknowns() != space.num_modes()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "polynomial has " + std::to_string(p.num_unknowns()) +
                        " unknowns but the space has " +
                        std::to_string(space.num_modes()) + " modes");
    }
    static const BigInt limit = BigInt(1) << 53;
    std::vector<double> d(space.dim());
    MultiIndex n(space.num_modes(), 0);
    for (std::size_t idx = 0; idx < d.size(); ++idx) {
        const BigInt value = p.evaluate(n);
        const BigInt sq = value * value;
        if (sq > limit) {
            std::string where;
            for (auto v : n) {
                where += (where.empty() ? "" : ",") + std::to_string(v);
            }
            throw Error(ErrorKind::Overflow,
                        "D(n)^2 exceeds 2^53 at n=(" + where + ")");
        }
        d[idx] = static_cast<double>(sq);
        for (std::size_t i = 0; i < n.size(); ++i) {
            if (n[i] < space.cutoff(i)) {
                ++n[i];
                break;
            }
            n[i] = 0;
        }
    }
    return d;
}

ProblemHamiltonian::ProblemHamiltonian(DiophantinePolynomial p,
                                       TruncatedFockSpace s)
    : polynomial(std::move(p)), space(std::move(s)),
      diagonal(diag_hp(polynomial, space)) {}

InterpolatedHamiltonian::InterpolatedHamiltonian(DiophantinePolynomial p,
                                                 std::vector<Complex> alphas,
                                                 TruncatedFockSpace space)
    : poly_(std::move(p)), alphas_(std::move(alphas)), alpha_sq_sum_(0.0),
      space_(std::move(space)) {
    if (alphas_.size() != poly_.num_unknowns()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "number of alphas does not match number of unknowns");
    }
    for (const auto &a : alphas_) {
        alpha_sq_sum_ += std::norm(a);
    }
    rebind(space_);
}

bool InterpolatedHamiltonian::is_real_symmetric() const noexcept {
    return std::all_of(alphas_.begin(), alphas_.end(),
                       [](const Complex &a) { return a.imag() == 0.0; });
}

void InterpolatedHamiltonian::rebind(TruncatedFockSpace space) {
    hp_diag_ = diag_hp(poly_, space);
    space_ = std::move(space);
    number_sum_.assign(space_.dim(), 0.0);
    for (std::size_t idx = 0; idx < number_sum_.size(); ++idx) {
        double sum = 0.0;
        for (std::size_t i = 0; i < space_.num_modes(); ++i) {
            sum += space_.occupation(idx, i);
        }
        number_sum_[idx] = sum;
    }
    ladder_.assign(space_.num_modes(), {});
    for (std::size_t i = 0; i < space_.num_modes(); ++i) {
        ladder_[i].resize(std::size_t{space_.cutoff(i)} + 1);
        for (std::size_t n = 0; n < ladder_[i].size(); ++n) {
            ladder_[i][n] = alphas_[i] * std::sqrt(n + 1.0);
        }
    }
}

double InterpolatedHamiltonian::apply_initial(std::span<const Complex> in,
                                              std::span<Complex> out) const {
    return apply(0.0, in, out);
}

double InterpolatedHamiltonian::apply(double s, std::span<const Complex> in,
                                      std::span<Complex> out) const {
    const std::size_t dim = space_.dim();
    if (in.size() != dim || out.size() != dim) {
        throw Error(ErrorKind::DimensionMismatch,
                    "state dimension does not match the Hamiltonian space");
    }
    const double w = 1.0 - s;
    for (std::size_t idx = 0; idx < dim; ++idx) {
        out[idx] = (w * (number_sum_[idx] + alpha_sq_sum_) +
                    s * hp_diag_[idx]) *
                   in[idx];
    }
    if (w == 0.0) {
        return 0.0;
    }
    double leakage = 0.0;
    for (std::size_t i = 0; i < space_.num_modes(); ++i) {
        if (alphas_[i] == Complex{}) {
            continue;
        }
        // ladder_[i][n] = alpha_i sqrt(n+1) couples |n> -> |n+1> through
        // -alpha a^+, and its conjugate couples |n+1> -> |n> through
        // -conj(alpha) a.
        const auto &ladder = ladder_[i];
        const std::size_t stride = space_.stride(i);
        const std::uint32_t m = space_.cutoff(i);
        const std::size_t block = stride * (std::size_t{m} + 1);
        if (stride == 1) {
            for (std::size_t base = 0; base < dim; base += block) {
                const Complex *src = in.data() + base;
                Complex *dst = out.data() + base;
                for (std::uint32_t n = 0; n < m; ++n) {
                    const Complex up = w * ladder[n];
                    dst[n + 1] -= up * src[n];
                    dst[n] -= std::conj(up) * src[n + 1];
                }
                leakage += std::norm(w * ladder[m] * src[m]);
            }
            continue;
        }
        for (std::size_t base = 0; base < dim; base += block) {
            for (std::uint32_t n = 0; n < m; ++n) {
                const Complex up = w * ladder[n];
                const Complex down = std::conj(up);
                const Complex *lo_in = in.data() + base + n * stride;
                const Complex *hi_in = lo_in + stride;
                Complex *lo_out = out.data() + base + n * stride;
                Complex *hi_out = lo_out + stride;
                for (std::size_t k = 0; k < stride; ++k) {
                    hi_out[k] -= up * lo_in[k];
                    lo_out[k] -= down * hi_in[k];
                }
            }
            const double edge = std::norm(w * ladder[m]);
            const Complex *top = in.data() + base + std::size_t{m} * stride;
            for (std::size_t k = 0; k < stride; ++k) {
                leakage += edge * std::norm(top[k]);
            }
        }
    }
    return leakage;
}

void InterpolatedHamiltonian::diagonal(double s, std::span<double> out) const {
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
        out[idx] = (1.0 - s) * (number_sum_[idx] + alpha_sq_sum_) +
                   s * hp_diag_[idx];
    }
}

Applied apply_hi(std::span<const Complex> alphas, const QuantumState &psi) {
    if (alphas.size() != psi.space().num_modes()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "number of alphas does not match number of modes");
    }
    // H_I does not involve D; a zero polynomial over placeholder names binds
    // the operator without evaluating anything of interest.
    std::vector<std::string> names;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        names.push_back("x" + std::to_string(i + 1));
    }
    const InterpolatedHamiltonian h(
        DiophantinePolynomial(std::move(names), {}),
        std::vector<Complex>(alphas.begin(), alphas.end()), psi.space());
    QuantumState out(psi.space());
    const double leak = h.apply_initial(psi.amplitudes(), out.amplitudes());
    return {std::move(out), leak};
}

Applied apply_h(SchedulePoint s, const ProblemHamiltonian &hp,
                const InitialHamiltonian &hi, const QuantumState &psi) {
    if (!(hp.space == psi.space())) {
        throw Error(ErrorKind::DimensionMismatch,
                    "state space does not match the problem Hamiltonian");
    }
    Applied initial = apply_hi(hi.alphas, psi);
    const double w = 1.0 - s.value();
    auto out = initial.state.amplitudes();
    const auto in = psi.amplitudes();
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
        out[idx] = w * out[idx] + s.value() * hp.diagonal[idx] * in[idx];
    }
    initial.leakage *= w * w;
    return initial;
}

} // namespace qadio
