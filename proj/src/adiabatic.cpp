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

#include "qadio/adiabatic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <future>
#include <numeric>
#include <random>

#include "qadio/error.hpp"

namespace qadio {

std::optional<StateProbability> identify_ground(const QuantumState &psi) {
    const auto amps = psi.amplitudes();
    std::optional<std::size_t> found;
    bool tied = false;
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        const double prob = std::norm(amps[idx]);
        if (prob > 0.5) {
            // Two entries above 1/2 would mean the state is not normalized;
            // rounding can only push an exact half pair marginally over.
            if (found) {
                if (std::min(prob, std::norm(amps[*found])) > 0.5 + 1e-9) {
                    throw Error(ErrorKind::InvalidArgument,
                                "two basis states exceed probability 1/2; "
                                "state is not normalized");
                }
                tied = true;
            }
            found = idx;
        }
    }
    if (!found || tied) {
        return std::nullopt;
    }
    return StateProbability{psi.space().multi_index(*found),
                            std::norm(amps[*found])};
}

std::optional<StateProbability>
identify_ground_sampled(const QuantumState &psi, std::uint64_t shots,
                        std::uint64_t seed) {
    if (shots == 0) {
        throw Error(ErrorKind::InvalidArgument, "shots must be positive");
    }
    const auto amps = psi.amplitudes();
    std::vector<double> weights(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) {
        weights[i] = std::norm(amps[i]);
    }
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> draw(weights.begin(),
                                                 weights.end());
    std::vector<std::uint64_t> counts(amps.size(), 0);
    for (std::uint64_t k = 0; k < shots; ++k) {
        ++counts[draw(rng)];
    }
    const auto best = std::max_element(counts.begin(), counts.end());
    const double freq =
        static_cast<double>(*best) / static_cast<double>(shots);
    if (freq <= 0.5) {
        return std::nullopt;
    }
    return StateProbability{
        psi.space().multi_index(
            static_cast<std::size_t>(best - counts.begin())),
        freq};
}

std::vector<StateProbability> top_states(const QuantumState &psi,
                                         std::size_t k) {
    const auto amps = psi.amplitudes();
    std::vector<std::size_t> order(amps.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    k = std::min(k, order.size());
    std::partial_sort(order.begin(),
                      order.begin() + static_cast<std::ptrdiff_t>(k),
                      order.end(), [&](std::size_t a, std::size_t b) {
                          const double pa = std::norm(amps[a]);
                          const double pb = std::norm(amps[b]);
                          return pa != pb ? pa > pb : a < b;
                      });
    std::vector<StateProbability> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        out.push_back({psi.space().multi_index(order[i]),
                       std::norm(amps[order[i]])});
    }
    return out;
}

Observables observables(const QuantumState &psi,
                        const DiophantinePolynomial &p) {
    const auto &space = psi.space();
    if (p.num_unknowns() != space.num_modes()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "polynomial and state have different numbers of modes");
    }
    Observables obs;
    obs.expectation_n.assign(space.num_modes(), 0.0);
    const auto amps = psi.amplitudes();
    MultiIndex n(space.num_modes(), 0);
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        const double prob = std::norm(amps[idx]);
        if (prob != 0.0) {
            for (std::size_t i = 0; i < n.size(); ++i) {
                obs.expectation_n[i] += n[i] * prob;
            }
            const BigInt value = p.evaluate(n);
            obs.expectation_hp += static_cast<double>(value * value) * prob;
        }
        for (std::size_t i = 0; i < n.size(); ++i) {
            if (n[i] < space.cutoff(i)) {
                ++n[i];
                break;
            }
            n[i] = 0;
        }
    }
    return obs;
}

Verdict decide(const MultiIndex &ground, const DiophantinePolynomial &p,
               double ground_probability) {
    const BigInt value = p.evaluate(ground);
    Verdict v;
    v.ground = ground;
    v.ground_probability = ground_probability;
    v.energy = value * value;
    v.has_solution = v.energy == 0;
    if (v.has_solution) {
        v.witness = ground;
    }
    return v;
}

SweepPolicy SweepPolicy::geometric(double T0, double factor, double T_max) {
    if (!(T0 > 0.0) || !(factor > 1.0) || !(T_max >= T0)) {
        throw Error(ErrorKind::InvalidArgument,
                    "geometric sweep needs T0 > 0, factor > 1, T_max >= T0");
    }
    SweepPolicy policy;
    for (double T = T0; T <= T_max * (1.0 + 1e-12); T *= factor) {
        policy.T_values.push_back(T);
    }
    return policy;
}

SweepPolicy SweepPolicy::explicit_list(std::vector<double> values) {
    SweepPolicy policy;
    policy.T_values = std::move(values);
    policy.validate();
    return policy;
}

void SweepPolicy::validate() const {
    if (T_values.empty()) {
        throw Error(ErrorKind::InvalidArgument, "sweep has no T values");
    }
    for (std::size_t i = 0; i < T_values.size(); ++i) {
        if (!(T_values[i] > 0.0) ||
            (i > 0 && !(T_values[i] > T_values[i - 1]))) {
            throw Error(ErrorKind::InvalidArgument,
                        "T values must be positive and strictly increasing");
        }
    }
}

CoherentState initial_state(const DiophantinePolynomial &p,
                            const SweepConfig &config) {
    const std::size_t k = p.num_unknowns();
    if (config.coherent.alphas.size() != k) {
        throw Error(ErrorKind::InvalidArgument,
                    "expected " + std::to_string(k) + " alpha values, got " +
                        std::to_string(config.coherent.alphas.size()));
    }
    auto cutoffs = min_cutoffs(config.coherent);
    if (!config.initial_cutoff_floor.empty()) {
        if (config.initial_cutoff_floor.size() != k &&
            config.initial_cutoff_floor.size() != 1) {
            throw Error(ErrorKind::InvalidArgument,
                        "initial cutoff needs one value or one per unknown");
        }
        for (std::size_t i = 0; i < k; ++i) {
            const auto floor = config.initial_cutoff_floor.size() == 1
                                   ? config.initial_cutoff_floor[0]
                                   : config.initial_cutoff_floor[i];
            cutoffs[i] = std::max(cutoffs[i], floor);
        }
    }
    return coherent_state(config.coherent, TruncatedFockSpace(cutoffs));
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, double T) {
    std::uint64_t z = seed ^ std::bit_cast<std::uint64_t>(T);
    z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31U);
}

} // namespace

SingleRun run_single(const DiophantinePolynomial &p, const SweepConfig &config,
                     double T) {
    const CoherentState init = initial_state(p, config);
    EvolutionHooks hooks;
    hooks.growth = config.growth;
    if (config.step_observer) {
        hooks.on_step = config.step_observer(T);
    }
    EvolutionResult evo = evolve(init.state, T, p, config.coherent.alphas,
                                 config.integrator, hooks);

    RunRecord rec;
    rec.T = T;
    rec.status = evo.status;
    rec.total_steps = evo.steps.size();
    rec.final_norm = evo.state.norm();
    rec.final_cutoffs = evo.state.space().cutoffs();
    rec.top = top_states(evo.state, config.top_k);
    const Observables obs = observables(evo.state, p);
    rec.expectation_n = obs.expectation_n;
    rec.expectation_hp = obs.expectation_hp;
    for (const auto &s : evo.steps) {
        rec.max_step_drift = std::max(rec.max_step_drift,
                                      std::fabs(s.norm_drift));
    }
    rec.cumulative_drift = std::fabs(rec.final_norm - init.state.norm());
    if (evo.status == EvolutionStatus::Completed) {
        rec.majority = config.shots > 0
                           ? identify_ground_sampled(evo.state, config.shots,
                                                     mix_seed(config.seed, T))
                           : identify_ground(evo.state);
    }
    return {std::move(rec), std::move(evo.state)};
}

SweepResult sweep(const DiophantinePolynomial &p, const SweepConfig &config) {
    config.sweep.validate();
    config.integrator.validate();
    SweepResult result;
    result.initial_norm_deficit = initial_state(p, config).norm_deficit;

    SweepConfig refined = config;
    refined.integrator.dt_tolerance = config.integrator.dt_tolerance / 4.0;
    refined.step_observer = nullptr;

    // A refined majority waiting for the next T.
    std::optional<RunRecord> pending;
    const auto accept = [&](const RunRecord &rec) {
        result.verdict = decide(rec.majority->n, p, rec.majority->probability);
        result.verdict_T = rec.T;
        result.status = SweepStatus::Verdict;
    };

    const auto &Ts = config.sweep.T_values;
    const std::size_t jobs = std::max<std::size_t>(1, config.jobs);
    bool stop = false;
    for (std::size_t begin = 0; begin < Ts.size() && !stop; begin += jobs) {
        const std::size_t end = std::min(Ts.size(), begin + jobs);
        std::vector<SingleRun> batch;
        if (end - begin == 1) {
            batch.push_back(run_single(p, config, Ts[begin]));
        } else {
            std::vector<std::future<SingleRun>> futures;
            for (std::size_t i = begin; i < end; ++i) {
                futures.push_back(std::async(std::launch::async, run_single,
                                             std::cref(p), std::cref(config),
                                             Ts[i]));
            }
            for (auto &f : futures) {
                batch.push_back(f.get());
            }
        }

        for (auto &run : batch) {
            result.records.push_back(run.record);
            result.last_state = std::move(run.final_state);
            const RunRecord &rec = result.records.back();
            if (rec.status == EvolutionStatus::DimensionCapReached) {
                if (!result.verdict) {
                    result.status = SweepStatus::DimensionCapReached;
                }
                result.message = "dimension cap reached at T=" +
                                 std::to_string(rec.T);
                stop = true;
                break;
            }
            if (result.verdict) {
                continue;
            }
            if (pending) {
                if (rec.majority && rec.majority->n == pending->majority->n) {
                    accept(*pending);
                    if (config.sweep.stop_on_majority) {
                        stop = true;
                        break;
                    }
                    continue;
                }
                result.not_persistent.emplace_back(pending->T, rec);
                pending.reset();
            }
            if (!rec.majority) {
                continue;
            }
            bool stable = true;
            if (config.refine) {
                SingleRun check = run_single(p, refined, rec.T);
                stable = check.record.majority &&
                         check.record.majority->n == rec.majority->n;
                (stable ? result.confirmations : result.unstable)
                    .push_back(std::move(check.record));
            }
            if (!stable) {
                continue;
            }
            if (config.confirm_next) {
                pending = rec;
                continue;
            }
            accept(rec);
            if (config.sweep.stop_on_majority) {
                stop = true;
                break;
            }
        }
    }
    if (pending && !result.verdict &&
        result.status == SweepStatus::NoVerdict) {
        result.message = "majority " + format_state(*pending->majority) +
                         " at T=" + std::to_string(pending->T) +
                         " has no larger T to confirm it";
    }
    if (result.status == SweepStatus::NoVerdict && result.message.empty()) {
        result.message = "no stable majority within the sweep budget";
    }
    return result;
}

std::string format_state(const StateProbability &sp) {
    std::string out;
    for (std::size_t i = 0; i < sp.n.size(); ++i) {
        out += (i ? ":" : "") + std::to_string(sp.n[i]);
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "=%.10f", sp.probability);
    return out + buf;
}

} // namespace qadio
