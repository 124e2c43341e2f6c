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
 * Outer adiabatic protocol: evolve for increasing total time T, read off the
 * final Fock-state distribution and decide solvability from the identified
 * ground state.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qadio/fock.hpp"
#include "qadio/integrator.hpp"
#include "qadio/polynomial.hpp"

namespace qadio {

struct StateProbability {
    MultiIndex n;
    double probability;
};

/// The basis state carrying more than half the probability, if any.
[[nodiscard]] std::optional<StateProbability>
identify_ground(const QuantumState &psi);

/// Majority identification from `shots` samples of |psi|^2.
[[nodiscard]] std::optional<StateProbability>
identify_ground_sampled(const QuantumState &psi, std::uint64_t shots,
                        std::uint64_t seed);

/// The k most probable basis states, descending; ties by linear index.
[[nodiscard]] std::vector<StateProbability> top_states(const QuantumState &psi,
                                                       std::size_t k);

struct Observables {
    std::vector<double> expectation_n;
    double expectation_hp = 0.0;
};

[[nodiscard]] Observables observables(const QuantumState &psi,
                                      const DiophantinePolynomial &p);

struct Verdict {
    MultiIndex ground;
    double ground_probability = 0.0;
    /// D(ground)^2 in exact arithmetic.
    BigInt energy;
    bool has_solution = false;
    std::optional<MultiIndex> witness;
};

/// E_g = D(ground)^2 exactly; a solution exists iff E_g = 0.
[[nodiscard]] Verdict decide(const MultiIndex &ground,
                             const DiophantinePolynomial &p,
                             double ground_probability = 1.0);

/// Strictly increasing list of total times.
struct SweepPolicy {
    std::vector<double> T_values;
    bool stop_on_majority = true;

    static SweepPolicy geometric(double T0, double factor, double T_max);
    static SweepPolicy explicit_list(std::vector<double> values);
    void validate() const;
};

struct SweepConfig {
    CoherentParams coherent;
    /// Per-mode lower bounds on the initial cutoffs; empty means none.
    std::vector<std::uint32_t> initial_cutoff_floor;
    IntegratorConfig integrator;
    GrowthPolicy growth;
    SweepPolicy sweep = SweepPolicy::geometric(10.0, 1.5, 2000.0);
    /// Recheck a majority at dt_tolerance / 4 before accepting it.
    bool refine = true;
    /// Also require the same majority at the next swept T. Majorities of
    /// excited states occur transiently and survive step refinement.
    bool confirm_next = true;
    std::size_t top_k = 5;
    std::size_t jobs = 1;
    /// > 0 switches identification to sampling this many shots.
    std::uint64_t shots = 0;
    std::uint64_t seed = 20260101;
    /// Optional per-T step observer (e.g. a step log writer).
    std::function<std::function<void(const StepReport &, const QuantumState &)>(
        double T)>
        step_observer;
};

struct RunRecord {
    double T = 0.0;
    std::vector<StateProbability> top;
    std::vector<double> expectation_n;
    double expectation_hp = 0.0;
    double final_norm = 0.0;
    std::size_t total_steps = 0;
    std::vector<std::uint32_t> final_cutoffs;
    /// Largest |norm drift| of a single step and over the whole run.
    double max_step_drift = 0.0;
    double cumulative_drift = 0.0;
    std::optional<StateProbability> majority;
    EvolutionStatus status = EvolutionStatus::Completed;
};

struct SingleRun {
    RunRecord record;
    QuantumState final_state;
};

/// Initial state for `p` under `config` (cutoffs, coherent state, deficit).
[[nodiscard]] CoherentState initial_state(const DiophantinePolynomial &p,
                                          const SweepConfig &config);

/// Evolve once for total time T and summarize.
[[nodiscard]] SingleRun run_single(const DiophantinePolynomial &p,
                                   const SweepConfig &config, double T);

enum class SweepStatus { Verdict, NoVerdict, DimensionCapReached };

struct SweepResult {
    std::vector<RunRecord> records;
    std::optional<Verdict> verdict;
    /// Total time of the run that produced the verdict.
    double verdict_T = 0.0;
    SweepStatus status = SweepStatus::NoVerdict;
    /// Majorities rejected by the refinement recheck, with the refined run.
    std::vector<RunRecord> unstable;
    /// Refined runs that confirmed the verdict.
    std::vector<RunRecord> confirmations;
    /// Runs at the next T that did not repeat a refined majority, paired
    /// with the T of that majority.
    std::vector<std::pair<double, RunRecord>> not_persistent;
    double initial_norm_deficit = 0.0;
    std::optional<QuantumState> last_state;
    std::string message;
};

[[nodiscard]] SweepResult sweep(const DiophantinePolynomial &p,
                                const SweepConfig &config);

/// `n1:n2:...=prob`
[[nodiscard]] std::string format_state(const StateProbability &sp);

} // namespace qadio
