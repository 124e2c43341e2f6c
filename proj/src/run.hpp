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

// Run settings keyed by the strings of the C interface, and execution of a
// configured run including its output files.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qadio/adiabatic.hpp"
#include "qadio/integrator.hpp"
#include "qadio/polynomial.hpp"
#include "qadio/spectral.hpp"

namespace qadio::run {

enum class Mode { Sweep, GapProfile, OracleCheck };

struct Settings {
    std::string equation;
    Mode mode = Mode::Sweep;
    std::string out_dir;
    /// Empty means (2, 0) for every unknown; one value is broadcast.
    std::vector<Complex> alphas;
    double eps = 1e-2;
    std::vector<std::uint32_t> initial_cutoff;
    double T0 = 10.0;
    double T_factor = 1.5;
    double T_max = 2000.0;
    std::vector<double> T_list;
    bool stop_on_majority = true;
    bool refine = true;
    bool confirm_next = true;
    IntegratorConfig integrator;
    GrowthPolicy growth;
    std::size_t jobs = 1;
    std::uint64_t shots = 0;
    std::uint64_t seed = 20260101;
    std::size_t top_k = 5;
    bool dump_state = false;
    bool step_log = false;
    std::size_t gap_points = 101;
    std::size_t gap_levels = 4;
    std::size_t oracle_cap = spectral::kDefaultOracleCap;
    std::uint32_t oracle_steps = 200;

    /// Keys are matched with '-' and '_' treated alike. Throws
    /// InvalidArgument for unknown keys or malformed values.
    void set(const std::string &key, const std::string &value);
    [[nodiscard]] std::string get(const std::string &key) const;
    /// `key = value` lines; blank lines and '#' comments are skipped.
    void load(const std::string &path);

    [[nodiscard]] SweepPolicy sweep_policy() const;
    [[nodiscard]] SweepConfig sweep_config(const DiophantinePolynomial &p) const;
};

enum class Outcome { Verdict, NoVerdict, DimensionCap, Report };

struct OracleReport {
    std::size_t dim = 0;
    double operator_max_abs_diff = 0.0;
    double T = 0.0;
    std::uint32_t steps = 0;
    double cn_vs_exact = 0.0;
    double norm_drift = 0.0;
};

struct Output {
    Outcome outcome = Outcome::Report;
    std::size_t num_unknowns = 0;
    std::optional<SweepResult> sweep;
    std::optional<spectral::GapProfile> gap;
    std::optional<OracleReport> oracle;
    std::string summary;
};

[[nodiscard]] Output execute(const Settings &settings);

/// Column header and one row of records.csv.
[[nodiscard]] std::string records_header(const DiophantinePolynomial &p,
                                         std::size_t top_k);
[[nodiscard]] std::string records_row(const RunRecord &rec,
                                      std::size_t top_k);

} // namespace qadio::run
