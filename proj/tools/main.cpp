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

// qadio command-line front end. Everything goes through the C interface.

#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "qadio/qadio.h"

namespace {

std::string join(const std::vector<std::string> &items, const char *sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        out += (i ? sep : "") + items[i];
    }
    return out;
}

int report_error(qadio_status status, const std::string &context) {
    std::fprintf(stderr, "qadio: %s: %s: %s\n", context.c_str(),
                 qadio_status_name(status), qadio_last_error());
    return 1;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Decide solvability of a Diophantine equation in "
                 "nonnegative integers by simulated quantum adiabatic "
                 "evolution."};
    app.set_version_flag("--version", std::string(qadio_version()));

    std::string config_file;
    std::vector<std::string> alphas;
    std::vector<std::string> cutoffs;
    std::vector<std::string> overrides;
    // Flags that map 1:1 onto configuration keys.
    std::map<std::string, std::string> simple;
    auto opt = [&simple](const char *key) -> std::string & {
        return simple[key];
    };

    app.add_option("--config", config_file,
                   "key = value file; command-line flags override it")
        ->check(CLI::ExistingFile);
    app.add_option("--equation,-e", opt("equation"),
                   "equation, e.g. \"x*y + x + 4*y - 11\"");
    app.add_option("--alpha", alphas,
                   "coherent amplitude \"re,im\"; repeat once per unknown "
                   "(default 2,0)");
    app.add_option("--eps", opt("eps"), "truncation tolerance (default 1e-2)");
    app.add_option("--initial-cutoff", cutoffs,
                   "initial cutoff floor; repeat once per unknown");
    app.add_option("--T0", opt("T0"), "first total time (default 10)");
    app.add_option("--T-factor", opt("T_factor"),
                   "geometric factor between total times (default 1.5)");
    app.add_option("--T-max", opt("T_max"), "largest total time (default 2000)");
    app.add_option("--T-list", opt("T_list"),
                   "explicit comma-separated total times");
    app.add_option("--dt-tol", opt("dt_tol"),
                   "step-doubling tolerance (default 1e-3)");
    app.add_option("--solver-tol", opt("solver_tol"),
                   "linear solver tolerance (default 1e-10)");
    bool grow_always = false;
    bool fixed_space = false;
    app.add_flag("--grow-always", grow_always,
                 "grow every mode by two before every step");
    app.add_flag("--fixed-space", fixed_space,
                 "never grow the truncated space");
    app.add_option("--growth-threshold", opt("growth_threshold"),
                   "boundary mass that triggers growth (default 1e-8)");
    app.add_option("--max-dim", opt("max_dim"),
                   "dimension cap for growth (default 2000000)");
    app.add_option("--jobs,-j", opt("jobs"), "concurrent runs (default 1)");
    app.add_option("--mode", opt("mode"), "sweep | gap-profile | oracle-check")
        ->check(CLI::IsMember({"sweep", "gap-profile", "oracle-check"}));
    app.add_option("--out-dir,-o", opt("out_dir"), "output directory");
    bool dump_state = false;
    bool step_log = false;
    bool no_stop = false;
    bool no_refine = false;
    bool no_confirm = false;
    app.add_flag("--dump-state", dump_state,
                 "write the final state of the last run to state.txt");
    app.add_flag("--step-log", step_log, "write one step log per T");
    app.add_flag("--no-stop", no_stop,
                 "run every T even after a verdict (figure series)");
    app.add_flag("--no-refine", no_refine,
                 "accept majorities without the refined recheck");
    app.add_flag("--no-confirm", no_confirm,
                 "accept majorities without repeating them at the next T");
    app.add_option("--shots", opt("shots"),
                   "identify by sampling this many shots (default exact)");
    app.add_option("--seed", opt("seed"), "sampling seed");
    app.add_option("--set", overrides,
                   "any configuration key as key=value (repeatable)");

    CLI11_PARSE(app, argc, argv);

    qadio_config *cfg = nullptr;
    if (const auto st = qadio_config_new(&cfg); st != QADIO_OK) {
        return report_error(st, "config");
    }
    struct Guard {
        qadio_config *cfg;
        qadio_result *result = nullptr;
        ~Guard() {
            qadio_result_free(result);
            qadio_config_free(cfg);
        }
    } guard{cfg};

    if (!config_file.empty()) {
        if (const auto st = qadio_config_load(cfg, config_file.c_str());
            st != QADIO_OK) {
            return report_error(st, config_file);
        }
    }

    std::vector<std::pair<std::string, std::string>> settings;
    for (const auto &[key, value] : simple) {
        if (!value.empty()) {
            settings.emplace_back(key, value);
        }
    }
    if (!alphas.empty()) {
        settings.emplace_back("alpha", join(alphas, ";"));
    }
    if (!cutoffs.empty()) {
        settings.emplace_back("initial_cutoff", join(cutoffs, ","));
    }
    if (grow_always && fixed_space) {
        std::fprintf(stderr,
                     "qadio: --grow-always and --fixed-space conflict\n");
        return 1;
    }
    if (grow_always) {
        settings.emplace_back("growth", "always");
    }
    if (fixed_space) {
        settings.emplace_back("growth", "fixed");
    }
    if (dump_state) {
        settings.emplace_back("dump_state", "true");
    }
    if (step_log) {
        settings.emplace_back("step_log", "true");
    }
    if (no_stop) {
        settings.emplace_back("stop_on_majority", "false");
    }
    if (no_confirm) {
        settings.emplace_back("confirm_next", "false");
    }
    if (no_refine) {
        settings.emplace_back("refine", "false");
    }
    for (const auto &kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "qadio: --set expects key=value, got '%s'\n",
                         kv.c_str());
            return 1;
        }
        settings.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
    }
    for (const auto &[key, value] : settings) {
        if (const auto st = qadio_config_set(cfg, key.c_str(), value.c_str());
            st != QADIO_OK) {
            return report_error(st, key);
        }
    }

    if (const auto st = qadio_run(cfg, &guard.result); st != QADIO_OK) {
        return report_error(st, "run");
    }
    const qadio_outcome outcome = qadio_result_outcome(guard.result);
    const char *label = "report";
    switch (outcome) {
    case QADIO_OUTCOME_VERDICT:
        label = "verdict";
        break;
    case QADIO_OUTCOME_NO_VERDICT:
        label = "no verdict";
        break;
    case QADIO_OUTCOME_DIMENSION_CAP:
        label = "no verdict (dimension cap)";
        break;
    case QADIO_OUTCOME_REPORT:
        break;
    }
    std::printf("%s: %s\n", label, qadio_result_summary(guard.result));
    return qadio_result_exit_code(guard.result);
}
