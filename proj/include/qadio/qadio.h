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

/*
 * C interface to the qadio adiabatic Diophantine solver.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Every fallible call returns a qadio_status; on failure the message is
 * available from qadio_last_error() on the calling thread until the next
 * failing call. Strings returned through `char **` outputs are allocated by
 * the library and must be released with qadio_string_free().
 */

#ifndef QADIO_QADIO_H
#define QADIO_QADIO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QADIO_API __declspec(dllexport)
#else
#define QADIO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qadio_status {
    QADIO_OK = 0,
    QADIO_ERR_INVALID_ARGUMENT = 1,
    QADIO_ERR_SYNTAX = 2,
    QADIO_ERR_DIMENSION_MISMATCH = 3,
    QADIO_ERR_OVERFLOW = 4,
    QADIO_ERR_RESOURCE_EXHAUSTED = 5,
    QADIO_ERR_SOLVER_DIVERGENCE = 6,
    QADIO_ERR_STEP_UNDERFLOW = 7,
    QADIO_ERR_EIGENSOLVER = 8,
    QADIO_ERR_IO = 9,
    QADIO_ERR_INTERNAL = 10
} qadio_status;

/* Outcome of a completed run. */
typedef enum qadio_outcome {
    QADIO_OUTCOME_VERDICT = 0,
    QADIO_OUTCOME_NO_VERDICT = 1,
    QADIO_OUTCOME_DIMENSION_CAP = 2,
    /* gap-profile and oracle-check modes */
    QADIO_OUTCOME_REPORT = 3
} qadio_outcome;

typedef struct qadio_polynomial qadio_polynomial;
typedef struct qadio_config qadio_config;
typedef struct qadio_result qadio_result;

QADIO_API const char *qadio_version(void);
QADIO_API const char *qadio_last_error(void);
QADIO_API const char *qadio_status_name(qadio_status status);
QADIO_API void qadio_string_free(char *s);

/* ---- polynomials ------------------------------------------------------ */

QADIO_API qadio_status qadio_polynomial_parse(const char *text,
                                              qadio_polynomial **out);
QADIO_API void qadio_polynomial_free(qadio_polynomial *p);
QADIO_API size_t qadio_polynomial_num_unknowns(const qadio_polynomial *p);
/* Name of unknown `i` in first-appearance order; owned by the handle. */
QADIO_API const char *qadio_polynomial_unknown(const qadio_polynomial *p,
                                               size_t i);
QADIO_API qadio_status qadio_polynomial_to_string(const qadio_polynomial *p,
                                                  char **out);
/* D(n) as a decimal string; `count` must equal the number of unknowns. */
QADIO_API qadio_status qadio_polynomial_evaluate(const qadio_polynomial *p,
                                                 const uint32_t *n,
                                                 size_t count, char **out);

/* Smallest cutoff m whose truncated coherent state misses unit norm by at
 * most eps. */
QADIO_API qadio_status qadio_min_truncation(double alpha_re, double alpha_im,
                                            double eps, uint32_t *out);

/* ---- run configuration ------------------------------------------------ */

/*
 * Keys accepted by qadio_config_set (values are strings):
 *
 *   equation            the Diophantine equation, e.g. "x*y + x + 4*y - 11"
 *   mode                sweep | gap-profile | oracle-check
 *   out_dir             output directory (created if missing)
 *   alpha               "re,im" pairs separated by ';' (one is broadcast)
 *   eps                 coherent-state truncation tolerance
 *   initial_cutoff      cutoff floor, one value or one per unknown
 *   T0, T_factor, T_max geometric sweep of total times
 *   T_list              explicit comma-separated total times
 *   stop_on_majority    stop the sweep at the first stable majority
 *   refine              recheck majorities at a quarter of dt_tol
 *   confirm_next        also require the same majority at the next T
 *   dt_initial, dt_tol, dt_min, dt_max
 *   solver_tol, solver_max_iter, energy_shift
 *   growth              threshold | always | fixed
 *   growth_threshold, growth_increment, growth_shell, max_dim
 *   jobs, shots, seed, top_k
 *   dump_state          write the final state of the last run
 *   step_log            write one step-log file per T
 *   gap_points, gap_levels, oracle_cap, oracle_steps
 *
 * Booleans accept true/false, yes/no, on/off and 1/0.
 */
QADIO_API qadio_status qadio_config_new(qadio_config **out);
QADIO_API void qadio_config_free(qadio_config *cfg);
QADIO_API qadio_status qadio_config_set(qadio_config *cfg, const char *key,
                                        const char *value);
/* Current value of `key` in canonical form. */
QADIO_API qadio_status qadio_config_get(const qadio_config *cfg,
                                        const char *key, char **out);
/* Apply a `key = value` file; '#' starts a comment. */
QADIO_API qadio_status qadio_config_load(qadio_config *cfg, const char *path);

/* ---- runs --------------------------------------------------------------- */

/*
 * Execute the configured mode and, when out_dir is set, write its files:
 * records.csv and verdict.txt (sweep), gap.csv (gap-profile), oracle.csv
 * (oracle-check), plus optional steps_T<T>.txt step logs and a state.txt dump.
 */
QADIO_API qadio_status qadio_run(const qadio_config *cfg, qadio_result **out);
QADIO_API void qadio_result_free(qadio_result *r);

QADIO_API qadio_outcome qadio_result_outcome(const qadio_result *r);
/* 0 on verdict or report, 2 when no verdict was reached, 1 for NULL. */
QADIO_API int qadio_result_exit_code(const qadio_result *r);
/* Human-readable summary; owned by the handle. */
QADIO_API const char *qadio_result_summary(const qadio_result *r);

QADIO_API int qadio_result_has_solution(const qadio_result *r);
/* Copies the identified ground state; `count` must equal the number of
 * unknowns. Fails when there is no verdict. */
QADIO_API qadio_status qadio_result_ground(const qadio_result *r,
                                           uint32_t *n, size_t count);
QADIO_API double qadio_result_ground_probability(const qadio_result *r);
/* E_g = D(ground)^2 as a decimal string. */
QADIO_API qadio_status qadio_result_energy(const qadio_result *r, char **out);

QADIO_API size_t qadio_result_num_records(const qadio_result *r);
QADIO_API double qadio_result_record_T(const qadio_result *r, size_t i);
QADIO_API double qadio_result_record_top_probability(const qadio_result *r,
                                                     size_t i);
QADIO_API double qadio_result_record_norm(const qadio_result *r, size_t i);

/* Smallest interior spectral gap (gap-profile mode), NaN otherwise. */
QADIO_API double qadio_result_min_gap(const qadio_result *r);
QADIO_API double qadio_result_min_gap_s(const qadio_result *r);

#ifdef __cplusplus
}
#endif

#endif /* QADIO_QADIO_H */
