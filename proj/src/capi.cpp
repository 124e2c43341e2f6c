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

#include "qadio/qadio.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <limits>
#include <new>
#include <span>
#include <string>

#include "qadio/error.hpp"
#include "qadio/fock.hpp"
#include "qadio/polynomial.hpp"
#include "run.hpp"

struct qadio_polynomial {
    qadio::DiophantinePolynomial poly;
};

struct qadio_config {
    qadio::run::Settings settings;
};

struct qadio_result {
    qadio::run::Output output;
};

namespace {

thread_local std::string last_error;

qadio_status status_of(qadio::ErrorKind kind) {
    using qadio::ErrorKind;
    switch (kind) {
    case ErrorKind::InvalidArgument:
        return QADIO_ERR_INVALID_ARGUMENT;
    case ErrorKind::Syntax:
        return QADIO_ERR_SYNTAX;
    case ErrorKind::DimensionMismatch:
        return QADIO_ERR_DIMENSION_MISMATCH;
    case ErrorKind::Overflow:
        return QADIO_ERR_OVERFLOW;
    case ErrorKind::ResourceExhausted:
        return QADIO_ERR_RESOURCE_EXHAUSTED;
    case ErrorKind::SolverDivergence:
        return QADIO_ERR_SOLVER_DIVERGENCE;
    case ErrorKind::StepUnderflow:
        return QADIO_ERR_STEP_UNDERFLOW;
    case ErrorKind::Eigensolver:
        return QADIO_ERR_EIGENSOLVER;
    case ErrorKind::Io:
        return QADIO_ERR_IO;
    }
    return QADIO_ERR_INTERNAL;
}

qadio_status fail(qadio_status status, std::string message) {
    last_error = std::move(message);
    return status;
}

/// Runs `body`, translating exceptions into status codes.
template <typename F> qadio_status guarded(F &&body) {
    try {
        body();
        return QADIO_OK;
    } catch (const qadio::Error &e) {
        return fail(status_of(e.kind()), e.what());
    } catch (const std::bad_alloc &) {
        return fail(QADIO_ERR_RESOURCE_EXHAUSTED, "out of memory");
    } catch (const std::exception &e) {
        return fail(QADIO_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(QADIO_ERR_INTERNAL, "unknown error");
    }
}

char *dup_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

qadio_status null_argument(const char *what) {
    return fail(QADIO_ERR_INVALID_ARGUMENT,
                std::string(what) + " must not be NULL");
}

const qadio::RunRecord *record_at(const qadio_result *r, size_t i) {
    if (r == nullptr || !r->output.sweep ||
        i >= r->output.sweep->records.size()) {
        return nullptr;
    }
    return &r->output.sweep->records[i];
}

} // namespace

extern "C" {

const char *qadio_version(void) { return "0.1.0"; }

const char *qadio_last_error(void) { return last_error.c_str(); }

const char *qadio_status_name(qadio_status status) {
    switch (status) {
    case QADIO_OK:
        return "ok";
    case QADIO_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case QADIO_ERR_SYNTAX:
        return "syntax error";
    case QADIO_ERR_DIMENSION_MISMATCH:
        return "dimension mismatch";
    case QADIO_ERR_OVERFLOW:
        return "overflow";
    case QADIO_ERR_RESOURCE_EXHAUSTED:
        return "resource exhausted";
    case QADIO_ERR_SOLVER_DIVERGENCE:
        return "solver divergence";
    case QADIO_ERR_STEP_UNDERFLOW:
        return "step underflow";
    case QADIO_ERR_EIGENSOLVER:
        return "eigensolver failure";
    case QADIO_ERR_IO:
        return "i/o error";
    case QADIO_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

void qadio_string_free(char *s) { std::free(s); }

qadio_status qadio_polynomial_parse(const char *text, qadio_polynomial **out) {
    if (text == nullptr || out == nullptr) {
        return null_argument("text and out");
    }
    *out = nullptr;
    return guarded([&] { *out = new qadio_polynomial{qadio::parse(text)}; });
}

void qadio_polynomial_free(qadio_polynomial *p) { delete p; }

size_t qadio_polynomial_num_unknowns(const qadio_polynomial *p) {
    return p ? p->poly.num_unknowns() : 0;
}

const char *qadio_polynomial_unknown(const qadio_polynomial *p, size_t i) {
    if (p == nullptr || i >= p->poly.num_unknowns()) {
        return nullptr;
    }
    return p->poly.unknowns()[i].c_str();
}

qadio_status qadio_polynomial_to_string(const qadio_polynomial *p,
                                        char **out) {
    if (p == nullptr || out == nullptr) {
        return null_argument("polynomial and out");
    }
    return guarded([&] { *out = dup_string(p->poly.to_string()); });
}

qadio_status qadio_polynomial_evaluate(const qadio_polynomial *p,
                                       const uint32_t *n, size_t count,
                                       char **out) {
    if (p == nullptr || out == nullptr || (n == nullptr && count > 0)) {
        return null_argument("polynomial, n and out");
    }
    return guarded([&] {
        const qadio::BigInt value =
            p->poly.evaluate(std::span<const std::uint32_t>(n, count));
        *out = dup_string(value.str());
    });
}

qadio_status qadio_min_truncation(double alpha_re, double alpha_im, double eps,
                                  uint32_t *out) {
    if (out == nullptr) {
        return null_argument("out");
    }
    return guarded([&] {
        *out = qadio::min_truncation(qadio::Complex(alpha_re, alpha_im), eps);
    });
}

qadio_status qadio_config_new(qadio_config **out) {
    if (out == nullptr) {
        return null_argument("out");
    }
    return guarded([&] { *out = new qadio_config{}; });
}

void qadio_config_free(qadio_config *cfg) { delete cfg; }

qadio_status qadio_config_set(qadio_config *cfg, const char *key,
                              const char *value) {
    if (cfg == nullptr || key == nullptr || value == nullptr) {
        return null_argument("config, key and value");
    }
    return guarded([&] { cfg->settings.set(key, value); });
}

qadio_status qadio_config_get(const qadio_config *cfg, const char *key,
                              char **out) {
    if (cfg == nullptr || key == nullptr || out == nullptr) {
        return null_argument("config, key and out");
    }
    return guarded([&] { *out = dup_string(cfg->settings.get(key)); });
}

qadio_status qadio_config_load(qadio_config *cfg, const char *path) {
    if (cfg == nullptr || path == nullptr) {
        return null_argument("config and path");
    }
    return guarded([&] { cfg->settings.load(path); });
}

qadio_status qadio_run(const qadio_config *cfg, qadio_result **out) {
    if (cfg == nullptr || out == nullptr) {
        return null_argument("config and out");
    }
    *out = nullptr;
    return guarded([&] {
        *out = new qadio_result{qadio::run::execute(cfg->settings)};
    });
}

void qadio_result_free(qadio_result *r) { delete r; }

qadio_outcome qadio_result_outcome(const qadio_result *r) {
    if (r == nullptr) {
        return QADIO_OUTCOME_NO_VERDICT;
    }
    switch (r->output.outcome) {
    case qadio::run::Outcome::Verdict:
        return QADIO_OUTCOME_VERDICT;
    case qadio::run::Outcome::NoVerdict:
        return QADIO_OUTCOME_NO_VERDICT;
    case qadio::run::Outcome::DimensionCap:
        return QADIO_OUTCOME_DIMENSION_CAP;
    case qadio::run::Outcome::Report:
        return QADIO_OUTCOME_REPORT;
    }
    return QADIO_OUTCOME_NO_VERDICT;
}

int qadio_result_exit_code(const qadio_result *r) {
    if (r == nullptr) {
        return 1;
    }
    const qadio_outcome o = qadio_result_outcome(r);
    return (o == QADIO_OUTCOME_VERDICT || o == QADIO_OUTCOME_REPORT) ? 0 : 2;
}

const char *qadio_result_summary(const qadio_result *r) {
    return r ? r->output.summary.c_str() : "";
}

int qadio_result_has_solution(const qadio_result *r) {
    return (r && r->output.sweep && r->output.sweep->verdict &&
            r->output.sweep->verdict->has_solution)
               ? 1
               : 0;
}

qadio_status qadio_result_ground(const qadio_result *r, uint32_t *n,
                                 size_t count) {
    if (r == nullptr || n == nullptr) {
        return null_argument("result and n");
    }
    if (!r->output.sweep || !r->output.sweep->verdict) {
        return fail(QADIO_ERR_INVALID_ARGUMENT, "the run has no verdict");
    }
    const auto &ground = r->output.sweep->verdict->ground;
    if (count != ground.size()) {
        return fail(QADIO_ERR_DIMENSION_MISMATCH,
                    "expected " + std::to_string(ground.size()) +
                        " occupation numbers");
    }
    std::copy(ground.begin(), ground.end(), n);
    return QADIO_OK;
}

double qadio_result_ground_probability(const qadio_result *r) {
    if (r == nullptr || !r->output.sweep || !r->output.sweep->verdict) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return r->output.sweep->verdict->ground_probability;
}

qadio_status qadio_result_energy(const qadio_result *r, char **out) {
    if (r == nullptr || out == nullptr) {
        return null_argument("result and out");
    }
    if (!r->output.sweep || !r->output.sweep->verdict) {
        return fail(QADIO_ERR_INVALID_ARGUMENT, "the run has no verdict");
    }
    return guarded(
        [&] { *out = dup_string(r->output.sweep->verdict->energy.str()); });
}

size_t qadio_result_num_records(const qadio_result *r) {
    return (r && r->output.sweep) ? r->output.sweep->records.size() : 0;
}

double qadio_result_record_T(const qadio_result *r, size_t i) {
    const auto *rec = record_at(r, i);
    return rec ? rec->T : std::numeric_limits<double>::quiet_NaN();
}

double qadio_result_record_top_probability(const qadio_result *r, size_t i) {
    const auto *rec = record_at(r, i);
    return (rec && !rec->top.empty())
               ? rec->top.front().probability
               : std::numeric_limits<double>::quiet_NaN();
}

double qadio_result_record_norm(const qadio_result *r, size_t i) {
    const auto *rec = record_at(r, i);
    return rec ? rec->final_norm : std::numeric_limits<double>::quiet_NaN();
}

double qadio_result_min_gap(const qadio_result *r) {
    return (r && r->output.gap) ? r->output.gap->min_gap
                                : std::numeric_limits<double>::quiet_NaN();
}

double qadio_result_min_gap_s(const qadio_result *r) {
    return (r && r->output.gap) ? r->output.gap->min_gap_s
                                : std::numeric_limits<double>::quiet_NaN();
}

} // extern "C"
