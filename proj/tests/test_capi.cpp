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

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <catch2/catch_amalgamated.hpp>

#include "qadio/qadio.h"

namespace fs = std::filesystem;

namespace {

struct Deleter {
    void operator()(qadio_polynomial *p) const { qadio_polynomial_free(p); }
    void operator()(qadio_config *c) const { qadio_config_free(c); }
    void operator()(qadio_result *r) const { qadio_result_free(r); }
    void operator()(char *s) const { qadio_string_free(s); }
};

template <class T> using Handle = std::unique_ptr<T, Deleter>;

std::string take(char *s) {
    Handle<char> owned(s);
    return s ? std::string(s) : std::string();
}

std::string slurp(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

fs::path scratch(const std::string &name) {
    const auto dir = fs::temp_directory_path() /
                     ("qadio_capi_" + std::to_string(::getpid()) + "_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

struct Cli {
    int exit_code;
    std::string output;
};

Cli run_cli(const std::string &args) {
    const std::string cmd = std::string("\"") + QADIO_CLI_PATH + "\" " + args + " 2>&1";
    FILE *pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buf[512];
    while (std::fgets(buf, sizeof buf, pipe) != nullptr) {
        output += buf;
    }
    const int status = ::pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

Handle<qadio_config> make_config() {
    qadio_config *c = nullptr;
    REQUIRE(qadio_config_new(&c) == QADIO_OK);
    return Handle<qadio_config>(c);
}

} // namespace

TEST_CASE("Library metadata", "[capi]") {
    CHECK(std::string(qadio_version()) == "0.1.0");
    CHECK(std::string(qadio_status_name(QADIO_OK)) == "ok");
    CHECK(std::string(qadio_status_name(QADIO_ERR_SYNTAX)) == "syntax error");
    CHECK(qadio_status_name(static_cast<qadio_status>(99)) != nullptr);
    qadio_string_free(nullptr);
}

TEST_CASE("Polynomial handles", "[capi]") {
    qadio_polynomial *raw = nullptr;
    REQUIRE(qadio_polynomial_parse("x*y + x + 4*y - 11", &raw) == QADIO_OK);
    Handle<qadio_polynomial> p(raw);
    REQUIRE(qadio_polynomial_num_unknowns(p.get()) == 2);
    CHECK(std::string(qadio_polynomial_unknown(p.get(), 0)) == "x");
    CHECK(std::string(qadio_polynomial_unknown(p.get(), 1)) == "y");
    CHECK(qadio_polynomial_unknown(p.get(), 2) == nullptr);

    char *text = nullptr;
    REQUIRE(qadio_polynomial_to_string(p.get(), &text) == QADIO_OK);
    CHECK(take(text) == "x*y + x + 4*y - 11");

    const uint32_t sol[] = {1, 2};
    const uint32_t origin[] = {0, 0};
    char *value = nullptr;
    REQUIRE(qadio_polynomial_evaluate(p.get(), sol, 2, &value) == QADIO_OK);
    CHECK(take(value) == "0");
    REQUIRE(qadio_polynomial_evaluate(p.get(), origin, 2, &value) == QADIO_OK);
    CHECK(take(value) == "-11");
    CHECK(qadio_polynomial_evaluate(p.get(), sol, 1, &value) ==
          QADIO_ERR_DIMENSION_MISMATCH);

    qadio_polynomial *bad = nullptr;
    CHECK(qadio_polynomial_parse("2x + 1", &bad) == QADIO_ERR_SYNTAX);
    CHECK(bad == nullptr);
    CHECK(std::string(qadio_last_error()).find("position 1") != std::string::npos);
    CHECK(qadio_polynomial_parse(nullptr, &bad) == QADIO_ERR_INVALID_ARGUMENT);
    CHECK(qadio_polynomial_parse("x", nullptr) == QADIO_ERR_INVALID_ARGUMENT);
    qadio_polynomial_free(nullptr);

    uint32_t m = 0;
    REQUIRE(qadio_min_truncation(2.0, 0.0, 1e-2, &m) == QADIO_OK);
    CHECK(m == 9);
    REQUIRE(qadio_min_truncation(0.0, 0.0, 1e-2, &m) == QADIO_OK);
    CHECK(m == 0);
    CHECK(qadio_min_truncation(2.0, 0.0, 0.0, &m) == QADIO_ERR_INVALID_ARGUMENT);
}

TEST_CASE("Configuration handles", "[capi]") {
    auto cfg = make_config();
    char *v = nullptr;
    REQUIRE(qadio_config_get(cfg.get(), "eps", &v) == QADIO_OK);
    CHECK(std::stod(take(v)) == 1e-2);
    REQUIRE(qadio_config_set(cfg.get(), "dt-tol", "2.5e-4") == QADIO_OK);
    REQUIRE(qadio_config_get(cfg.get(), "dt_tol", &v) == QADIO_OK);
    CHECK(std::stod(take(v)) == 2.5e-4);
    REQUIRE(qadio_config_set(cfg.get(), "confirm-next", "off") == QADIO_OK);
    REQUIRE(qadio_config_get(cfg.get(), "confirm_next", &v) == QADIO_OK);
    CHECK(take(v) == "false");
    CHECK(qadio_config_set(cfg.get(), "eps", "abc") == QADIO_ERR_INVALID_ARGUMENT);
    CHECK(qadio_config_set(cfg.get(), "no_such_key", "1") ==
          QADIO_ERR_INVALID_ARGUMENT);
    CHECK(qadio_config_set(cfg.get(), "refine", "maybe") ==
          QADIO_ERR_INVALID_ARGUMENT);
    CHECK(qadio_config_get(cfg.get(), "no_such_key", &v) ==
          QADIO_ERR_INVALID_ARGUMENT);

    const auto dir = scratch("config");
    {
        std::ofstream f(dir / "run.cfg");
        f << "# comment\nequation = x + 20\n\nT_list = 2, 4\nrefine = no\n";
    }
    REQUIRE(qadio_config_load(cfg.get(), (dir / "run.cfg").c_str()) == QADIO_OK);
    REQUIRE(qadio_config_get(cfg.get(), "equation", &v) == QADIO_OK);
    CHECK(take(v) == "x + 20");
    {
        std::ofstream f(dir / "bad.cfg");
        f << "equation = x\nthis line has no equals sign\n";
    }
    CHECK(qadio_config_load(cfg.get(), (dir / "bad.cfg").c_str()) ==
          QADIO_ERR_INVALID_ARGUMENT);
    CHECK(std::string(qadio_last_error()).find(":2") != std::string::npos);
    CHECK(qadio_config_load(cfg.get(), (dir / "missing.cfg").c_str()) == QADIO_ERR_IO);
    fs::remove_all(dir);
}

TEST_CASE("Runs through the C interface", "[capi]") {
    SECTION("verdict") {
        auto cfg = make_config();
        REQUIRE(qadio_config_set(cfg.get(), "equation", "x + 20") == QADIO_OK);
        qadio_result *raw = nullptr;
        REQUIRE(qadio_run(cfg.get(), &raw) == QADIO_OK);
        Handle<qadio_result> r(raw);
        CHECK(qadio_result_outcome(r.get()) == QADIO_OUTCOME_VERDICT);
        CHECK(qadio_result_exit_code(r.get()) == 0);
        CHECK(qadio_result_has_solution(r.get()) == 0);
        uint32_t ground = 99;
        REQUIRE(qadio_result_ground(r.get(), &ground, 1) == QADIO_OK);
        CHECK(ground == 0);
        CHECK(qadio_result_ground_probability(r.get()) > 0.5);
        char *e = nullptr;
        REQUIRE(qadio_result_energy(r.get(), &e) == QADIO_OK);
        CHECK(take(e) == "400");
        const size_t n = qadio_result_num_records(r.get());
        REQUIRE(n >= 1);
        CHECK(qadio_result_record_T(r.get(), 0) == 10.0);
        CHECK(qadio_result_record_top_probability(r.get(), n - 1) > 0.5);
        CHECK(std::fabs(qadio_result_record_norm(r.get(), 0) - 1.0) < 1e-6);
        CHECK(std::isnan(qadio_result_record_T(r.get(), n)));
        CHECK(std::isnan(qadio_result_min_gap(r.get())));
        CHECK(std::string(qadio_result_summary(r.get())).find("E_g=400, has_solution=false") !=
              std::string::npos);
    }
    SECTION("no verdict") {
        auto cfg = make_config();
        qadio_config_set(cfg.get(), "equation", "x + 20");
        qadio_config_set(cfg.get(), "T_list", "2,4");
        qadio_result *raw = nullptr;
        REQUIRE(qadio_run(cfg.get(), &raw) == QADIO_OK);
        Handle<qadio_result> r(raw);
        CHECK(qadio_result_outcome(r.get()) == QADIO_OUTCOME_NO_VERDICT);
        CHECK(qadio_result_exit_code(r.get()) == 2);
        CHECK(qadio_result_num_records(r.get()) == 2);
        uint32_t ground = 0;
        CHECK(qadio_result_ground(r.get(), &ground, 1) == QADIO_ERR_INVALID_ARGUMENT);
    }
    SECTION("gap profile") {
        auto cfg = make_config();
        qadio_config_set(cfg.get(), "equation", "x - 20");
        qadio_config_set(cfg.get(), "mode", "gap-profile");
        qadio_config_set(cfg.get(), "initial_cutoff", "25");
        qadio_result *raw = nullptr;
        REQUIRE(qadio_run(cfg.get(), &raw) == QADIO_OK);
        Handle<qadio_result> r(raw);
        CHECK(qadio_result_outcome(r.get()) == QADIO_OUTCOME_REPORT);
        CHECK(qadio_result_exit_code(r.get()) == 0);
        CHECK(qadio_result_min_gap(r.get()) > 0.0);
        CHECK(qadio_result_min_gap_s(r.get()) > 0.0);
        CHECK(qadio_result_min_gap_s(r.get()) < 1.0);
    }
    SECTION("errors") {
        auto cfg = make_config();
        qadio_result *raw = nullptr;
        CHECK(qadio_run(cfg.get(), &raw) == QADIO_ERR_INVALID_ARGUMENT);
        CHECK(raw == nullptr);
        qadio_config_set(cfg.get(), "equation", "x^40*y^40 + 1");
        qadio_config_set(cfg.get(), "initial_cutoff", "9");
        CHECK(qadio_run(cfg.get(), &raw) == QADIO_ERR_OVERFLOW);
        CHECK(qadio_run(nullptr, &raw) == QADIO_ERR_INVALID_ARGUMENT);
        CHECK(qadio_result_exit_code(nullptr) == 1);
    }
}

TEST_CASE("Command-line tool", "[cli]") {
    SECTION("verdict files are reproducible") {
        const auto a = scratch("cli_a");
        const auto b = scratch("cli_b");
        const auto first = run_cli("-e 'x + 20' -o " + a.string());
        CHECK(first.exit_code == 0);
        const auto second = run_cli("-e 'x + 20' -o " + b.string() + " --step-log --dump-state");
        CHECK(second.exit_code == 0);
        const auto records = slurp(a / "records.csv");
        CHECK(records.rfind("T,top1,top2,top3,top4,top5,N_x,HP,norm,steps,cutoffs\n", 0) == 0);
        CHECK(records == slurp(b / "records.csv"));
        const auto verdict = slurp(a / "verdict.txt");
        CHECK(verdict.find("ground: 0\n") != std::string::npos);
        CHECK(verdict.find("E_g: 400\n") != std::string::npos);
        CHECK(verdict.find("has_solution: false\n") != std::string::npos);
        CHECK(verdict.find("witness: none\n") != std::string::npos);
        CHECK(fs::exists(b / "steps_T10.txt"));
        std::ifstream steps(b / "steps_T10.txt");
        double t = 0, dt = 0, norm = 0, leak = 0;
        unsigned iters = 0;
        CHECK(static_cast<bool>(steps >> t >> dt >> norm >> leak >> iters));
        CHECK(t == dt);
        std::ifstream state(b / "state.txt");
        std::uint32_t n = 0;
        double re = 0, im = 0;
        CHECK(static_cast<bool>(state >> n >> re >> im));
        CHECK(n == 0);
        fs::remove_all(a);
        fs::remove_all(b);
    }
    SECTION("no verdict within the budget exits with 2") {
        const auto r = run_cli("-e 'x + 20' --T-list 2,4");
        CHECK(r.exit_code == 2);
    }
    SECTION("errors exit with 1 and a message") {
        auto r = run_cli("-e '2x + 1'");
        CHECK(r.exit_code == 1);
        CHECK(r.output.find("position 1") != std::string::npos);
        r = run_cli("-e 'x' --eps nope");
        CHECK(r.exit_code == 1);
        r = run_cli("--mode sweep");
        CHECK(r.exit_code == 1);
    }
    SECTION("config file with flag overrides") {
        const auto dir = scratch("cli_cfg");
        {
            std::ofstream f(dir / "run.cfg");
            f << "equation = x - 20\nmode = gap-profile\ninitial_cutoff = 25\n"
                 "gap_points = 11\n";
        }
        const auto r = run_cli("--config " + (dir / "run.cfg").string() +
                               " --set gap_levels=3 -o " + dir.string());
        CHECK(r.exit_code == 0);
        const auto gap = slurp(dir / "gap.csv");
        CHECK(gap.rfind("s,E0,E1,E2\n", 0) == 0);
        CHECK(std::count(gap.begin(), gap.end(), '\n') == 12);
        CHECK(gap.find("\n1,0,1,1\n") != std::string::npos);
        fs::remove_all(dir);
    }
    SECTION("oracle check") {
        const auto dir = scratch("cli_oracle");
        const auto r = run_cli("-e 'x - 20' --mode oracle-check --set oracle_steps=400 "
                               "--initial-cutoff 6 --fixed-space --T-list 10 -o " +
                               dir.string());
        CHECK(r.exit_code == 0);
        CHECK(slurp(dir / "oracle.csv").rfind("check,value\n", 0) == 0);
        fs::remove_all(dir);
    }
}
