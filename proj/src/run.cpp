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

#include "run.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

#include "qadio/error.hpp"
#include "qadio/hamiltonian.hpp"

namespace qadio::run {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

[[noreturn]] void bad_value(const std::string &key, const std::string &value,
                            const char *expected) {
    throw Error(ErrorKind::InvalidArgument, "invalid value '" + value +
                                                "' for " + key + ": expected " +
                                                expected);
}

double to_double(const std::string &key, const std::string &value) {
    const std::string v = trim(value);
    char *end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(x)) {
        bad_value(key, value, "a finite number");
    }
    return x;
}

template <typename Int> Int to_int(const std::string &key,
                                   const std::string &value) {
    const std::string v = trim(value);
    Int x{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
        bad_value(key, value, "a nonnegative integer");
    }
    return x;
}

bool to_bool(const std::string &key, const std::string &value) {
    std::string v = trim(value);
    std::transform(v.begin(), v.end(), v.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "yes" || v == "on" || v == "1") {
        return true;
    }
    if (v == "false" || v == "no" || v == "off" || v == "0") {
        return false;
    }
    bad_value(key, value, "a boolean");
}

std::string fmt(const char *spec, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

std::string num(double x) { return fmt("%.17g", x); }

std::string join_cutoffs(const std::vector<std::uint32_t> &c, char sep) {
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        out += (i ? std::string(1, sep) : "") + std::to_string(c[i]);
    }
    return out;
}

std::string state_label(const MultiIndex &n) {
    return join_cutoffs(n, ':');
}

const char *mode_name(Mode m) {
    switch (m) {
    case Mode::Sweep:
        return "sweep";
    case Mode::GapProfile:
        return "gap-profile";
    case Mode::OracleCheck:
        return "oracle-check";
    }
    return "sweep";
}

const char *growth_name(GrowthMode m) {
    switch (m) {
    case GrowthMode::Fixed:
        return "fixed";
    case GrowthMode::Threshold:
        return "threshold";
    case GrowthMode::Always:
        return "always";
    }
    return "threshold";
}

std::vector<Complex> resolve_alphas(const Settings &s, std::size_t k) {
    if (s.alphas.empty()) {
        return std::vector<Complex>(k, Complex(2.0, 0.0));
    }
    if (s.alphas.size() == 1) {
        return std::vector<Complex>(k, s.alphas.front());
    }
    if (s.alphas.size() != k) {
        throw Error(ErrorKind::InvalidArgument,
                    "expected 1 or " + std::to_string(k) +
                        " alpha values, got " +
                        std::to_string(s.alphas.size()));
    }
    return s.alphas;
}

std::filesystem::path prepare_dir(const std::string &dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw Error(ErrorKind::Io,
                    "cannot create output directory " + dir + ": " +
                        ec.message());
    }
    return dir;
}

std::ofstream open_out(const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorKind::Io, "cannot write " + path.string());
    }
    return out;
}

void check_written(std::ofstream &out, const std::filesystem::path &path) {
    out.flush();
    if (!out) {
        throw Error(ErrorKind::Io, "failed writing " + path.string());
    }
}

std::string step_log_name(double T) {
    return "steps_T" + fmt("%.6g", T) + ".txt";
}

std::string verdict_text(const DiophantinePolynomial &p,
                         const SweepResult &r) {
    std::ostringstream out;
    out << "equation: " << p.to_string() << " = 0\n";
    out << "unknowns: ";
    for (std::size_t i = 0; i < p.num_unknowns(); ++i) {
        out << (i ? ":" : "") << p.unknowns()[i];
    }
    out << '\n';
    switch (r.status) {
    case SweepStatus::Verdict:
        out << "status: verdict\n";
        break;
    case SweepStatus::NoVerdict:
        out << "status: no-verdict\n";
        break;
    case SweepStatus::DimensionCapReached:
        out << "status: dimension-cap\n";
        break;
    }
    if (r.verdict) {
        const Verdict &v = *r.verdict;
        out << "T: " << fmt("%.10g", r.verdict_T) << '\n';
        out << "ground: " << state_label(v.ground) << '\n';
        out << "ground_probability: " << fmt("%.10f", v.ground_probability)
            << '\n';
        out << "E_g: " << v.energy.str() << '\n';
        out << "has_solution: " << (v.has_solution ? "true" : "false")
            << '\n';
        out << "witness: "
            << (v.witness ? state_label(*v.witness) : std::string("none"))
            << '\n';
    } else {
        out << "ground: none\nhas_solution: unknown\nwitness: none\n";
    }
    for (const auto &c : r.confirmations) {
        out << "confirmed: T=" << fmt("%.10g", c.T) << " dt_tol/4 "
            << format_state(*c.majority) << '\n';
    }
    for (const auto &u : r.unstable) {
        out << "unstable: T=" << fmt("%.10g", u.T) << " dt_tol/4 "
            << (u.majority ? format_state(*u.majority)
                           : std::string("no majority"))
            << '\n';
    }
    for (const auto &[T, next] : r.not_persistent) {
        out << "not_persistent: T=" << fmt("%.10g", T) << " next T="
            << fmt("%.10g", next.T) << ' '
            << (next.majority ? format_state(*next.majority)
                              : std::string("no majority"))
            << '\n';
    }
    out << "initial_norm_deficit: " << fmt("%.6e", r.initial_norm_deficit)
        << '\n';
    if (!r.message.empty()) {
        out << "message: " << r.message << '\n';
    }
    return out.str();
}

std::string sweep_summary(const SweepResult &r) {
    if (!r.verdict) {
        return r.message;
    }
    const Verdict &v = *r.verdict;
    std::string s = "ground " + state_label(v.ground) + " (p=" +
                    fmt("%.6f", v.ground_probability) +
                    "), E_g=" + v.energy.str() +
                    ", has_solution=" + (v.has_solution ? "true" : "false");
    if (v.witness) {
        s += ", witness " + state_label(*v.witness);
    }
    return s;
}

OracleReport oracle_check(const DiophantinePolynomial &p,
                          const std::vector<Complex> &alphas,
                          const QuantumState &psi0, const Settings &s) {
    const TruncatedFockSpace &space = psi0.space();
    OracleReport rep;
    rep.dim = space.dim();
    const InterpolatedHamiltonian h(p, alphas, space);
    std::vector<Complex> e(space.dim()), col(space.dim());
    for (const double sv : {0.0, 0.37, 1.0}) {
        const spectral::Matrix dense =
            spectral::dense_h(sv, p, alphas, space, s.oracle_cap);
        for (std::size_t j = 0; j < space.dim(); ++j) {
            std::fill(e.begin(), e.end(), Complex{});
            e[j] = 1.0;
            (void)h.apply(sv, e, col);
            for (std::size_t i = 0; i < space.dim(); ++i) {
                rep.operator_max_abs_diff =
                    std::max(rep.operator_max_abs_diff,
                             std::abs(col[i] - dense(static_cast<long>(i),
                                                     static_cast<long>(j))));
            }
        }
    }
    rep.T = s.sweep_policy().T_values.front();
    rep.steps = s.oracle_steps;
    const QuantumState cn =
        evolve_uniform(psi0, rep.T, rep.steps, h, s.integrator);
    const auto schedule = spectral::uniform_schedule(rep.T, rep.steps);
    const QuantumState exact =
        spectral::exact_propagate(psi0, schedule, p, alphas, s.oracle_cap);
    double d2 = 0.0;
    for (std::size_t i = 0; i < space.dim(); ++i) {
        d2 += std::norm(cn.amplitudes()[i] - exact.amplitudes()[i]);
    }
    rep.cn_vs_exact = std::sqrt(d2);
    rep.norm_drift = std::fabs(cn.norm() - psi0.norm());
    return rep;
}

} // namespace

void Settings::set(const std::string &raw_key, const std::string &raw) {
    std::string key = trim(raw_key);
    std::replace(key.begin(), key.end(), '-', '_');
    const std::string value = trim(raw);
    auto &ic = integrator;
    if (key == "equation") {
        equation = value;
    } else if (key == "mode") {
        if (value == "sweep") {
            mode = Mode::Sweep;
        } else if (value == "gap-profile" || value == "gap_profile") {
            mode = Mode::GapProfile;
        } else if (value == "oracle-check" || value == "oracle_check") {
            mode = Mode::OracleCheck;
        } else {
            bad_value(key, value, "sweep, gap-profile or oracle-check");
        }
    } else if (key == "out_dir") {
        out_dir = value;
    } else if (key == "alpha") {
        std::vector<Complex> parsed;
        for (const auto &pair : split(value, ';')) {
            const auto parts = split(pair, ',');
            if (parts.empty() || parts.size() > 2) {
                bad_value(key, value, "re,im pairs separated by ';'");
            }
            parsed.emplace_back(to_double(key, parts[0]),
                                parts.size() == 2 ? to_double(key, parts[1])
                                                  : 0.0);
        }
        alphas = std::move(parsed);
    } else if (key == "eps") {
        eps = to_double(key, value);
    } else if (key == "initial_cutoff") {
        std::vector<std::uint32_t> parsed;
        for (const auto &part : split(value, ',')) {
            parsed.push_back(to_int<std::uint32_t>(key, part));
        }
        initial_cutoff = std::move(parsed);
    } else if (key == "T0") {
        T0 = to_double(key, value);
    } else if (key == "T_factor") {
        T_factor = to_double(key, value);
    } else if (key == "T_max") {
        T_max = to_double(key, value);
    } else if (key == "T_list") {
        std::vector<double> parsed;
        if (!value.empty()) {
            for (const auto &part : split(value, ',')) {
                parsed.push_back(to_double(key, part));
            }
        }
        T_list = std::move(parsed);
    } else if (key == "stop_on_majority") {
        stop_on_majority = to_bool(key, value);
    } else if (key == "refine") {
        refine = to_bool(key, value);
    } else if (key == "confirm_next") {
        confirm_next = to_bool(key, value);
    } else if (key == "dt_initial") {
        ic.dt_initial = to_double(key, value);
    } else if (key == "dt_tol") {
        ic.dt_tolerance = to_double(key, value);
    } else if (key == "dt_min") {
        ic.dt_min = to_double(key, value);
    } else if (key == "dt_max") {
        ic.dt_max = to_double(key, value);
    } else if (key == "solver_tol") {
        ic.solver_tolerance = to_double(key, value);
    } else if (key == "solver_max_iter") {
        ic.solver_max_iterations = to_int<std::uint32_t>(key, value);
    } else if (key == "energy_shift") {
        ic.energy_shift = to_bool(key, value);
    } else if (key == "growth") {
        if (value == "threshold") {
            growth.mode = GrowthMode::Threshold;
        } else if (value == "always") {
            growth.mode = GrowthMode::Always;
        } else if (value == "fixed") {
            growth.mode = GrowthMode::Fixed;
        } else {
            bad_value(key, value, "threshold, always or fixed");
        }
    } else if (key == "growth_threshold") {
        growth.threshold = to_double(key, value);
    } else if (key == "growth_increment") {
        growth.increment = to_int<std::uint32_t>(key, value);
    } else if (key == "growth_shell") {
        growth.shell = to_int<std::uint32_t>(key, value);
    } else if (key == "max_dim") {
        growth.max_dim = to_int<std::size_t>(key, value);
    } else if (key == "jobs") {
        jobs = to_int<std::size_t>(key, value);
    } else if (key == "shots") {
        shots = to_int<std::uint64_t>(key, value);
    } else if (key == "seed") {
        seed = to_int<std::uint64_t>(key, value);
    } else if (key == "top_k") {
        top_k = to_int<std::size_t>(key, value);
    } else if (key == "dump_state") {
        dump_state = to_bool(key, value);
    } else if (key == "step_log") {
        step_log = to_bool(key, value);
    } else if (key == "gap_points") {
        gap_points = to_int<std::size_t>(key, value);
    } else if (key == "gap_levels") {
        gap_levels = to_int<std::size_t>(key, value);
    } else if (key == "oracle_cap") {
        oracle_cap = to_int<std::size_t>(key, value);
    } else if (key == "oracle_steps") {
        oracle_steps = to_int<std::uint32_t>(key, value);
    } else {
        throw Error(ErrorKind::InvalidArgument,
                    "unknown configuration key '" + raw_key + "'");
    }
}

std::string Settings::get(const std::string &raw_key) const {
    std::string key = trim(raw_key);
    std::replace(key.begin(), key.end(), '-', '_');
    const auto &ic = integrator;
    auto b = [](bool x) { return std::string(x ? "true" : "false"); };
    if (key == "equation") {
        return equation;
    }
    if (key == "mode") {
        return mode_name(mode);
    }
    if (key == "out_dir") {
        return out_dir;
    }
    if (key == "alpha") {
        std::string out;
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            out += (i ? ";" : "") + num(alphas[i].real()) + "," +
                   num(alphas[i].imag());
        }
        return out.empty() ? "2,0" : out;
    }
    if (key == "initial_cutoff") {
        return join_cutoffs(initial_cutoff, ',');
    }
    if (key == "T_list") {
        std::string out;
        for (std::size_t i = 0; i < T_list.size(); ++i) {
            out += (i ? "," : "") + num(T_list[i]);
        }
        return out;
    }
    const std::pair<const char *, std::string> scalars[] = {
        {"eps", num(eps)},
        {"T0", num(T0)},
        {"T_factor", num(T_factor)},
        {"T_max", num(T_max)},
        {"stop_on_majority", b(stop_on_majority)},
        {"refine", b(refine)},
        {"confirm_next", b(confirm_next)},
        {"dt_initial", num(ic.dt_initial)},
        {"dt_tol", num(ic.dt_tolerance)},
        {"dt_min", num(ic.dt_min)},
        {"dt_max", num(ic.dt_max)},
        {"solver_tol", num(ic.solver_tolerance)},
        {"solver_max_iter", std::to_string(ic.solver_max_iterations)},
        {"energy_shift", b(ic.energy_shift)},
        {"growth", growth_name(growth.mode)},
        {"growth_threshold", num(growth.threshold)},
        {"growth_increment", std::to_string(growth.increment)},
        {"growth_shell", std::to_string(growth.shell)},
        {"max_dim", std::to_string(growth.max_dim)},
        {"jobs", std::to_string(jobs)},
        {"shots", std::to_string(shots)},
        {"seed", std::to_string(seed)},
        {"top_k", std::to_string(top_k)},
        {"dump_state", b(dump_state)},
        {"step_log", b(step_log)},
        {"gap_points", std::to_string(gap_points)},
        {"gap_levels", std::to_string(gap_levels)},
        {"oracle_cap", std::to_string(oracle_cap)},
        {"oracle_steps", std::to_string(oracle_steps)},
    };
    for (const auto &[name, value] : scalars) {
        if (key == name) {
            return value;
        }
    }
    throw Error(ErrorKind::InvalidArgument,
                "unknown configuration key '" + raw_key + "'");
}

void Settings::load(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot read config file " + path);
    }
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        if (trim(line).empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::InvalidArgument,
                        path + ":" + std::to_string(lineno) +
                            ": expected 'key = value'");
        }
        try {
            set(line.substr(0, eq), line.substr(eq + 1));
        } catch (const Error &e) {
            throw Error(e.kind(), path + ":" + std::to_string(lineno) +
                                      ": " + e.what());
        }
    }
}

SweepPolicy Settings::sweep_policy() const {
    SweepPolicy policy = T_list.empty()
                             ? SweepPolicy::geometric(T0, T_factor, T_max)
                             : SweepPolicy::explicit_list(T_list);
    policy.stop_on_majority = stop_on_majority;
    return policy;
}

SweepConfig Settings::sweep_config(const DiophantinePolynomial &p) const {
    SweepConfig cfg;
    cfg.coherent.alphas = resolve_alphas(*this, p.num_unknowns());
    cfg.coherent.epsilon = eps;
    cfg.initial_cutoff_floor = initial_cutoff;
    cfg.integrator = integrator;
    cfg.growth = growth;
    cfg.sweep = sweep_policy();
    cfg.refine = refine;
    cfg.confirm_next = confirm_next;
    cfg.top_k = top_k;
    cfg.jobs = jobs;
    cfg.shots = shots;
    cfg.seed = seed;
    return cfg;
}

std::string records_header(const DiophantinePolynomial &p,
                           std::size_t top_k) {
    std::string out = "T";
    for (std::size_t i = 0; i < top_k; ++i) {
        out += ",top" + std::to_string(i + 1);
    }
    for (const auto &name : p.unknowns()) {
        out += ",N_" + name;
    }
    out += ",HP,norm,steps,cutoffs";
    return out;
}

std::string records_row(const RunRecord &rec, std::size_t top_k) {
    std::string out = fmt("%.10g", rec.T);
    for (std::size_t i = 0; i < top_k; ++i) {
        out += ',';
        if (i < rec.top.size()) {
            out += format_state(rec.top[i]);
        }
    }
    for (const double n : rec.expectation_n) {
        out += fmt(",%.10f", n);
    }
    out += fmt(",%.10g", rec.expectation_hp);
    out += fmt(",%.12f", rec.final_norm);
    out += "," + std::to_string(rec.total_steps);
    out += "," + join_cutoffs(rec.final_cutoffs, ':');
    return out;
}

Output execute(const Settings &s) {
    if (trim(s.equation).empty()) {
        throw Error(ErrorKind::InvalidArgument, "no equation given");
    }
    const DiophantinePolynomial p = parse(s.equation);
    SweepConfig cfg = s.sweep_config(p);
    cfg.sweep.validate();
    cfg.integrator.validate();
    if (!(s.eps > 0.0 && s.eps < 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "eps must lie in (0, 1)");
    }
    const bool write = !s.out_dir.empty();
    const std::filesystem::path dir =
        write ? prepare_dir(s.out_dir) : std::filesystem::path{};

    Output out;
    out.num_unknowns = p.num_unknowns();

    if (s.mode == Mode::GapProfile || s.mode == Mode::OracleCheck) {
        const QuantumState psi0 = initial_state(p, cfg).state;
        out.outcome = Outcome::Report;
        if (s.mode == Mode::GapProfile) {
            const auto grid = spectral::uniform_grid(s.gap_points);
            out.gap = spectral::gap_profile(p, cfg.coherent.alphas,
                                            psi0.space(), grid, s.gap_levels,
                                            s.oracle_cap);
            out.summary = "min interior gap " +
                          fmt("%.6e", out.gap->min_gap) + " at s=" +
                          fmt("%.4f", out.gap->min_gap_s) + " on cutoffs " +
                          join_cutoffs(psi0.space().cutoffs(), ':');
            if (write) {
                const auto path = dir / "gap.csv";
                auto f = open_out(path);
                spectral::write_gap_csv(f, *out.gap);
                check_written(f, path);
            }
        } else {
            out.oracle = oracle_check(p, cfg.coherent.alphas, psi0, s);
            const OracleReport &r = *out.oracle;
            out.summary = "dim " + std::to_string(r.dim) +
                          ": operator max |diff| " +
                          fmt("%.3e", r.operator_max_abs_diff) +
                          ", Crank-Nicolson vs exact " +
                          fmt("%.3e", r.cn_vs_exact) + " (T=" +
                          fmt("%.6g", r.T) + ", " + std::to_string(r.steps) +
                          " steps)";
            if (write) {
                const auto path = dir / "oracle.csv";
                auto f = open_out(path);
                f << "check,value\n"
                  << "dim," << r.dim << '\n'
                  << "operator_max_abs_diff,"
                  << fmt("%.6e", r.operator_max_abs_diff) << '\n'
                  << "T," << fmt("%.10g", r.T) << '\n'
                  << "steps," << r.steps << '\n'
                  << "cn_vs_exact," << fmt("%.6e", r.cn_vs_exact) << '\n'
                  << "norm_drift," << fmt("%.6e", r.norm_drift) << '\n';
                check_written(f, path);
            }
        }
        return out;
    }

    if (write && s.step_log) {
        cfg.step_observer = [dir](double T) {
            auto file = std::make_shared<std::ofstream>(
                open_out(dir / step_log_name(T)));
            return std::function<void(const StepReport &,
                                      const QuantumState &)>(
                [file](const StepReport &r, const QuantumState &psi) {
                    write_step_line(*file, r, psi.norm());
                });
        };
    }
    out.sweep = sweep(p, cfg);
    const SweepResult &r = *out.sweep;
    switch (r.status) {
    case SweepStatus::Verdict:
        out.outcome = Outcome::Verdict;
        break;
    case SweepStatus::NoVerdict:
        out.outcome = Outcome::NoVerdict;
        break;
    case SweepStatus::DimensionCapReached:
        out.outcome = Outcome::DimensionCap;
        break;
    }
    out.summary = sweep_summary(r);
    if (write) {
        {
            const auto path = dir / "records.csv";
            auto f = open_out(path);
            f << records_header(p, s.top_k) << '\n';
            for (const auto &rec : r.records) {
                f << records_row(rec, s.top_k) << '\n';
            }
            check_written(f, path);
        }
        {
            const auto path = dir / "verdict.txt";
            auto f = open_out(path);
            f << verdict_text(p, r);
            check_written(f, path);
        }
        if (s.dump_state && r.last_state) {
            const auto path = dir / "state.txt";
            auto f = open_out(path);
            write_state(f, *r.last_state);
            check_written(f, path);
        }
    }
    return out;
}

} // namespace qadio::run
