// Copyright 2026 The qpoisson Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Command-line front end. Everything lives in this header so the tests can
 * drive `run` in-process with captured streams.
 */

#pragma once

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpoisson/qpoisson.hpp"

namespace qpoisson::cli {

using json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNoSuccess = 3;
inline constexpr int kExitCapacity = 4;

inline constexpr const char *kMaxQubitsEnv = "QPOISSON_MAX_QUBITS";

/// Thrown for anything the user has to fix in the invocation.
class ConfigError : public Error {
  public:
    using Error::Error;
};

struct RunConfig {
    std::string command;
    std::size_t grid{4};
    std::size_t dimension{1};
    std::string rhs_spec{"e1"};
    std::optional<double> alpha;
    std::optional<std::size_t> register_bits;
    std::size_t resolution_shift{0};
    std::uint64_t shots{0};
    std::uint64_t seed{0};
    std::vector<double> alphas;
    bool ideal_inversion{false};
    std::string out_path;
    std::string csv_path;
    std::size_t max_qubits{Statevector::kDefaultMaxQubits};
};

/// Numbers in every output are cut to 12 significant digits.
inline auto format_number(double v) -> std::string {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline auto round12(double v) -> double { return std::strtod(format_number(v).c_str(), nullptr); }

inline auto rounded(const std::vector<double> &v) -> json {
    json out = json::array();
    for (double x : v) {
        out.push_back(round12(x));
    }
    return out;
}

namespace detail {

inline auto parse_number_list(const std::string &text) -> std::vector<double> {
    std::string cleaned = text;
    std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
    std::istringstream in(cleaned);
    std::vector<double> values;
    std::string token;
    while (in >> token) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception &) {
            throw ConfigError("not a number: '" + token + "'");
        }
        if (used != token.size()) {
            throw ConfigError("not a number: '" + token + "'");
        }
        values.push_back(v);
    }
    return values;
}

} // namespace detail

/// "e1", a comma-separated list, or a file of numbers (commas or whitespace).
inline auto resolve_rhs(const std::string &source, std::size_t M, std::size_t d) -> std::vector<double> {
    const std::size_t points = interior_points(M, d);
    if (source == "e1") {
        std::vector<double> b(points, 0.0);
        b[0] = 1.0;
        return b;
    }
    std::vector<double> values;
    if (source.find(',') == std::string::npos && std::filesystem::is_regular_file(source)) {
        std::ifstream file(source);
        std::stringstream buffer;
        buffer << file.rdbuf();
        values = detail::parse_number_list(buffer.str());
    } else {
        values = detail::parse_number_list(source);
    }
    if (values.size() != points) {
        throw ConfigError("rhs has " + std::to_string(values.size()) + " entries, expected (M-1)^d = " +
                          std::to_string(points));
    }
    return values;
}

inline auto max_qubits_from_env() -> std::size_t {
    const char *raw = std::getenv(kMaxQubitsEnv);
    if (raw == nullptr || *raw == '\0') {
        return Statevector::kDefaultMaxQubits;
    }
    const std::string text(raw);
    if (text.find_first_not_of("0123456789") != std::string::npos || text.size() > 3) {
        throw ConfigError(std::string(kMaxQubitsEnv) + " must be a positive integer, got '" + text + "'");
    }
    const auto cap = static_cast<std::size_t>(std::stoul(text));
    if (cap < 1 || cap > 40) {
        throw ConfigError(std::string(kMaxQubitsEnv) + " must be in [1, 40]");
    }
    return cap;
}

inline auto to_problem(const RunConfig &cfg) -> PoissonProblem {
    PoissonProblem p;
    p.grid = cfg.grid;
    p.dimension = cfg.dimension;
    require_grid(p.grid);
    if (p.dimension < 1) {
        throw DomainError("dimension d must be >= 1");
    }
    interior_points(p.grid, p.dimension, kDenseGridLimit);
    p.rhs = resolve_rhs(cfg.rhs_spec, cfg.grid, cfg.dimension);
    p.alpha = cfg.alpha.value_or(default_alpha(cfg.grid, cfg.dimension));
    p.register_bits = cfg.register_bits.value_or(default_register_size(cfg.grid, cfg.dimension));
    p.resolution_shift = cfg.resolution_shift;
    p.shots = cfg.shots;
    p.seed = cfg.seed;
    validate(p);
    return p;
}

inline auto config_json(const RunConfig &cfg, const PoissonProblem &p) -> json {
    json c;
    c["command"] = cfg.command;
    c["grid"] = p.grid;
    c["dimension"] = p.dimension;
    c["rhs"] = rounded(p.rhs);
    c["alpha"] = round12(p.alpha);
    c["register_bits"] = *p.register_bits;
    c["resolution_shift"] = p.resolution_shift;
    c["shots"] = p.shots;
    c["seed"] = p.seed;
    c["mode"] = to_string(cfg.ideal_inversion ? PipelineMode::IdealInversion : PipelineMode::Full);
    if (cfg.command == "alpha-sweep") {
        c["alphas"] = rounded(cfg.alphas);
    }
    c["max_qubits"] = cfg.max_qubits;
    return c;
}

inline auto histogram_json(const Histogram &h) -> json {
    json out = json::array();
    for (const auto &[value, count] : h) {
        out.push_back({{"value", value}, {"count", count}});
    }
    return out;
}

inline auto resources_json(const ResourceEstimate &r) -> json {
    return {{"register_bits", r.register_bits},   {"paper_qubits", r.paper_qubits},
            {"simulator_qubits", r.simulator_qubits}, {"rotation_gates", r.rotation_gates},
            {"phase_gates", r.phase_gates}};
}

inline void write_text(const std::string &path, const std::string &text, std::ostream &fallback) {
    if (path.empty() || path == "-") {
        fallback << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw ConfigError("cannot open '" + path + "' for writing");
    }
    file << text;
}

inline void warn_about(const RunConfig &cfg, const PoissonProblem &p, std::ostream &err) {
    const std::size_t n_default = default_register_size(p.grid, p.dimension);
    if (cfg.register_bits && *cfg.register_bits != n_default) {
        err << "warning: register size n = " << *cfg.register_bits << " overrides the default "
            << n_default << "\n";
    }
    const double bound = default_alpha(p.grid, p.dimension);
    if (p.alpha > bound) {
        err << "warning: alpha = " << format_number(p.alpha) << " exceeds lambda_min/2 = " << format_number(bound)
            << " and violates the small angle approximation\n";
    }
}

inline auto run_solve(const RunConfig &cfg, const PoissonProblem &p, std::ostream &out) -> int {
    const auto mode = cfg.ideal_inversion ? PipelineMode::IdealInversion : PipelineMode::Full;
    const auto r = run_pipeline(p, mode, cfg.max_qubits);
    json result;
    result["total_qubits"] = r.total_qubits;
    result["solution"] = rounded(r.solution);
    result["reference"] = rounded(r.reference);
    result["l2_error"] = round12(r.l2_error);
    result["linf_error"] = round12(r.linf_error);
    result["l2_error_signed"] = round12(r.l2_error_signed);
    result["linf_error_signed"] = round12(r.linf_error_signed);
    result["max_imag_residual"] = round12(r.max_imag_residual);
    result["success_probability"] = round12(r.success_probability);
    if (r.success_probability_empirical) {
        result["success_probability_empirical"] = round12(*r.success_probability_empirical);
    }
    result["expected_success_probability"] = round12(r.expected_success_probability);
    result["uncompute_residual"] = round12(r.uncompute_residual);
    result["invalid_mass"] = round12(r.invalid_mass);
    result["kappa"] = round12(r.kappa);
    result["alpha_bound"] = round12(r.alpha_bound);
    result["small_angle_violated"] = r.small_angle_violated;
    json hists = json::object();
    for (const auto &[name, h] : r.histograms) {
        hists[name] = histogram_json(h);
    }
    result["histograms"] = hists;

    json doc;
    doc["config"] = config_json(cfg, p);
    doc["result"] = result;
    doc["resources"] = resources_json(r.resources);
    write_text(cfg.out_path, doc.dump(2) + "\n", out);

    if (!cfg.csv_path.empty()) {
        std::string csv = "grid_index,amplitude,reference\n";
        for (std::size_t i = 0; i < r.solution.size(); ++i) {
            csv += std::to_string(i) + "," + format_number(r.solution[i]) + "," + format_number(r.reference[i]) + "\n";
        }
        write_text(cfg.csv_path, csv, out);
    }
    return kExitOk;
}

inline auto run_pea_hist(const RunConfig &cfg, const PoissonProblem &p, std::ostream &out) -> int {
    if (p.shots < 1) {
        throw ConfigError("pea-hist needs --shots >= 1");
    }
    const auto h = pea_histogram(p, p.shots, cfg.max_qubits);
    json result;
    result["register_qubits"] = h.register_qubits;
    result["counts"] = histogram_json(h.counts);
    result["probabilities"] = rounded(h.probabilities);

    json doc;
    doc["config"] = config_json(cfg, p);
    doc["result"] = result;
    write_text(cfg.out_path, doc.dump(2) + "\n", out);

    if (!cfg.csv_path.empty()) {
        std::string csv = "value,count\n";
        for (const auto &[value, count] : h.counts) {
            csv += std::to_string(value) + "," + std::to_string(count) + "\n";
        }
        write_text(cfg.csv_path, csv, out);
    }
    return kExitOk;
}

inline auto run_alpha_sweep(const RunConfig &cfg, const PoissonProblem &p, std::ostream &out) -> int {
    if (cfg.alphas.empty()) {
        throw ConfigError("alpha-sweep needs a non-empty --alphas list");
    }
    for (double a : cfg.alphas) {
        if (!(a > 0.0)) {
            throw ConfigError("every alpha in --alphas must be > 0");
        }
    }
    const auto mode = cfg.ideal_inversion ? PipelineMode::IdealInversion : PipelineMode::Full;
    const auto curve = success_probability_curve(p, cfg.alphas, mode, cfg.max_qubits);
    const auto layout = make_layout(p);
    json points = json::array();
    for (const auto &pt : curve) {
        PoissonProblem q = p;
        q.alpha = pt.alpha;
        const double expected = expected_success_probability(
            q, cfg.ideal_inversion ? EigenApprox::RegisterIdeal : EigenApprox::Register, layout.reg_b.size(),
            layout.resolution_shift);
        points.push_back({{"alpha", round12(pt.alpha)},
                          {"success_probability", round12(pt.success_probability)},
                          {"expected_success_probability", round12(expected)}});
    }
    json doc;
    doc["config"] = config_json(cfg, p);
    doc["result"] = {{"curve", points}};
    write_text(cfg.out_path, doc.dump(2) + "\n", out);

    if (!cfg.csv_path.empty()) {
        std::string csv = "alpha,success_probability\n";
        for (const auto &pt : curve) {
            csv += format_number(pt.alpha) + "," + format_number(pt.success_probability) + "\n";
        }
        write_text(cfg.csv_path, csv, out);
    }
    return kExitOk;
}

inline auto run_resources(const RunConfig &cfg, std::ostream &out) -> int {
    if (!cfg.csv_path.empty()) {
        throw ConfigError("resources has no CSV output");
    }
    json doc;
    json c;
    c["command"] = cfg.command;
    c["grid"] = cfg.grid;
    c["dimension"] = cfg.dimension;
    doc["config"] = c;
    doc["result"] = resources_json(resource_estimate(cfg.grid, cfg.dimension));
    write_text(cfg.out_path, doc.dump(2) + "\n", out);
    return kExitOk;
}

/// Full entry point: `args` excludes the program name. Returns the exit code.
inline auto run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) -> int {
    RunConfig cfg;
    CLI::App app{"Statevector simulation of a Poisson solver circuit", "qpoisson"};
    app.set_config("--config", "", "TOML or INI file with option values (flags win)");
    app.require_subcommand(1);

    app.add_option("--M", cfg.grid, "grid size M, a power of two")->capture_default_str();
    app.add_option("--d", cfg.dimension, "spatial dimension d")->capture_default_str();
    app.add_option("--rhs", cfg.rhs_spec, "right-hand side: e1, a comma list, or a file")->capture_default_str();
    app.add_option("--alpha", cfg.alpha, "rotation scale (default d lambda_1 / 2)");
    app.add_option("--n", cfg.register_bits, "eigenvalue register size");
    app.add_option("--shift", cfg.resolution_shift, "eigenvalue resolution shift")->capture_default_str();
    app.add_option("--shots", cfg.shots, "measurement shots")->capture_default_str();
    app.add_option("--seed", cfg.seed, "seed for all sampling")->capture_default_str();
    app.add_option("--alphas", cfg.alphas, "alpha values for alpha-sweep")->delimiter(',');
    app.add_flag("--ideal-inversion", cfg.ideal_inversion, "rotate by min(1, alpha / y) directly");
    app.add_option("--out", cfg.out_path, "JSON report path (default stdout)");
    app.add_option("--csv", cfg.csv_path, "CSV output path");

    for (const auto &[name, help] :
         std::vector<std::pair<std::string, std::string>>{{"solve", "run the full pipeline"},
                                                          {"pea-hist", "sample the eigenvalue register"},
                                                          {"alpha-sweep", "success probability versus alpha"},
                                                          {"resources", "qubit and gate counts"}}) {
        auto *sub = app.add_subcommand(name, help);
        sub->fallthrough();
        sub->callback([&cfg, name = name] { cfg.command = name; });
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        cfg.max_qubits = max_qubits_from_env();
        if (cfg.command == "resources") {
            return run_resources(cfg, out);
        }
        if (cfg.command == "pea-hist" && cfg.shots == 0) {
            throw ConfigError("pea-hist needs --shots >= 1");
        }
        const PoissonProblem p = to_problem(cfg);
        warn_about(cfg, p, err);
        if (cfg.command == "solve") {
            return run_solve(cfg, p, out);
        }
        if (cfg.command == "pea-hist") {
            return run_pea_hist(cfg, p, out);
        }
        return run_alpha_sweep(cfg, p, out);
    } catch (const CapacityError &e) {
        err << "error: " << e.what() << " (raise " << kMaxQubitsEnv << " to allow " << e.requested()
            << " qubits)\n";
        return kExitCapacity;
    } catch (const NoSuccessError &e) {
        err << "error: " << e.what() << "\n";
        return kExitNoSuccess;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

} // namespace qpoisson::cli
