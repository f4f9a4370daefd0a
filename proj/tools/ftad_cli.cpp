// ftad command-line front end: polynomial solving, lemma verification,
// and nth roots, with machine-readable output.
//
// Exit codes: 0 success, 1 convergence/verification failure, 2 usage or
// input errors. Diagnostics go to stderr; stdout carries only the payload.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ftad/descent.hpp"
#include "ftad/estermann.hpp"
#include "ftad/json_io.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
    std::string input_path;
    std::string format = "json";
    unsigned long seed = 0;
    bool trace = false;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_input) {
    if (with_input)
        cmd->add_option("--input", opts.input_path, "Polynomial file (stdin when absent)");
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--seed", opts.seed, "Restart sequence seed");
    cmd->add_option("overrides", opts.overrides, "DescentConfig overrides as key=value");
}

// Overrides are validated before any computation runs.
ftad::DescentConfig build_config(const CommonOptions& opts) {
    ftad::DescentConfig cfg;
    cfg.seed = opts.seed;
    for (const std::string& item : opts.overrides) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("override '" + item + "' is not key=value");
        std::string key = item.substr(0, eq);
        std::string value = item.substr(eq + 1);
        if (!ftad::apply_config_override(cfg, key, value))
            throw std::invalid_argument("unknown config key '" + key + "'");
    }
    if (opts.trace) cfg.collect_trace = true;
    cfg.validate();
    return cfg;
}

std::string read_input(const CommonOptions& opts) {
    if (opts.input_path.empty()) {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream file(opts.input_path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open input file '" + opts.input_path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

int run_solve(const CommonOptions& opts) {
    ftad::DescentConfig cfg = build_config(opts);
    ftad::PolyD poly = ftad::parse_polynomial_auto(read_input(opts));
    if (poly.is_zero() || poly.degree() < 1) {
        std::cerr << "error: polynomial must have degree >= 1\n";
        return kExitUsage;
    }
    std::vector<ftad::RootResult> results;
    try {
        results = ftad::find_all_roots(poly, cfg);
    } catch (const ftad::ConvergenceError& err) {
        std::cerr << "error: " << err.what() << " (deflation stage " << err.stage
                  << ", best residual " << err.best.residual << ")\n";
        return kExitFailure;
    }
    if (opts.format == "json") {
        std::cout << ftad::roots_to_json(results, cfg, cfg.collect_trace).dump(2) << "\n";
    } else {
        for (const auto& res : results)
            std::printf("%.17g %.17g residual=%.3e multiplicity=%d iterations=%d\n",
                        res.root.real(), res.root.imag(), res.residual, res.multiplicity,
                        res.iterations);
    }
    return kExitSuccess;
}

int run_verify_lemma(int kmin, int kmax, const CommonOptions& opts) {
    if (kmin % 2 != 0 || kmax % 2 != 0 || kmin < 2 || kmax < kmin) {
        std::cerr << "error: --kmin/--kmax must be even with 2 <= kmin <= kmax\n";
        return kExitUsage;
    }
    std::vector<ftad::LemmaReport> reports = ftad::verify_lemma_range(kmin, kmax);
    bool all_pass = true;
    for (const auto& report : reports) all_pass = all_pass && report.pass;
    if (opts.format == "json") {
        std::cout << ftad::to_json(reports).dump(2) << "\n";
    } else {
        for (const auto& report : reports)
            std::printf("k=%d pass=%s sign_re=%d sign_im=%d zeta_pow=%s\n", report.k,
                        report.pass ? "yes" : "no", report.sign_re, report.sign_im,
                        report.zeta_pow.to_string().c_str());
    }
    if (!all_pass) {
        std::cerr << "error: lemma verification failed for at least one k\n";
        return kExitFailure;
    }
    return kExitSuccess;
}

int run_nthroot(double a, int n, const CommonOptions& opts) {
    ftad::DescentConfig cfg = build_config(opts);
    double root;
    try {
        root = ftad::nth_root(a, n, cfg);
    } catch (const ftad::ConvergenceError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitFailure;
    }
    if (opts.format == "json") {
        ftad::json j;
        j["a"] = a;
        j["n"] = n;
        j["root"] = root;
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("%.17g\n", root);
    }
    return kExitSuccess;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polynomial root finding by modulus descent, with exact lemma verification"};
    app.require_subcommand(1);

    CommonOptions solve_opts;
    CLI::App* solve = app.add_subcommand("solve", "Find all roots of a polynomial");
    add_common(solve, solve_opts, true);
    solve->add_flag("--trace", solve_opts.trace, "Record the descent trace");

    CommonOptions trace_opts;
    trace_opts.trace = true;
    CLI::App* trace = app.add_subcommand("trace", "Solve with full descent trace output");
    add_common(trace, trace_opts, true);

    CommonOptions lemma_opts;
    int kmin = 0, kmax = 0;
    CLI::App* lemma = app.add_subcommand("verify-lemma", "Exact direction-lemma sweep over even k");
    lemma->add_option("--kmin", kmin, "Smallest even k")->required();
    lemma->add_option("--kmax", kmax, "Largest even k")->required();
    lemma->add_option("--format", lemma_opts.format, "Output format")
        ->check(CLI::IsMember({"json", "text"}));

    CommonOptions nthroot_opts;
    double nthroot_a = 0.0;
    int nthroot_n = 1;
    CLI::App* nthroot = app.add_subcommand("nthroot", "Positive nth root of a >= 0");
    nthroot->add_option("a", nthroot_a, "Radicand (nonnegative)")->required();
    nthroot->add_option("n", nthroot_n, "Root order (>= 1)")->required();
    add_common(nthroot, nthroot_opts, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? kExitSuccess : kExitUsage;
    }

    try {
        if (solve->parsed()) return run_solve(solve_opts);
        if (trace->parsed()) return run_solve(trace_opts);
        if (lemma->parsed()) return run_verify_lemma(kmin, kmax, lemma_opts);
        if (nthroot->parsed()) {
            if (nthroot_a < 0 || nthroot_n < 1) {
                std::cerr << "error: nthroot requires a >= 0 and n >= 1\n";
                return kExitUsage;
            }
            return run_nthroot(nthroot_a, nthroot_n, nthroot_opts);
        }
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
