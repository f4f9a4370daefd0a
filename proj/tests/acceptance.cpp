// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one [PASS]/[FAIL] line per criterion. Exit code is the number of
// failed criteria.

#include <chrono>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ftad/descent.hpp"
#include "ftad/estermann.hpp"
#include "ftad/json_io.hpp"

using ftad::DescentConfig;
using ftad::GaussianRational;
using ftad::PolyD;
using ftad::Rational;
using C = std::complex<double>;
using clock_type = std::chrono::steady_clock;

namespace {

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
};

PolyD random_unit_box_poly(std::mt19937_64& rng, int degree) {
    std::uniform_real_distribution<double> box(-1.0, 1.0);
    std::vector<C> coeffs(degree + 1);
    for (auto& c : coeffs) c = {box(rng), box(rng)};
    while (std::abs(coeffs.back()) < 0.3) coeffs.back() = {box(rng), box(rng)};
    return PolyD(std::move(coeffs));
}

PolyD unity_poly(int n) {
    std::vector<C> coeffs(n + 1, C(0, 0));
    coeffs[0] = C(-1, 0);
    coeffs.back() = C(1, 0);
    return PolyD(std::move(coeffs));
}

// Greedy nearest matching of found roots against a reference set.
double max_match_distance(const std::vector<ftad::RootResult>& found,
                          std::vector<C> reference) {
    double worst = 0.0;
    for (const auto& res : found) {
        std::size_t best = 0;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < reference.size(); ++j) {
            double dist = std::abs(res.root - reference[j]);
            if (dist < best_dist) {
                best_dist = dist;
                best = j;
            }
        }
        worst = std::max(worst, best_dist);
        reference.erase(reference.begin() + static_cast<long>(best));
    }
    return worst;
}

// Strict decrease of |P|^2 within every attempt of every trace.
bool traces_monotone(const std::vector<ftad::RootResult>& results, long& steps_checked) {
    for (const auto& res : results) {
        for (std::size_t i = 1; i < res.trace.size(); ++i) {
            if (res.trace[i].attempt != res.trace[i - 1].attempt) continue;
            ++steps_checked;
            if (!(res.trace[i].abs2 < res.trace[i - 1].abs2)) return false;
        }
    }
    return true;
}

double bisect_nth_root(double a, int n) {
    double lo = 0.0, hi = std::max(1.0, a);
    for (int iter = 0; iter < 200; ++iter) {
        double mid = 0.5 * (lo + hi);
        double p = 1.0;
        for (int i = 0; i < n; ++i) p *= mid;
        (p < a ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::string run_cli_capture(const std::string& args, const std::string& stdin_text,
                            int& exit_code) {
    static int counter = 0;
    auto dir = std::filesystem::temp_directory_path();
    auto tag = "ftad_acceptance_" + std::to_string(++counter);
    auto in_path = dir / (tag + ".in");
    auto out_path = dir / (tag + ".out");
    std::ofstream(in_path, std::ios::binary) << stdin_text;
    std::string command = std::string(FTAD_CLI_PATH) + " " + args + " < " + in_path.string() +
                          " > " + out_path.string() + " 2> /dev/null";
    int status = std::system(command.c_str());
    exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::filesystem::remove(in_path);
    std::filesystem::remove(out_path);
    return buffer.str();
}

bool lemma_sweep(std::string& detail) {
    auto t0 = clock_type::now();
    auto reports = ftad::verify_lemma_range(2, 1000);
    for (const auto& report : reports)
        if (!report.pass) {
            detail = "verify_lemma failed at k = " + std::to_string(report.k);
            return false;
        }
    // Independent recomputation of every pair-term sign for k <= 200.
    for (int k = 2; k <= 200; k += 2) {
        const auto& report = reports[(k - 2) / 2];
        auto term = [&](unsigned long t) {
            return ftad::make_rational(
                ftad::binomial(2ul * k, t),
                boost::multiprecision::pow(ftad::BigInt(k), static_cast<unsigned>(t)));
        };
        std::size_t idx = 0;
        for (int j = 3; j <= k - 1; j += 2, ++idx)
            if (Rational(-term(2ul * j) + term(2ul * j + 2)).sign() !=
                report.re_pair_signs.at(idx)) {
                detail = "re pair sign mismatch at k = " + std::to_string(k);
                return false;
            }
        idx = 0;
        for (int j = 1; j <= k - 1; j += 2, ++idx)
            if (Rational(term(2ul * j - 1) - term(2ul * j + 1)).sign() !=
                report.im_pair_signs.at(idx)) {
                detail = "im pair sign mismatch at k = " + std::to_string(k);
                return false;
            }
    }
    double elapsed = std::chrono::duration<double>(clock_type::now() - t0).count();
    detail = "500 even k verified, pair signs cross-checked to k = 200, " +
             std::to_string(elapsed) + " s";
    return elapsed < 60.0;
}

bool binomial_vs_squaring(std::string& detail) {
    for (int k = 2; k <= 200; k += 2) {
        if (ftad::zeta_pow_via_binomial(k) !=
            pow(ftad::estermann_zeta(k), static_cast<unsigned long>(k))) {
            detail = "mismatch at k = " + std::to_string(k);
            return false;
        }
    }
    detail = "exact equality for even k in [2, 200]";
    return true;
}

bool k2_closed_values(std::string& detail) {
    GaussianRational zeta = ftad::estermann_zeta(2);
    bool ok = zeta == GaussianRational(Rational(3, 4), Rational(1));
    GaussianRational zeta_sq = pow(zeta, 2);
    ok = ok && zeta_sq == GaussianRational(Rational(-7, 16), Rational(3, 2));
    auto report = ftad::verify_lemma(2);
    ok = ok && report.head_value == Rational(-7, 16);
    ok = ok && report.head_closed_form ==
                   -Rational(3, 2) * ftad::make_rational(5 * 2 - 3, 6 * 4);
    ok = ok && report.head_value == report.head_closed_form;
    detail = "zeta = " + zeta.to_string() + ", zeta^2 = " + zeta_sq.to_string() +
             ", head = " + ftad::to_string(report.head_value);
    return ok;
}

bool direction_guarantee(std::string& detail) {
    std::mt19937_64 rng(20240811);
    std::uniform_int_distribution<long> num(-1000, 1000);
    std::uniform_int_distribution<long> den(1, 1000);
    long checks = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        GaussianRational alpha(ftad::make_rational(num(rng), den(rng)),
                               ftad::make_rational(num(rng), den(rng)));
        if (alpha.is_zero()) {
            --trial;
            continue;
        }
        for (int k = 1; k <= 30; ++k) {
            auto sel = ftad::select_direction(alpha, k);
            ++checks;
            if (!sel.has_value() || !(sel->value < 0)) {
                detail = "no strictly negative direction for alpha = " + alpha.to_string() +
                         ", k = " + std::to_string(k);
                return false;
            }
        }
    }
    detail = std::to_string(checks) + " exact sign checks, zero failures";
    return true;
}

long g_monotone_steps = 0;

bool descent_monotonicity(std::string& detail) {
    DescentConfig cfg;
    cfg.collect_trace = true;
    for (int n = 1; n <= 16; ++n) {
        auto results = ftad::find_all_roots(unity_poly(n), cfg);
        if (!traces_monotone(results, g_monotone_steps)) {
            detail = "violation on z^" + std::to_string(n) + " - 1";
            return false;
        }
    }
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 150; ++trial) {
        PolyD p = random_unit_box_poly(rng, 1 + trial % 15);
        auto results = ftad::find_all_roots(p, cfg);
        if (!traces_monotone(results, g_monotone_steps)) {
            detail = "violation on random polynomial " + std::to_string(trial);
            return false;
        }
    }
    DescentConfig tight = cfg;
    tight.tol_residual = 3e-14;
    auto cube = ftad::find_all_roots(PolyD({C(-1, 0), C(3, 0), C(-3, 0), C(1, 0)}), tight);
    auto mixed = ftad::find_all_roots(PolyD({C(2, 0), C(-3, 0), C(0, 0), C(1, 0)}), tight);
    if (!traces_monotone(cube, g_monotone_steps) || !traces_monotone(mixed, g_monotone_steps)) {
        detail = "violation on a multiple-root fixture";
        return false;
    }
    detail = std::to_string(g_monotone_steps) + " accepted steps, all strictly decreasing";
    return true;
}

bool solver_correctness(std::string& detail) {
    auto t0 = clock_type::now();
    for (int n = 1; n <= 16; ++n) {
        auto results = ftad::find_all_roots(unity_poly(n), {});
        std::vector<C> truth;
        for (int j = 0; j < n; ++j)
            truth.push_back(std::polar(1.0, 2.0 * 3.14159265358979323846 * j / n));
        double err = max_match_distance(results, truth);
        if (err > 1e-10) {
            detail = "roots of unity n = " + std::to_string(n) +
                     ": error " + std::to_string(err);
            return false;
        }
    }

    std::mt19937_64 rng(20240811);
    double worst_resid = 0.0, worst_recon = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        PolyD p = random_unit_box_poly(rng, 1 + trial % 15);
        std::vector<ftad::RootResult> results;
        try {
            results = ftad::find_all_roots(p, {});
        } catch (const ftad::ConvergenceError& err) {
            detail = "polynomial " + std::to_string(trial) + " failed to converge (" +
                     err.what() + ")";
            return false;
        }
        double majorant = ftad::residual_scale_majorant(p);
        for (const auto& res : results)
            worst_resid = std::max(worst_resid, res.residual / majorant);
        PolyD recon({p.coeffs().back()});
        for (const auto& res : results)
            recon = ftad::multiply(recon, PolyD({-res.root, C(1, 0)}));
        double max_orig = 0.0, max_err = 0.0;
        for (int j = 0; j <= p.degree(); ++j) {
            max_orig = std::max(max_orig, std::abs(p[j]));
            max_err = std::max(max_err, std::abs(recon[j] - p[j]));
        }
        worst_recon = std::max(worst_recon, max_err / max_orig);
    }
    double elapsed = std::chrono::duration<double>(clock_type::now() - t0).count();
    std::ostringstream os;
    os << "500 polynomials, worst residual " << worst_resid << " * scale, worst reconstruction "
       << worst_recon << ", " << elapsed << " s";
    detail = os.str();
    return worst_resid <= 1e-8 && worst_recon <= 1e-6 && elapsed < 120.0;
}

bool multiple_roots(std::string& detail) {
    DescentConfig cfg;
    cfg.tol_residual = 3e-14;

    auto cube = ftad::find_all_roots(PolyD({C(-1, 0), C(3, 0), C(-3, 0), C(1, 0)}), cfg);
    double cube_err = 0.0;
    for (const auto& res : cube) {
        cube_err = std::max(cube_err, std::abs(res.root - C(1, 0)));
        if (res.multiplicity != 3) {
            detail = "(z-1)^3: multiplicity " + std::to_string(res.multiplicity) + " reported";
            return false;
        }
    }

    auto mixed = ftad::find_all_roots(PolyD({C(2, 0), C(-3, 0), C(0, 0), C(1, 0)}), cfg);
    double mixed_err = std::max({std::abs(mixed[0].root - C(-2, 0)),
                                 std::abs(mixed[1].root - C(1, 0)),
                                 std::abs(mixed[2].root - C(1, 0))});
    if (mixed[0].multiplicity != 1 || mixed[1].multiplicity != 2 || mixed[2].multiplicity != 2) {
        detail = "z^3 - 3z + 2: multiplicities {" + std::to_string(mixed[0].multiplicity) + "," +
                 std::to_string(mixed[1].multiplicity) + "," +
                 std::to_string(mixed[2].multiplicity) + "}";
        return false;
    }

    std::ostringstream os;
    os << "(z-1)^3 err " << cube_err << " mult {3}; z^3-3z+2 err " << mixed_err
       << " mult {2,1}";
    detail = os.str();
    return cube_err <= 1e-4 && mixed_err <= 1e-4;
}

bool grid_oracle(std::string& detail) {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> coeff(-5, 5);
    double worst_gap = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        int degree = 1 + trial % 4;
        std::vector<C> c(degree + 1);
        for (auto& x : c) x = {static_cast<double>(coeff(rng)), static_cast<double>(coeff(rng))};
        while (std::abs(c.back()) == 0.0)
            c.back() = {static_cast<double>(coeff(rng)), static_cast<double>(coeff(rng))};
        PolyD p(c);

        auto results = ftad::find_all_roots(p, {});
        double solver_best = std::numeric_limits<double>::infinity();
        for (const auto& res : results) solver_best = std::min(solver_best, res.residual);

        double radius = ftad::root_bound(p);
        const int cells = 400;
        double h = 2.0 * radius / (cells - 1);
        double grid_min = std::numeric_limits<double>::infinity();
        for (int ix = 0; ix < cells; ++ix) {
            double x = -radius + ix * h;
            for (int iy = 0; iy < cells; ++iy) {
                double y = -radius + iy * h;
                if (x * x + y * y > radius * radius) continue;
                grid_min = std::min(grid_min, std::abs(p.eval(C(x, y))));
            }
        }
        double lipschitz = 0.0;
        for (int j = 1; j <= degree; ++j)
            lipschitz += j * std::abs(p[j]) * std::pow(radius, j - 1);
        double slack = lipschitz * h;
        if (solver_best > grid_min + slack) {
            detail = "solver best " + std::to_string(solver_best) + " above grid minimum " +
                     std::to_string(grid_min) + " + slack at trial " + std::to_string(trial);
            return false;
        }
        worst_gap = std::max(worst_gap, std::abs(solver_best - grid_min) / slack);
    }
    std::ostringstream os;
    os << "50 polynomials; worst |solver - grid| at " << worst_gap << " of the slack";
    detail = os.str();
    return true;
}

bool nth_root_oracle(std::string& detail) {
    double worst = 0.0;
    for (double a : {2.0, 10.0, 123.456}) {
        for (int n : {2, 3, 5, 7}) {
            double found = ftad::nth_root(a, n, {});
            double reference = bisect_nth_root(a, n);
            worst = std::max(worst, std::abs(found - reference) / reference);
        }
    }
    std::ostringstream os;
    os << "worst relative deviation " << worst;
    detail = os.str();
    return worst <= 1e-12;
}

bool remainder_bound_diagnostic(std::string& detail) {
    PolyD p({C(1, 0), C(0, 0), C(1, 0)});
    auto plain = ftad::verify_remainder_bound(p, C(0, 0), C(1, 0), 8);
    auto skew = ftad::verify_remainder_bound(p, C(0, 0), C(0.75, 1.0), 3);
    std::ostringstream os;
    os << "zeta=1: lhs " << plain.lhs << ", all " << plain.rows.size()
       << " samples satisfied; zeta=3/4+i: lhs " << skew.lhs << ", M " << skew.bound_m
       << ", all " << skew.rows.size() << " samples satisfied";
    detail = os.str();
    return plain.all_satisfied && skew.all_satisfied;
}

bool cli_determinism(std::string& detail) {
    const std::string poly = R"({"coeffs": [[-1, 1], [0.25, -2], [0, 0], [1, 0]]})";
    int code_a = 0, code_b = 0;
    std::string a = run_cli_capture("solve --seed 11", poly, code_a);
    std::string b = run_cli_capture("solve --seed 11", poly, code_b);
    if (code_a != 0 || code_b != 0) {
        detail = "solve exited with " + std::to_string(code_a) + "/" + std::to_string(code_b);
        return false;
    }
    if (a != b) {
        detail = "solve output differs between runs";
        return false;
    }
    int code_c = 0, code_d = 0;
    std::string c = run_cli_capture("verify-lemma --kmin 2 --kmax 50", "", code_c);
    std::string d = run_cli_capture("verify-lemma --kmin 2 --kmax 50", "", code_d);
    if (code_c != 0 || code_d != 0 || c != d) {
        detail = "verify-lemma output differs between runs";
        return false;
    }
    detail = "solve and verify-lemma byte-identical across repeated runs";
    return true;
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"lemma sweep, even k in [2, 1000]", lemma_sweep},
        {"binomial sum vs repeated squaring, even k in [2, 200]", binomial_vs_squaring},
        {"k = 2 closed values", k2_closed_values},
        {"direction guarantee, 10^4 alpha x k in [1, 30]", direction_guarantee},
        {"descent monotonicity across the corpus", descent_monotonicity},
        {"solver correctness (roots of unity + 500 random)", solver_correctness},
        {"multiple roots (z-1)^3 and z^3 - 3z + 2", multiple_roots},
        {"grid-search oracle, 50 random quartics", grid_oracle},
        {"nth_root vs bisection oracle", nth_root_oracle},
        {"remainder bound diagnostic", remainder_bound_diagnostic},
        {"CLI determinism", cli_determinism},
    };

    int failures = 0;
    for (auto& criterion : criteria) {
        std::string detail;
        bool ok = false;
        auto t0 = clock_type::now();
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& err) {
            detail = std::string("exception: ") + err.what();
        }
        double elapsed = std::chrono::duration<double>(clock_type::now() - t0).count();
        std::printf("[%s] %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", criterion.name.c_str(),
                    elapsed, detail.empty() ? "" : " — ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures;
}
