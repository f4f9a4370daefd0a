#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ftad/estermann.hpp"
#include "ftad/polynomial.hpp"

namespace ftad {

struct DescentConfig {
    double tol_residual = 1e-10;          // relative to eval_scale at the iterate
    double tau_k_detect = 1e-12;          // relative threshold for local multiplicity order
    int max_iters = 10000;                // accepted-step budget per attempt
    int max_backtracks = 200;             // dyadic trials per step
    double step_growth = 2.0;
    double step_shrink = 0.5;
    double sufficient_decrease_sigma = 0.5;
    int restart_attempts = 8;
    unsigned long seed = 0;               // offsets the restart sequence
    bool collect_trace = false;

    void validate() const {
        auto bad = [](const char* what) {
            throw std::invalid_argument(std::string("DescentConfig: ") + what);
        };
        if (!(tol_residual > 0)) bad("tol_residual must be positive");
        if (!(tau_k_detect > 0)) bad("tau_k_detect must be positive");
        if (max_iters < 1) bad("max_iters must be positive");
        if (max_backtracks < 1) bad("max_backtracks must be positive");
        if (!(step_growth > 1)) bad("step_growth must exceed 1");
        if (!(step_shrink > 0 && step_shrink < 1)) bad("step_shrink must lie in (0,1)");
        if (!(sufficient_decrease_sigma > 0 && sufficient_decrease_sigma <= 1))
            bad("sufficient_decrease_sigma must lie in (0,1]");
        if (restart_attempts < 0) bad("restart_attempts must be nonnegative");
    }
};

/// One accepted step (or the starting point of an attempt, marked k = 0).
struct StepRecord {
    int attempt = 0;
    std::complex<double> z{};
    double abs2 = 0.0;  // |P(z)|^2 at this record's z
    std::complex<double> zeta{};
    int k = 0;
    double r = 0.0;
    int backtracks = 0;
};

using DescentTrace = std::vector<StepRecord>;

struct RootResult {
    std::complex<double> root{};
    double residual = 0.0;  // |P(root)|
    int iterations = 0;     // accepted steps, all attempts included
    int multiplicity = 1;   // local order k observed at the converged point
    DescentTrace trace;     // populated when DescentConfig::collect_trace is set
};

struct ConvergenceError : std::runtime_error {
    ConvergenceError(std::string message, RootResult best_so_far, int stage_index = 0)
        : std::runtime_error(std::move(message)), best(std::move(best_so_far)),
          stage(stage_index) {}
    RootResult best;  // the lowest-residual point reached before giving up
    int stage;        // deflation stage, for find_all_roots
};

enum class StepStatus { accepted, at_root, degenerate_direction, backtracks_exhausted };

struct StepOutcome {
    StepStatus status = StepStatus::accepted;
    std::complex<double> z1{};
    double abs2_before = 0.0;
    double abs2_after = 0.0;
    std::complex<double> zeta{};
    int k = 0;
    double r = 0.0;
    int backtracks = 0;
    double descent_value = 0.0;  // Re[alpha zeta^k] for the chosen candidate
};

namespace detail {

inline double pow_int(double x, int n) {
    double acc = 1.0;
    for (int i = 0; i < n; ++i) acc *= x;
    return acc;
}

// Direction candidates in double precision, memoized per k.
class DirectionCache {
  public:
    const std::vector<std::pair<std::complex<double>, std::complex<double>>>& get(int k) {
        auto it = cache_.find(k);
        if (it != cache_.end()) return it->second;
        std::vector<std::pair<std::complex<double>, std::complex<double>>> entry;
        for (const auto& cand : candidates(k).candidates)
            entry.emplace_back(cand.zeta.to_complex(), cand.zeta_pow.to_complex());
        return cache_.emplace(k, std::move(entry)).first->second;
    }

  private:
    std::map<int, std::vector<std::pair<std::complex<double>, std::complex<double>>>> cache_;
};

inline double frac(double x) { return x - std::floor(x); }

// Deterministic low-discrepancy points in the disc of radius R;
// m = 1, 2, ... indexes restarts.
inline std::complex<double> restart_point(double radius, int m, unsigned long seed) {
    const double g1 = 0.7548776662466927;  // plastic-constant pair
    const double g2 = 0.5698402909980532;
    double off1 = frac(static_cast<double>(seed) * 0.6180339887498949);
    double off2 = frac(static_cast<double>(seed) * 0.4142135623730951);
    double u1 = frac(g1 * m + off1);
    double u2 = frac(g2 * m + off2);
    std::complex<double> z(radius * (2.0 * u1 - 1.0), radius * (2.0 * u2 - 1.0));
    double a = std::abs(z);
    if (a > radius && a > 0.0) z *= 0.9 * radius / a;
    return z;
}

} // namespace detail

/// One strict-descent step on |P|^2 from z0. The direction comes from
/// select_direction on alpha = conj(c0) ck; the radius is the largest
/// dyadic multiple of r_prev (growth first, then halving) that passes
/// the sufficient-decrease test
///   |P(z1)|^2 <= |P(z0)|^2 - sigma r^k |Re[alpha zeta^k]|.
inline StepOutcome descent_step(const PolyD& p, std::complex<double> z0, double r_prev,
                                const DescentConfig& cfg) {
    static thread_local detail::DirectionCache direction_cache;
    StepOutcome out;
    std::complex<double> f0 = p.eval(z0);
    out.abs2_before = std::norm(f0);
    double threshold = cfg.tol_residual * eval_scale(p, std::abs(z0));
    if (std::abs(f0) <= threshold) {
        out.status = StepStatus::at_root;
        return out;
    }

    LocalForm<std::complex<double>> form;
    try {
        form = local_form(p, z0, cfg.tau_k_detect);
    } catch (const LocalFormError&) {
        out.status = StepStatus::degenerate_direction;
        return out;
    }
    out.k = form.k;
    std::complex<double> alpha = std::conj(form.c0) * form.ck;
    double alpha_scale = std::abs(form.c0) * std::abs(form.ck);

    const auto& cands = direction_cache.get(form.k);
    std::complex<double> best_zeta{};
    double best_value = 0.0;
    bool have = false;
    if (std::norm(alpha) > 1e-28 * alpha_scale * alpha_scale) {
        for (const auto& [zeta, zeta_pow] : cands) {
            double value = alpha.real() * zeta_pow.real() - alpha.imag() * zeta_pow.imag();
            if (!have || value < best_value) {
                best_zeta = zeta;
                best_value = value;
                have = true;
            }
        }
    }
    if (!have || !(best_value < 0.0)) {
        out.status = StepStatus::degenerate_direction;
        return out;
    }
    out.zeta = best_zeta;
    out.descent_value = best_value;

    double r = r_prev * cfg.step_growth;
    for (int bt = 0; bt <= cfg.max_backtracks; ++bt) {
        std::complex<double> z1 = z0 + r * best_zeta;
        double a1 = std::norm(p.eval(z1));
        double predicted = cfg.sufficient_decrease_sigma * detail::pow_int(r, form.k) *
                           (-best_value);
        if (a1 < out.abs2_before && a1 <= out.abs2_before - predicted) {
            out.status = StepStatus::accepted;
            out.z1 = z1;
            out.abs2_after = a1;
            out.r = r;
            out.backtracks = bt;
            return out;
        }
        r *= cfg.step_shrink;
    }
    out.status = StepStatus::backtracks_exhausted;
    return out;
}

namespace detail {

// Largest order j such that the shifted coefficients are consistent with
// an exactly j-fold zero at distance delta = (|c0|/|c_j|)^(1/j): each
// lower coefficient must satisfy |c_i| <= K C(j,i) |c_j| delta^(j-i),
// compared in the radical-free power form |c_i|^j <= (K C(j,i))^j |c_j|^i |c0|^(j-i).
inline int estimate_multiplicity(const std::vector<std::complex<double>>& shifted) {
    constexpr double kSlack = 8.0;
    int n = static_cast<int>(shifted.size()) - 1;
    double a0 = std::abs(shifted[0]);
    int best = 1;
    for (int j = 2; j <= n; ++j) {
        if (scalar_traits<std::complex<double>>::is_zero(shifted[j])) continue;
        double cj = std::abs(shifted[j]);
        bool ok = true;
        for (int i = 1; i < j && ok; ++i) {
            double lhs = pow_int(std::abs(shifted[i]), j);
            double factor = kSlack * to_double(Rational(binomial(j, i)));
            double rhs = pow_int(factor, j) * pow_int(cj, i) * pow_int(a0, j - i);
            ok = lhs <= rhs;
        }
        if (ok) best = j;
    }
    return best;
}

inline int multiplicity_at(const PolyD& p, std::complex<double> z) {
    if (p.degree() < 1) return 1;
    return estimate_multiplicity(taylor_shift(p, z).coeffs());
}

// Best-effort descent polish toward the floating-point floor, starting
// from a small radius so the iterate stays in its root's basin.
inline std::pair<std::complex<double>, int> polish(const PolyD& p, std::complex<double> z,
                                                   const DescentConfig& cfg,
                                                   DescentTrace* trace, int attempt) {
    constexpr int kPolishIters = 64;
    DescentConfig polish_cfg = cfg;
    polish_cfg.tol_residual =
        std::min(cfg.tol_residual, 32.0 * std::numeric_limits<double>::epsilon());
    double r_prev = 1e-6 * (1.0 + std::abs(z));
    int accepted = 0;
    if (trace) trace->push_back({attempt, z, std::norm(p.eval(z)), {}, 0, 0.0, 0});
    for (int iter = 0; iter < kPolishIters; ++iter) {
        StepOutcome out = descent_step(p, z, r_prev, polish_cfg);
        if (out.status != StepStatus::accepted) break;
        z = out.z1;
        r_prev = out.r;
        ++accepted;
        if (trace)
            trace->push_back({attempt, z, out.abs2_after, out.zeta, out.k, out.r, out.backtracks});
    }
    return {z, accepted};
}

} // namespace detail

/// Iterates descent_step from z_init until the residual test
/// |P(z)| <= tol_residual * eval_scale(P, |z|) holds; stalls restart
/// from deterministic low-discrepancy points inside the enclosure disc.
/// Throws ConvergenceError (carrying the best point seen) if every
/// attempt is exhausted.
inline RootResult find_root(const PolyD& p, std::complex<double> z_init,
                            const DescentConfig& cfg = {}) {
    if (p.is_zero() || p.degree() < 1)
        throw std::domain_error("find_root: degree must be >= 1");
    cfg.validate();
    double radius = root_bound(p);

    RootResult best;
    best.root = z_init;
    best.residual = std::abs(p.eval(z_init));
    int total_iters = 0;
    DescentTrace trace;

    std::complex<double> z = z_init;
    for (int attempt = 0; attempt <= cfg.restart_attempts; ++attempt) {
        double r_prev = 1.0;
        if (cfg.collect_trace) trace.push_back({attempt, z, std::norm(p.eval(z)), {}, 0, 0.0, 0});
        for (int iter = 0; iter < cfg.max_iters; ++iter) {
            StepOutcome out = descent_step(p, z, r_prev, cfg);
            if (out.status == StepStatus::at_root) {
                RootResult result;
                result.root = z;
                result.residual = std::abs(p.eval(z));
                result.iterations = total_iters;
                result.multiplicity = detail::multiplicity_at(p, z);
                result.trace = std::move(trace);
                return result;
            }
            if (out.status != StepStatus::accepted) break;
            z = out.z1;
            r_prev = out.r;
            ++total_iters;
            if (cfg.collect_trace)
                trace.push_back(
                    {attempt, z, out.abs2_after, out.zeta, out.k, out.r, out.backtracks});
            if (out.abs2_after < best.residual * best.residual) {
                best.root = z;
                best.residual = std::sqrt(out.abs2_after);
            }
        }
        z = detail::restart_point(radius, attempt + 1, cfg.seed);
    }
    best.iterations = total_iters;
    best.multiplicity = detail::multiplicity_at(p, best.root);
    best.trace = std::move(trace);
    throw ConvergenceError("find_root: restart budget exhausted", std::move(best));
}

/// All degree(P) roots (with multiplicity): repeated find_root from 0 on
/// the deflated polynomial, each root polished against the original
/// before deflation, one simultaneous polish pass at the end, results
/// sorted by (re, im).
inline std::vector<RootResult> find_all_roots(const PolyD& p, const DescentConfig& cfg = {}) {
    if (p.is_zero() || p.degree() < 1)
        throw std::domain_error("find_all_roots: degree must be >= 1");
    cfg.validate();
    const int n = p.degree();
    std::vector<RootResult> results;
    results.reserve(n);
    PolyD work = p;
    for (int stage = 0; stage < n; ++stage) {
        RootResult res;
        try {
            res = find_root(work, {0.0, 0.0}, cfg);
        } catch (ConvergenceError& err) {
            err.stage = stage;
            throw;
        }
        DescentTrace* trace = cfg.collect_trace ? &res.trace : nullptr;
        int polish_attempt = res.trace.empty() ? 1 : res.trace.back().attempt + 1;
        auto [root, extra] = detail::polish(p, res.root, cfg, trace, polish_attempt);
        res.root = root;
        res.iterations += extra;
        work = deflate(work, root).first;
        results.push_back(std::move(res));
    }
    for (auto& res : results) {
        DescentTrace* trace = cfg.collect_trace ? &res.trace : nullptr;
        int polish_attempt = res.trace.empty() ? 0 : res.trace.back().attempt + 1;
        auto [root, extra] = detail::polish(p, res.root, cfg, trace, polish_attempt);
        res.root = root;
        res.iterations += extra;
        res.residual = std::abs(p.eval(root));
        res.multiplicity = detail::multiplicity_at(p, root);
    }
    std::sort(results.begin(), results.end(), [](const RootResult& a, const RootResult& b) {
        if (a.root.real() != b.root.real()) return a.root.real() < b.root.real();
        return a.root.imag() < b.root.imag();
    });
    return results;
}

/// The unique b >= 0 with b^n = a, found as |root| of z^n - a. The square
/// root forming the modulus is the only radical used.
inline double nth_root(double a, int n, const DescentConfig& cfg = {}) {
    if (!(a >= 0)) throw std::domain_error("nth_root: a must be nonnegative");
    if (n < 1) throw std::domain_error("nth_root: n must be >= 1");
    if (a == 0.0) return 0.0;
    std::vector<std::complex<double>> coeffs(static_cast<std::size_t>(n) + 1, {0.0, 0.0});
    coeffs[0] = {-a, 0.0};
    coeffs.back() = {1.0, 0.0};
    PolyD p(std::move(coeffs));
    RootResult res = find_root(p, {0.0, 0.0}, cfg);
    auto [root, extra] = detail::polish(p, res.root, cfg, nullptr, 0);
    return std::sqrt(root.real() * root.real() + root.imag() * root.imag());
}

/// One sampled comparison of the remainder-bound diagnostic.
struct RemainderBoundRow {
    double r = 0.0;
    double lhs = 0.0;     // -2 Re[conj(c0) zeta^k Q(0)]
    double middle = 0.0;  // 2 r M + r^k M
    double rhs = 0.0;     // 3 r M
    bool satisfied = false;
};

struct RemainderBoundReport {
    int k = 0;
    std::complex<double> c0{};
    std::complex<double> ck{};
    std::complex<double> zeta{};
    double bound_m = 0.0;
    double lhs = 0.0;
    std::vector<RemainderBoundRow> rows;
    bool all_satisfied = false;
};

/// Checks -2 Re[conj(c0) zeta^k Q(0)] <= 3 r M at r = 1/2, ..., 2^-r_samples,
/// where Q(w) = Q(0) + w R(w) comes from the local form at z0 and M is the
/// coefficient-sum majorant of max(|c0 zeta^(k+1) R(r zeta)|, |zeta^k Q(r zeta)|^2)
/// over r in (0,1).
inline RemainderBoundReport verify_remainder_bound(const PolyD& p, std::complex<double> z0,
                                          std::complex<double> zeta, int r_samples,
                                          double tau = 1e-12) {
    if (r_samples < 1) throw std::invalid_argument("verify_remainder_bound: r_samples must be >= 1");
    LocalForm<std::complex<double>> form = local_form(p, z0, tau);

    RemainderBoundReport report;
    report.k = form.k;
    report.c0 = form.c0;
    report.ck = form.ck;
    report.zeta = zeta;

    double az = std::abs(zeta);
    const auto& shifted = form.shifted;
    double sum_r = 0.0;  // sum_j |R_j| |zeta|^j for Q(w) = Q(0) + w R(w)
    double sum_q = 0.0;  // sum_j |Q_j| |zeta|^(k+j)
    for (std::size_t j = form.k; j < shifted.size(); ++j) {
        std::size_t jq = j - form.k;
        sum_q += std::abs(shifted[j]) * detail::pow_int(az, form.k + static_cast<int>(jq));
        if (jq >= 1) sum_r += std::abs(shifted[j]) * detail::pow_int(az, static_cast<int>(jq) - 1);
    }
    report.bound_m = std::max(std::abs(form.c0) * detail::pow_int(az, form.k + 1) * sum_r,
                              sum_q * sum_q);

    std::complex<double> zeta_k = 1.0;
    for (int i = 0; i < form.k; ++i) zeta_k *= zeta;
    report.lhs = -2.0 * (std::conj(form.c0) * zeta_k * form.ck).real();

    report.all_satisfied = true;
    double r = 1.0;
    for (int m = 1; m <= r_samples; ++m) {
        r *= 0.5;
        RemainderBoundRow row;
        row.r = r;
        row.lhs = report.lhs;
        row.middle = 2.0 * r * report.bound_m + detail::pow_int(r, form.k) * report.bound_m;
        row.rhs = 3.0 * r * report.bound_m;
        row.satisfied = report.lhs <= row.rhs;
        report.all_satisfied = report.all_satisfied && row.satisfied;
        report.rows.push_back(row);
    }
    return report;
}

} // namespace ftad
