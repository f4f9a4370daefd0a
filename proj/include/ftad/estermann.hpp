#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ftad/gaussian_rational.hpp"
#include "ftad/polynomial.hpp"
#include "ftad/rational.hpp"

namespace ftad {

/// Exact verification record for one even k: the signs of zeta^k, the
/// head-chain value and its closed form, and the per-j signs of the
/// paired terms in the real and imaginary expansion sums.
struct LemmaReport {
    int k = 0;
    GaussianRational zeta_pow;           // zeta^k
    int sign_re = 0;
    int sign_im = 0;
    Rational head_value;                 // 1 - C(2k,2)/k^2 + C(2k,4)/k^4
    Rational head_closed_form;           // -(3/2)*(5k-3)/(6k^2)
    bool head_factored_matches = false;  // head equals 1 - (2-1/k)(2/3+5/(6k)-1/(2k^2))
    bool head_le_closed_form = false;
    std::vector<int> re_pair_signs;      // odd j = 3, 5, ..., k-1
    std::vector<int> im_pair_signs;      // odd j = 1, 3, ..., k-1
    bool pass = false;
};

/// zeta = (1 + i/k)^2 = (1 - 1/k^2) + (2/k) i, exact. Even k >= 2 only.
inline GaussianRational estermann_zeta(int k) {
    if (k < 2 || k % 2 != 0)
        throw std::domain_error("estermann_zeta: k must be even and >= 2");
    BigInt kk = BigInt(k) * k;
    return GaussianRational(Rational(1) - Rational(1, kk), Rational(2, k));
}

namespace detail {

// C(2k, t) / k^t
inline Rational binomial_over_kpow(int k, unsigned long t) {
    return make_rational(binomial(2ul * static_cast<unsigned long>(k), t),
                         boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(t)));
}

} // namespace detail

/// zeta^k assembled term by term from the two alternating binomial
/// expansion sums of (1 + i/k)^(2k): the real sum is the three head
/// terms plus paired terms over odd j in [3, k-1], the imaginary sum is
/// paired terms over odd j in [1, k-1]. Exact; equals pow(estermann_zeta(k), k).
inline GaussianRational zeta_pow_via_binomial(int k) {
    if (k < 2 || k % 2 != 0)
        throw std::domain_error("zeta_pow_via_binomial: k must be even and >= 2");
    auto term = [&](unsigned long t) { return detail::binomial_over_kpow(k, t); };
    Rational re_sum = Rational(1) - term(2) + term(4);
    for (int j = 3; j <= k - 1; j += 2)
        re_sum += -term(2ul * j) + term(2ul * j + 2);
    Rational im_sum = 0;
    for (int j = 1; j <= k - 1; j += 2)
        im_sum += term(2ul * j - 1) - term(2ul * j + 1);
    return GaussianRational(re_sum, im_sum);
}

/// Checks Re[zeta^k] < 0 < Im[zeta^k] in exact arithmetic, together with
/// the inequalities behind it: the head chain and the sign of every
/// paired term of the two expansion sums. Pair signs are decided over
/// the common positive denominator k^(2j+2), i.e. as signs of
/// C(2k,2j+2) - C(2k,2j) k^2 and C(2k,2j-1) k^2 - C(2k,2j+1).
inline LemmaReport verify_lemma(int k) {
    if (k < 2 || k % 2 != 0)
        throw std::domain_error("verify_lemma: k must be even and >= 2");
    LemmaReport report;
    report.k = k;
    report.zeta_pow = pow(estermann_zeta(k), static_cast<unsigned long>(k));
    auto [sr, si] = report.zeta_pow.signs();
    report.sign_re = sr;
    report.sign_im = si;

    Rational rk(1, k);
    report.head_value =
        Rational(1) - detail::binomial_over_kpow(k, 2) + detail::binomial_over_kpow(k, 4);
    Rational factored_middle =
        Rational(1) - (Rational(2) - rk) * (Rational(2, 3) + Rational(5, 6) * rk -
                                            Rational(1, 2) * rk * rk);
    report.head_factored_matches = report.head_value == factored_middle;
    report.head_closed_form =
        -Rational(3, 2) * make_rational(BigInt(5) * k - 3, BigInt(6) * k * k);
    report.head_le_closed_form = report.head_value <= report.head_closed_form;

    // One incremental walk over C(2k, t); pair signs need only integer
    // comparisons against k^2.
    const BigInt k2 = BigInt(k) * k;
    const unsigned long two_k = 2ul * static_cast<unsigned long>(k);
    BigInt binom = 1;  // C(2k, 0)
    BigInt held_re = 0, held_im = 0;
    for (unsigned long t = 0; t <= two_k; ++t) {
        if (t >= 1) {
            binom *= BigInt(two_k - (t - 1));
            binom /= BigInt(t);
        }
        unsigned long m = t % 4;
        if (m == 1 && t + 2 <= two_k - 1) held_im = binom;             // t = 2j-1, odd j
        if (m == 3) report.im_pair_signs.push_back(BigInt(held_im * k2 - binom).sign());
        if (m == 2 && t >= 6 && t + 2 <= two_k) held_re = binom;       // t = 2j, odd j >= 3
        if (m == 0 && t >= 8) report.re_pair_signs.push_back(BigInt(binom - held_re * k2).sign());
    }

    bool pairs_ok = true;
    for (int s : report.re_pair_signs) pairs_ok = pairs_ok && s == -1;
    for (int s : report.im_pair_signs) pairs_ok = pairs_ok && s == +1;
    report.pass = report.sign_re == -1 && report.sign_im == +1 && pairs_ok &&
                  report.head_value < 0;
    return report;
}

/// Sweep of verify_lemma over even k in [kmin, kmax], ordered by k.
/// The per-k checks are independent, so they run on a small thread pool.
inline std::vector<LemmaReport> verify_lemma_range(int kmin, int kmax,
                                                   unsigned threads = 0) {
    if (kmin < 2 || kmin % 2 != 0 || kmax % 2 != 0 || kmax < kmin)
        throw std::domain_error("verify_lemma_range: bounds must be even with 2 <= kmin <= kmax");
    std::size_t count = static_cast<std::size_t>((kmax - kmin) / 2 + 1);
    std::vector<LemmaReport> reports(count);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t idx = t; idx < count; idx += threads)
                reports[idx] = verify_lemma(kmin + 2 * static_cast<int>(idx));
        });
    }
    for (auto& th : pool) th.join();
    return reports;
}

/// One descent-direction candidate with its exactly precomputed power.
struct DirectionCandidate {
    GaussianRational zeta;
    GaussianRational zeta_pow;  // zeta^k
};

/// Canonical candidate set for multiplicity order k: the four fourth
/// roots of unity when k is odd, and [1, zeta_E, conj(zeta_E)] with
/// zeta_E = (1 + i/k)^2 when k is even.
struct DirectionSet {
    int k = 0;
    std::vector<DirectionCandidate> candidates;
};

inline DirectionSet candidates(int k) {
    if (k < 1) throw std::domain_error("candidates: k must be >= 1");
    DirectionSet set;
    set.k = k;
    auto add = [&](const GaussianRational& zeta) {
        set.candidates.push_back({zeta, pow(zeta, static_cast<unsigned long>(k))});
    };
    if (k % 2 == 1) {
        add(GaussianRational(1, 0));
        add(GaussianRational(-1, 0));
        add(GaussianRational(0, 1));
        add(GaussianRational(0, -1));
    } else {
        GaussianRational zeta_e = estermann_zeta(k);
        add(GaussianRational(1, 0));
        add(zeta_e);
        add(zeta_e.conj());
    }
    return set;
}

template <class T, class R>
struct SelectedDirection {
    T zeta{};
    T zeta_pow{};
    R value{};  // Re[alpha * zeta^k], strictly negative for alpha != 0
};

/// Exact direction selection: the candidate minimizing Re[alpha zeta^k],
/// ties broken by canonical order. Empty exactly when alpha = 0.
inline std::optional<SelectedDirection<GaussianRational, Rational>>
select_direction(const GaussianRational& alpha, int k) {
    if (alpha.is_zero()) return std::nullopt;
    DirectionSet set = candidates(k);
    SelectedDirection<GaussianRational, Rational> best;
    bool have = false;
    for (const auto& cand : set.candidates) {
        Rational value = alpha.re() * cand.zeta_pow.re() - alpha.im() * cand.zeta_pow.im();
        if (!have || value < best.value) {
            best = {cand.zeta, cand.zeta_pow, value};
            have = true;
        }
    }
    return best;
}

/// Floating-point overload; alpha counts as zero below 1e-14 relative
/// to alpha_scale (callers pass |c0| * |ck|).
inline std::optional<SelectedDirection<std::complex<double>, double>>
select_direction(std::complex<double> alpha, int k, double alpha_scale) {
    constexpr double kZeroTol = 1e-14;
    if (std::norm(alpha) <= kZeroTol * kZeroTol * alpha_scale * alpha_scale)
        return std::nullopt;
    DirectionSet set = candidates(k);
    SelectedDirection<std::complex<double>, double> best;
    bool have = false;
    for (const auto& cand : set.candidates) {
        std::complex<double> zp = cand.zeta_pow.to_complex();
        double value = alpha.real() * zp.real() - alpha.imag() * zp.imag();
        if (!have || value < best.value) {
            best = {cand.zeta.to_complex(), zp, value};
            have = true;
        }
    }
    return best;
}

} // namespace ftad
