#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ftad/gaussian_rational.hpp"
#include "ftad/rational.hpp"

namespace ftad {

/// Coefficient-type requirements shared by the exact and floating lanes.
template <class T>
struct scalar_traits;

template <>
struct scalar_traits<std::complex<double>> {
    static constexpr bool is_exact = false;
    using real_type = double;
    static std::complex<double> conjugate(const std::complex<double>& z) { return std::conj(z); }
    static double abs2(const std::complex<double>& z) { return std::norm(z); }
    static bool is_zero(const std::complex<double>& z) { return z.real() == 0.0 && z.imag() == 0.0; }
};

template <>
struct scalar_traits<GaussianRational> {
    static constexpr bool is_exact = true;
    using real_type = Rational;
    static GaussianRational conjugate(const GaussianRational& z) { return z.conj(); }
    static Rational abs2(const GaussianRational& z) { return z.norm_sq(); }
    static bool is_zero(const GaussianRational& z) { return z.is_zero(); }
};

struct LocalFormError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Dense polynomial, coefficients ascending (a0 ... an). Trailing exact
/// zeros are trimmed on construction; the zero polynomial is the empty
/// coefficient sequence and has no degree.
template <class T>
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<T> coeffs) : coeffs_(coeffs) { trim(); }

    bool is_zero() const { return coeffs_.empty(); }

    int degree() const {
        if (is_zero()) throw std::domain_error("Polynomial: zero polynomial has no degree");
        return static_cast<int>(coeffs_.size()) - 1;
    }

    const std::vector<T>& coeffs() const { return coeffs_; }

    const T& operator[](std::size_t j) const { return coeffs_[j]; }

    const T& leading() const {
        if (is_zero()) throw std::domain_error("Polynomial: zero polynomial has no leading coefficient");
        return coeffs_.back();
    }

    /// Horner evaluation; exact over exact coefficients.
    T eval(const T& z) const {
        if (is_zero()) throw std::domain_error("Polynomial::eval: zero polynomial");
        T acc = coeffs_.back();
        for (std::size_t j = coeffs_.size() - 1; j-- > 0;) acc = acc * z + coeffs_[j];
        return acc;
    }

  private:
    void trim() {
        while (!coeffs_.empty() && scalar_traits<T>::is_zero(coeffs_.back())) coeffs_.pop_back();
    }

    std::vector<T> coeffs_;
};

using PolyD = Polynomial<std::complex<double>>;
using PolyQ = Polynomial<GaussianRational>;

/// Exact binomial coefficient by the multiplicative rule.
inline BigInt binomial(unsigned long n, unsigned long j) {
    if (j > n) throw std::domain_error("binomial: j > n");
    if (j > n - j) j = n - j;
    BigInt result = 1;
    for (unsigned long t = 1; t <= j; ++t) {
        result *= BigInt(n - j + t);
        result /= BigInt(t);  // exact at every step
    }
    return result;
}

/// Coefficients of P(z0 + w) by repeated synthetic division.
template <class T>
Polynomial<T> taylor_shift(const Polynomial<T>& p, const T& z0) {
    if (p.is_zero()) throw std::domain_error("taylor_shift: zero polynomial");
    std::vector<T> c = p.coeffs();
    std::size_t n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j-- > i;) c[j] = c[j] + z0 * c[j + 1];
    return Polynomial<T>(std::move(c));
}

/// Synthetic division by (z - r): P(z) = (z - r) * Q(z) + remainder.
template <class T>
std::pair<Polynomial<T>, T> deflate(const Polynomial<T>& p, const T& r) {
    if (p.is_zero() || p.degree() < 1) throw std::domain_error("deflate: degree must be >= 1");
    const auto& a = p.coeffs();
    std::size_t n = a.size() - 1;
    std::vector<T> q(n);
    q[n - 1] = a[n];
    for (std::size_t j = n - 1; j-- > 0;) q[j] = a[j + 1] + r * q[j + 1];
    T remainder = a[0] + r * q[0];
    return {Polynomial<T>(std::move(q)), remainder};
}

/// Convolution product; used by tests and root-set reconstruction.
template <class T>
Polynomial<T> multiply(const Polynomial<T>& p, const Polynomial<T>& q) {
    if (p.is_zero() || q.is_zero()) return {};
    const auto& a = p.coeffs();
    const auto& b = q.coeffs();
    std::vector<T> c(a.size() + b.size() - 1, T{});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = c[i + j] + a[i] * b[j];
    return Polynomial<T>(std::move(c));
}

/// Cauchy-type enclosure radius: every root has modulus < root_bound(P).
inline double root_bound(const PolyD& p) {
    if (p.is_zero() || p.degree() < 1) throw std::domain_error("root_bound: degree must be >= 1");
    const auto& a = p.coeffs();
    double sum = 0.0;
    for (std::size_t j = 0; j + 1 < a.size(); ++j) sum += std::abs(a[j]);
    return std::max(1.0, sum / std::abs(a.back())) + 1.0;
}

/// Sum_j |a_j| |z|^j — the natural magnitude of P near |z|, and the
/// scale against which residuals are measured.
inline double eval_scale(const PolyD& p, double abs_z) {
    if (p.is_zero()) throw std::domain_error("eval_scale: zero polynomial");
    double acc = 0.0;
    const auto& a = p.coeffs();
    for (std::size_t j = a.size(); j-- > 0;) acc = acc * abs_z + std::abs(a[j]);
    return acc;
}

/// Global residual scale: eval_scale majorized over the enclosure disc.
inline double residual_scale_majorant(const PolyD& p) {
    return eval_scale(p, std::max(1.0, root_bound(p)));
}

/// Decomposition P(z0 + w) = c0 + ck w^k + higher, ck the first shifted
/// coefficient beyond index 0 that is significant.
template <class T>
struct LocalForm {
    int k = 0;
    T c0{};
    T ck{};
    std::vector<T> shifted;
};

/// In floating mode k is the smallest j >= 1 with |shifted[j]| above
/// tau * max_j |shifted[j]|; in exact mode tau is ignored and the test
/// is shifted[j] != 0. Throws LocalFormError when no such j exists.
template <class T>
LocalForm<T> local_form(const Polynomial<T>& p, const T& z0,
                        double tau = 1e-12) {
    if (p.is_zero() || p.degree() < 1)
        throw LocalFormError("local_form: polynomial is constant");
    Polynomial<T> shifted = taylor_shift(p, z0);
    const auto& c = shifted.coeffs();
    // taylor_shift preserves the leading coefficient, so c has full length.
    LocalForm<T> form;
    form.shifted = c;
    form.c0 = c[0];
    if constexpr (scalar_traits<T>::is_exact) {
        for (std::size_t j = 1; j < c.size(); ++j) {
            if (!scalar_traits<T>::is_zero(c[j])) {
                form.k = static_cast<int>(j);
                form.ck = c[j];
                return form;
            }
        }
    } else {
        double max_abs2 = 0.0;
        for (const auto& cj : c) max_abs2 = std::max(max_abs2, scalar_traits<T>::abs2(cj));
        double cut = tau * tau * max_abs2;
        for (std::size_t j = 1; j < c.size(); ++j) {
            if (scalar_traits<T>::abs2(c[j]) > cut) {
                form.k = static_cast<int>(j);
                form.ck = c[j];
                return form;
            }
        }
    }
    throw LocalFormError("local_form: numerically constant near z0");
}

} // namespace ftad
