#pragma once

#include <cctype>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "ftad/rational.hpp"

namespace ftad {

/// Exact complex number with rational real and imaginary parts.
///
/// Both components are kept in lowest terms with positive denominator
/// (the underlying rational type canonicalizes after every operation),
/// so equality is componentwise and exact. All operations are pure.
class GaussianRational {
  public:
    GaussianRational() = default;
    GaussianRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {}
    GaussianRational(long re, long im) : re_(re), im_(im) {}

    static GaussianRational i() { return GaussianRational(0, 1); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussianRational conj() const { return GaussianRational(re_, -im_); }

    /// |z|^2 = re^2 + im^2, exact; the modulus itself is never formed.
    Rational norm_sq() const { return re_ * re_ + im_ * im_; }

    /// Exact signs of the two components, each in {-1, 0, +1}.
    std::pair<int, int> signs() const { return {re_.sign(), im_.sign()}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re_ - b.re_, a.im_ - b.im_);
    }
    GaussianRational operator-() const { return GaussianRational(-re_, -im_); }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        if (b.is_zero()) throw std::domain_error("GaussianRational: division by zero");
        Rational n = b.norm_sq();
        GaussianRational num = a * b.conj();
        return GaussianRational(num.re_ / n, num.im_ / n);
    }

    GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
    GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
    GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }
    GaussianRational& operator/=(const GaussianRational& b) { return *this = *this / b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
        return !(a == b);
    }

    std::complex<double> to_complex() const { return {to_double(re_), to_double(im_)}; }

    /// Canonical text form "p/q+r/si" (denominators omitted when 1),
    /// e.g. "-7/16+3/2i". Round-trips through parse().
    std::string to_string() const {
        std::string s = ftad::to_string(re_);
        s += im_.sign() < 0 ? '-' : '+';
        Rational mag = im_.sign() < 0 ? Rational(-im_) : im_;
        s += ftad::to_string(mag);
        s += 'i';
        return s;
    }

    static GaussianRational parse(std::string_view text);

  private:
    Rational re_ = 0;
    Rational im_ = 0;
};

inline GaussianRational conj(const GaussianRational& a) { return a.conj(); }

/// a^n by repeated squaring, exact. a^0 = 1 for every a (0^0 = 1).
inline GaussianRational pow(const GaussianRational& a, unsigned long n) {
    GaussianRational result(1, 0);
    GaussianRational base = a;
    while (n != 0) {
        if (n & 1u) result *= base;
        base *= base;
        n >>= 1u;
    }
    return result;
}

inline GaussianRational GaussianRational::parse(std::string_view text) {
    std::string stripped;
    stripped.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) stripped += c;
    auto fail = [&]() {
        throw std::invalid_argument("GaussianRational::parse: malformed '" + std::string(text) +
                                    "'");
    };
    if (stripped.empty()) fail();

    // Split at the sign that separates the imaginary part: the last '+'
    // or '-' that is not the leading sign and not right after '/'.
    std::size_t split = std::string::npos;
    for (std::size_t p = stripped.size(); p-- > 1;) {
        if ((stripped[p] == '+' || stripped[p] == '-') && stripped[p - 1] != '/') {
            split = p;
            break;
        }
    }
    if (stripped.back() != 'i' || split == std::string::npos) fail();
    std::string re_text = stripped.substr(0, split);
    std::string im_text = stripped.substr(split, stripped.size() - split - 1);
    if (im_text.size() < 2) fail();  // needs the sign plus at least one digit
    try {
        return GaussianRational(parse_rational(re_text), parse_rational(im_text));
    } catch (const std::invalid_argument&) {
        fail();
    }
    return {};  // unreachable
}

} // namespace ftad
