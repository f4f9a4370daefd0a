#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ftad {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline int sign_of(const Rational& q) { return q.sign(); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Builds num/den in lowest terms with positive denominator.
inline Rational make_rational(BigInt num, BigInt den) {
    if (den == 0) throw std::domain_error("make_rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

inline std::string to_string(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

/// Parses "p", "p/q", with optional leading sign. Rejects anything else.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&](const char* why) {
        throw std::invalid_argument("parse_rational: " + std::string(why) + " in '" +
                                    std::string(text) + "'");
    };
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }
    std::size_t digits_begin = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits_begin) fail("missing numerator digits");
    BigInt num(std::string(text.substr(digits_begin, pos - digits_begin)));
    BigInt den = 1;
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        std::size_t den_begin = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == den_begin) fail("missing denominator digits");
        den = BigInt(std::string(text.substr(den_begin, pos - den_begin)));
        if (den == 0) fail("zero denominator");
    }
    if (pos != text.size()) fail("trailing characters");
    if (negative) num = -num;
    return Rational(num, den);
}

} // namespace ftad
