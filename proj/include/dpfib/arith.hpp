#pragma once

/**
 * @file arith.hpp
 * @brief Exact integer and rational arithmetic primitives shared by all modules.
 *
 * All geometric computations in this library are exact: lattice pairings use
 * checked 64-bit integers (overflow throws, never wraps), and polyhedral /
 * counting computations use boost::multiprecision rationals. No floating
 * point enters any result; doubles appear only in diagnostics.
 */

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpfib {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Thrown when a checked 64-bit operation would overflow.
class OverflowError : public std::overflow_error {
public:
    explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

/// Checked addition of 64-bit integers; throws OverflowError instead of wrapping.
inline long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r))
        throw OverflowError("integer overflow in addition");
    return r;
}

/// Checked multiplication of 64-bit integers; throws OverflowError instead of wrapping.
inline long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r))
        throw OverflowError("integer overflow in multiplication");
    return r;
}

/// Checked subtraction of 64-bit integers; throws OverflowError instead of wrapping.
inline long long checked_sub(long long a, long long b) {
    long long r;
    if (__builtin_sub_overflow(a, b, &r))
        throw OverflowError("integer overflow in subtraction");
    return r;
}

/// q^e for a rational base and non-negative integer exponent, exactly.
inline Rational pow_rational(const Rational& q, unsigned long e) {
    Rational acc(1);
    Rational base = q;
    while (e > 0) {
        if (e & 1UL) acc *= base;
        base *= base;
        e >>= 1UL;
    }
    return acc;
}

/// Floor of a rational number as an arbitrary-precision integer.
inline Int floor_rational(const Rational& x) {
    Int n = boost::multiprecision::numerator(x);
    Int d = boost::multiprecision::denominator(x);  // always > 0
    Int q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

/// Ceiling of a rational number as an arbitrary-precision integer.
inline Int ceil_rational(const Rational& x) {
    return -floor_rational(-x);
}

/**
 * @brief Renders an exact rational as a decimal string with a fixed number of
 *        significant digits, rounding half to even.
 *
 * Used for all human-facing decimal output; callers that need the exact value
 * use the numerator/denominator directly.
 */
inline std::string decimal_string(const Rational& x, int significant_digits = 12) {
    if (x == 0) return "0";
    std::string sign = x < 0 ? "-" : "";
    Rational a = x < 0 ? Rational(-x) : x;

    // Find the decimal exponent: smallest e with a < 10^(e+1), i.e. 10^e <= a < 10^(e+1).
    int e = 0;
    Rational ten(10);
    if (a >= 1) {
        Rational p(1);
        while (p * ten <= a) { p *= ten; ++e; }
    } else {
        Rational p(1);
        while (p > a) { p /= ten; --e; }
    }

    // Scale so that we keep `significant_digits` digits: digits = round(a * 10^(digits-1-e)).
    int shift = significant_digits - 1 - e;
    Rational scaled = a;
    for (int i = 0; i < shift; ++i) scaled *= ten;
    for (int i = 0; i < -shift; ++i) scaled /= ten;

    // Round half to even.
    Int fl = floor_rational(scaled);
    Rational frac = scaled - Rational(fl);
    Int digits_int = fl;
    if (frac > Rational(1, 2)) ++digits_int;
    else if (frac == Rational(1, 2) && (fl % 2 != 0)) ++digits_int;

    std::string digits = digits_int.str();
    if (static_cast<int>(digits.size()) > significant_digits) {
        // Rounding carried into an extra digit (e.g. 999.. -> 1000..).
        digits.pop_back();
        ++e;
    }

    // Emit either plain decimal or scientific notation depending on magnitude.
    std::string out;
    if (e >= 0 && e < significant_digits) {
        out = digits.substr(0, static_cast<size_t>(e) + 1);
        std::string tail = digits.substr(static_cast<size_t>(e) + 1);
        while (!tail.empty() && tail.back() == '0') tail.pop_back();
        if (!tail.empty()) out += "." + tail;
    } else if (e < 0 && e > -5) {
        out = "0.";
        for (int i = 1; i < -e; ++i) out += '0';
        std::string tail = digits;
        while (tail.size() > 1 && tail.back() == '0') tail.pop_back();
        out += tail;
    } else {
        out = digits.substr(0, 1);
        std::string tail = digits.substr(1);
        while (!tail.empty() && tail.back() == '0') tail.pop_back();
        if (!tail.empty()) out += "." + tail;
        out += "e" + std::to_string(e);
    }
    return sign + out;
}

/// Convert an exact rational to double (diagnostics only).
inline double to_double(const Rational& x) {
    return x.convert_to<double>();
}

}  // namespace dpfib
