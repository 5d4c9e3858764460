#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "abelint/errors.hpp"

namespace abelint {

// Exact rational on int64 with __int128 intermediates. Denominator always
// positive, fraction always reduced. Magnitudes here stay small (torsion
// orders, congruence moduli), so 64 bits is ample; overflow throws rather
// than wrapping.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw ValidationError("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    static std::int64_t checked(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN)
            throw std::overflow_error("Rational: 64-bit overflow");
        return static_cast<std::int64_t>(v);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num * b.den + (__int128)b.num * a.den;
        __int128 d = (__int128)a.den * b.den;
        return reduced(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num * b.den - (__int128)b.num * a.den;
        __int128 d = (__int128)a.den * b.den;
        return reduced(n, d);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return reduced((__int128)a.num * b.num, (__int128)a.den * b.den);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num * b.den < (__int128)b.num * a.den;
    }

    bool is_integer() const { return den == 1; }

    // Fractional part in [0,1).
    Rational mod1() const {
        std::int64_t r = num % den;
        if (r < 0) r += den;
        return Rational(r, den);
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    // Parses "p/q" or "p". Throws ParseError on malformed input.
    static Rational parse(const std::string& s) {
        const auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(std::stoll(s));
            std::int64_t p = std::stoll(s.substr(0, slash));
            std::int64_t q = std::stoll(s.substr(slash + 1));
            if (q == 0) throw ParseError("Rational: zero denominator in \"" + s + "\"");
            return Rational(p, q);
        } catch (const std::invalid_argument&) {
            throw ParseError("Rational: cannot parse \"" + s + "\"");
        } catch (const std::out_of_range&) {
            throw ParseError("Rational: out of range \"" + s + "\"");
        }
    }

  private:
    static Rational reduced(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        __int128 an = n < 0 ? -n : n;
        __int128 g = gcd128(an, d);
        if (g > 1) { n /= g; d /= g; }
        Rational r;
        r.num = checked(n);
        r.den = checked(d);
        return r;
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b) { __int128 t = a % b; a = b; b = t; }
        return a;
    }
};

// lcm with overflow guard; throws ModulusOverflowError past `budget`.
inline std::int64_t checked_lcm(std::int64_t a, std::int64_t b,
                                std::int64_t budget = INT64_MAX / 4) {
    const std::int64_t g = std::gcd(a, b);
    const __int128 l = (__int128)(a / g) * b;
    if (l > budget)
        throw ModulusOverflowError("lcm exceeds exact-arithmetic budget");
    return static_cast<std::int64_t>(l);
}

} // namespace abelint
