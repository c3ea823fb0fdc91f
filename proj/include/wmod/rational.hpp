#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace wmod {

/// Exact rational on 64-bit words with 128-bit intermediates.  Throws on
/// overflow instead of wrapping; the difference-expansion coefficients for
/// k <= 5, j <= 20 stay far inside the representable range.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    static std::int64_t checked(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("Rational: overflow");
        return static_cast<std::int64_t>(v);
    }

    static Rational from128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n, b = d;
        while (b) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        Rational r;
        r.num = checked(n);
        r.den = checked(d);
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                       static_cast<__int128>(a.den) * b.den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from128(static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den,
                       static_cast<__int128>(a.den) * b.den);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw std::domain_error("Rational: division by zero");
        return from128(static_cast<__int128>(a.num) * b.den, static_cast<__int128>(a.den) * b.num);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

Rational rational_pow(Rational base, int e);
Rational rational_binomial(int n, int r);
Rational rational_factorial(int n);

/// S(k, j) = sum_{i=0}^{k} C(k,i) (-1)^{k-i} (i - k/2)^j, exactly.  These are
/// the Taylor coefficients of the k-th symmetric difference:
/// Delta_H^k(f, x) = sum_j f^{(j)}(x)/j! * S(k,j) * H^j.
Rational difference_expansion_coefficient(int k, int j);

/// S(k, j) for j = k..j_max.
std::vector<Rational> difference_expansion_coefficients(int k, int j_max);

} // namespace wmod
