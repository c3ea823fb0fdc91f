#include "wmod/rational.hpp"

namespace wmod {

Rational rational_pow(Rational base, int e) {
    if (e < 0) throw std::domain_error("rational_pow: negative exponent");
    Rational r(1);
    while (e > 0) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return r;
}

Rational rational_binomial(int n, int r) {
    if (r < 0 || r > n) return Rational(0);
    Rational acc(1);
    for (int i = 1; i <= r; ++i) acc = acc * Rational(n - r + i) / Rational(i);
    return acc;
}

Rational rational_factorial(int n) {
    Rational acc(1);
    for (int i = 2; i <= n; ++i) acc = acc * Rational(i);
    return acc;
}

Rational difference_expansion_coefficient(int k, int j) {
    if (k < 1 || j < 0) throw std::domain_error("difference_expansion_coefficient: bad arguments");
    Rational s(0);
    for (int i = 0; i <= k; ++i) {
        const Rational offset(2 * i - k, 2);  // i - k/2
        Rational term = rational_binomial(k, i) * rational_pow(offset, j);
        if ((k - i) % 2 != 0) term = Rational(0) - term;
        s = s + term;
    }
    return s;
}

std::vector<Rational> difference_expansion_coefficients(int k, int j_max) {
    if (j_max < k) throw std::domain_error("difference_expansion_coefficients: j_max < k");
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(j_max - k + 1));
    for (int j = k; j <= j_max; ++j) out.push_back(difference_expansion_coefficient(k, j));
    return out;
}

} // namespace wmod
