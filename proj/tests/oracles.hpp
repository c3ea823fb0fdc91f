// Independent reference implementations used only by tests.  These stay
// deliberately naive (monomial bases, dense scans, direct summation) so they
// share no code path with the library they check.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "wmod/chebpoly.hpp"

namespace oracle {

// Chebyshev -> monomial coefficients (adequate up to moderate degree).
inline std::vector<double> cheb_to_monomial(const std::vector<double>& c) {
    // T_0 = 1, T_1 = x, T_{n+1} = 2x T_n - T_{n-1}
    std::vector<std::vector<double>> T;
    T.push_back({1.0});
    if (c.size() > 1) T.push_back({0.0, 1.0});
    for (std::size_t n = 2; n < c.size(); ++n) {
        std::vector<double> next(n + 1, 0.0);
        for (std::size_t i = 0; i < T[n - 1].size(); ++i) next[i + 1] += 2.0 * T[n - 1][i];
        for (std::size_t i = 0; i < T[n - 2].size(); ++i) next[i] -= T[n - 2][i];
        T.push_back(std::move(next));
    }
    std::vector<double> mono(c.size(), 0.0);
    for (std::size_t n = 0; n < c.size(); ++n)
        for (std::size_t i = 0; i < T[n].size(); ++i) mono[i] += c[n] * T[n][i];
    return mono;
}

inline double horner(const std::vector<double>& mono, double x) {
    double acc = 0.0;
    for (std::size_t i = mono.size(); i-- > 0;) acc = acc * x + mono[i];
    return acc;
}

// Central finite difference of given order (step h).
inline double finite_difference(const std::function<double(double)>& f, double x, int order,
                                double h) {
    if (order == 0) return f(x);
    auto prev = [&](double y) { return finite_difference(f, y, order - 1, h); };
    return (prev(x + 0.5 * h) - prev(x - 0.5 * h)) / h;
}

// Dense-scan maximum of |f| over [lo, hi].
inline double scan_max(const std::function<double(double)>& f, double lo, double hi, int samples) {
    double best = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double x = lo + (hi - lo) * i / samples;
        best = std::max(best, std::abs(f(x)));
    }
    return best;
}

// k-th symmetric difference by explicit Pascal-triangle binomials, summed in
// the opposite order from the library.
inline double symmetric_difference_direct(const std::function<double(double)>& f, int k, double h,
                                          double x) {
    std::vector<double> binom(static_cast<std::size_t>(k) + 1, 1.0);
    for (int i = 1; i <= k; ++i)
        for (int j = i - 1; j >= 1; --j) binom[static_cast<std::size_t>(j)] += binom[static_cast<std::size_t>(j) - 1];
    double acc = 0.0;
    for (int i = k; i >= 0; --i) {
        const double term = binom[static_cast<std::size_t>(i)] * f(x - 0.5 * k * h + i * h);
        acc += ((k - i) % 2 == 0) ? term : -term;
    }
    return acc;
}

} // namespace oracle
