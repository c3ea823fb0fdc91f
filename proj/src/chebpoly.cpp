#include "wmod/chebpoly.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace wmod {

ChebPoly ChebPoly::basis(int n, double scale) {
    if (n < 0) throw std::invalid_argument("ChebPoly::basis: n < 0");
    std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
    c.back() = scale;
    return ChebPoly(std::move(c));
}

double ChebPoly::operator()(double x) const { return cheb_eval(*this, x); }

ChebPoly& ChebPoly::operator*=(double c) {
    for (double& a : coeffs) a *= c;
    trim();
    return *this;
}

ChebPoly& ChebPoly::operator+=(const ChebPoly& other) {
    if (other.coeffs.size() > coeffs.size()) coeffs.resize(other.coeffs.size(), 0.0);
    for (std::size_t i = 0; i < other.coeffs.size(); ++i) coeffs[i] += other.coeffs[i];
    trim();
    return *this;
}

ChebPoly operator-(ChebPoly a, const ChebPoly& b) {
    if (b.coeffs.size() > a.coeffs.size()) a.coeffs.resize(b.coeffs.size(), 0.0);
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) a.coeffs[i] -= b.coeffs[i];
    a.trim();
    return a;
}

double cheb_eval(const ChebPoly& poly, double x) {
    const auto& c = poly.coeffs;
    if (c.empty()) return 0.0;
    if (c.size() == 1) return c[0];
    double b1 = 0.0, b2 = 0.0;
    const double x2 = 2.0 * x;
    for (std::size_t j = c.size() - 1; j >= 1; --j) {
        const double b0 = c[j] + x2 * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return c[0] + x * b1 - b2;
}

ChebPoly cheb_derivative(const ChebPoly& poly, int order) {
    if (order < 0) throw std::invalid_argument("cheb_derivative: negative order");
    ChebPoly cur = poly;
    for (int pass = 0; pass < order && !cur.is_zero(); ++pass) {
        const int m = cur.degree();
        if (m == 0) { cur = ChebPoly::zero(); break; }
        std::vector<double> d(static_cast<std::size_t>(m), 0.0);
        // b_{j-1} = b_{j+1} + 2 j a_j, downward; then halve b_0.
        double bj1 = 0.0, bj2 = 0.0;  // b_{j+1}, b_{j+2}
        for (int j = m; j >= 1; --j) {
            const double bj = bj2 + 2.0 * j * cur.coeffs[static_cast<std::size_t>(j)];
            d[static_cast<std::size_t>(j) - 1] = bj;
            bj2 = bj1;
            bj1 = bj;
        }
        d[0] *= 0.5;
        cur = ChebPoly(std::move(d));
    }
    return order > 0 ? cur : poly;
}

namespace {

// Coefficients of x * f(x) in the Chebyshev basis:
// x T_0 = T_1, x T_j = (T_{j-1} + T_{j+1}) / 2.
std::vector<double> mul_x(const std::vector<double>& c) {
    if (c.empty()) return {};
    std::vector<double> r(c.size() + 1, 0.0);
    r[1] += c[0];
    for (std::size_t j = 1; j < c.size(); ++j) {
        r[j - 1] += 0.5 * c[j];
        r[j + 1] += 0.5 * c[j];
    }
    return r;
}

} // namespace

ChebPoly jacobi_poly(int n, double alpha, double beta) {
    if (n < 0) throw std::invalid_argument("jacobi_poly: n < 0");
    if (alpha <= -1.0 || beta <= -1.0) throw std::invalid_argument("jacobi_poly: exponents must exceed -1");

    std::vector<double> prev{1.0};  // P_0
    if (n == 0) return ChebPoly(std::move(prev));

    // P_1 = (alpha - beta)/2 + (alpha + beta + 2)/2 * x
    std::vector<double> cur{0.5 * (alpha - beta), 0.5 * (alpha + beta + 2.0)};
    for (int m = 1; m < n; ++m) {
        const double ab = alpha + beta;
        const double c1 = 2.0 * (m + 1) * (m + ab + 1) * (2 * m + ab);
        const double c2 = (2 * m + ab + 1) * (ab) * (alpha - beta);
        const double c3 = (2 * m + ab) * (2 * m + ab + 1) * (2 * m + ab + 2);
        const double c4 = 2.0 * (m + alpha) * (m + beta) * (2 * m + ab + 2);

        std::vector<double> next = mul_x(cur);
        for (double& v : next) v *= c3 / c1;
        if (next.size() < cur.size()) next.resize(cur.size(), 0.0);
        for (std::size_t j = 0; j < cur.size(); ++j) next[j] += (c2 / c1) * cur[j];
        for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= (c4 / c1) * prev[j];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return ChebPoly(std::move(cur));
}

ChebPoly random_poly(int n, std::uint64_t seed, double scale) {
    if (n < 1) throw std::invalid_argument("random_poly: n < 1");
    if (scale <= 0.0) throw std::invalid_argument("random_poly: scale <= 0");
    std::mt19937_64 rng(seed);
    std::vector<double> c(static_cast<std::size_t>(n));
    for (double& v : c) {
        // top 53 bits -> [0,1); avoids implementation-defined distributions
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        v = scale * (2.0 * u - 1.0);
    }
    return ChebPoly(std::move(c));
}

} // namespace wmod
