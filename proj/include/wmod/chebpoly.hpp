#pragma once

#include <cstdint>
#include <vector>

namespace wmod {

/// Polynomial stored as Chebyshev-T coefficients, coeffs[j] multiplying T_j.
/// The zero polynomial has an empty coefficient vector; otherwise the
/// trailing coefficient is nonzero.
struct ChebPoly {
    std::vector<double> coeffs;

    ChebPoly() = default;
    explicit ChebPoly(std::vector<double> c) : coeffs(std::move(c)) { trim(); }

    static ChebPoly zero() { return ChebPoly{}; }
    static ChebPoly constant(double c) { return ChebPoly(std::vector<double>{c}); }
    /// T_n itself.
    static ChebPoly basis(int n, double scale = 1.0);

    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    /// Membership in the paper-style class P_n (degree <= n-1).
    bool in_Pn(int n) const { return static_cast<int>(coeffs.size()) <= n; }

    void trim() {
        while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
    }

    double operator()(double x) const;

    ChebPoly& operator*=(double c);
    ChebPoly& operator+=(const ChebPoly& other);
    friend ChebPoly operator*(double c, ChebPoly p) { p *= c; return p; }
    friend ChebPoly operator+(ChebPoly a, const ChebPoly& b) { a += b; return a; }
    friend ChebPoly operator-(ChebPoly a, const ChebPoly& b);
};

/// Clenshaw evaluation.
double cheb_eval(const ChebPoly& poly, double x);

/// Exact derivative of the given order via the coefficient recurrence.
ChebPoly cheb_derivative(const ChebPoly& poly, int order = 1);

/// Degree-n Jacobi polynomial P_n^{(alpha,beta)} expressed in the Chebyshev
/// basis; built by running the classical three-term recurrence directly on
/// Chebyshev coefficient vectors.
ChebPoly jacobi_poly(int n, double alpha, double beta);

/// Degree n-1 polynomial with coefficients drawn independently from the
/// uniform distribution on [-scale, scale].  Deterministic in (n, seed,
/// scale) across platforms (own bit mapping, no library distribution).
ChebPoly random_poly(int n, std::uint64_t seed, double scale = 1.0);

} // namespace wmod
