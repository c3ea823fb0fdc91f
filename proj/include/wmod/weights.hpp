#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "wmod/interval.hpp"

namespace wmod {

constexpr double kInfP = std::numeric_limits<double>::infinity();

/// Jacobi exponent pair together with the Lp index of the norm it is used in.
struct WeightSpec {
    double alpha = 0.0;
    double beta = 0.0;
    double p = 2.0;  // may be kInfP

    bool p_is_inf() const { return std::isinf(p); }

    /// min{1, p}; the exponent making the quasi-norm subadditive.
    double q() const { return std::min(1.0, p); }

    /// alpha, beta in J_p: (-1/p, inf) for finite p, [0, inf) for p = inf.
    bool admissible() const {
        if (p <= 0.0) return false;
        if (p_is_inf()) return alpha >= 0.0 && beta >= 0.0;
        return alpha > -1.0 / p && beta > -1.0 / p;
    }

    WeightSpec with_exponent_shift(double s) const { return {alpha + s, beta + s, p}; }
};

namespace detail {

/// One factor base^expo with the endpoint convention: base 0 (or slightly
/// negative from rounding) gives 0 for positive exponents and 1 for zero
/// exponent; a nonpositive base with negative exponent is a domain error.
inline double weight_factor(double base, double expo) {
    if (expo == 0.0) return 1.0;
    if (base <= 0.0) {
        if (expo < 0.0) throw std::domain_error("weight factor: nonpositive base with negative exponent");
        return 0.0;
    }
    if (expo == 1.0) return base;
    if (expo == 0.5) return std::sqrt(base);
    if (expo == -0.5) return 1.0 / std::sqrt(base);
    if (expo == 2.0) return base * base;
    return std::pow(base, expo);
}

} // namespace detail

/// w_{alpha,beta}(x) = (1-x)^alpha (1+x)^beta.
inline double eval_jacobi_weight(double x, double alpha, double beta) {
    if (std::abs(x) > 1.0) throw std::domain_error("eval_jacobi_weight: |x| > 1");
    return detail::weight_factor(1.0 - x, alpha) * detail::weight_factor(1.0 + x, beta);
}

/// phi(x) = sqrt(1 - x^2).
inline double eval_phi(double x) {
    if (std::abs(x) > 1.0) throw std::domain_error("eval_phi: |x| > 1");
    return std::sqrt((1.0 - x) * (1.0 + x));
}

/// Tilted weight (1 - x - d*phi(x)/2)^xi (1 + x - d*phi(x)/2)^zeta.
/// Both bases are positive on the interior of D_delta and vanish at its
/// endpoints; callers must not evaluate outside D_delta with negative
/// exponents.
inline double eval_tilted_weight(double x, double delta, double xi, double zeta) {
    const double shift = 0.5 * delta * eval_phi(x);
    return detail::weight_factor(1.0 - x - shift, xi) * detail::weight_factor(1.0 + x - shift, zeta);
}

/// D_delta = [-1 + dbar, 1 - dbar], dbar = 2 delta^2 / (4 + delta^2).
/// Empty for delta > 2.
inline Interval domain_D(double delta) {
    if (delta < 0.0) throw std::domain_error("domain_D: delta < 0");
    const double dbar = 2.0 * delta * delta / (4.0 + delta * delta);
    if (dbar > 1.0) return Interval::empty();
    return Interval(-1.0 + dbar, 1.0 - dbar);
}

/// I_{A,h} = [-1 + A h^2, 1 - A h^2].
inline Interval interval_I(double A, double h) {
    const double s = A * h * h;
    if (s > 1.0) throw std::domain_error("interval_I: A h^2 > 1 (empty)");
    return Interval(-1.0 + s, 1.0 - s);
}

/// The interval of all x with x +- k h phi(x)/2 in I_{A,h}.  The two boundary
/// equations are solved by bisection to absolute tolerance 1e-14; the result
/// contains I_{A',h} with A' = 2 max{A, k^2}.
Interval sym_interval_S(int k, double A, double h);

} // namespace wmod
