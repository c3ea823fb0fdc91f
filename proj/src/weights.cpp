#include "wmod/weights.hpp"

namespace wmod {

namespace {

// F(u) = (u - A h^2) - (k h / 2) sqrt(u (2 - u)) for u = 1 - x.
// F < 0 just above u = A h^2 and F > 0 once x is far enough inside; the
// unique sign change is the right boundary of S_{k,A,h}.
double boundary_gap(double u, double a, double kh_half) {
    return (u - a) - kh_half * std::sqrt(std::max(u * (2.0 - u), 0.0));
}

} // namespace

Interval sym_interval_S(int k, double A, double h) {
    if (k < 1) throw std::domain_error("sym_interval_S: k < 1");
    if (h < 0.0) throw std::domain_error("sym_interval_S: h < 0");
    if (h == 0.0) return Interval::whole();

    const double a = A * h * h;
    if (a > 1.0) throw std::domain_error("sym_interval_S: I_{A,h} empty");
    const double kh_half = 0.5 * k * h;

    // Bracket the root: expand upward from u = a until F > 0.
    double lo = a, hi = std::max(2.0 * a, 1e-300);
    while (hi < 2.0 && boundary_gap(hi, a, kh_half) <= 0.0) {
        lo = hi;
        hi = std::min(2.0, hi * 2.0);
    }
    if (boundary_gap(hi, a, kh_half) <= 0.0) throw std::domain_error("sym_interval_S: empty set");

    while (hi - lo > 1e-14) {
        const double mid = 0.5 * (lo + hi);
        if (boundary_gap(mid, a, kh_half) <= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double u = 0.5 * (lo + hi);
    if (u >= 1.0) throw std::domain_error("sym_interval_S: empty set");
    // The two boundary equations are mirror images, so S is symmetric.
    return Interval(-(1.0 - u), 1.0 - u);
}

} // namespace wmod
