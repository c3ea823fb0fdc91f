#pragma once

#include <functional>

#include "wmod/interval.hpp"
#include "wmod/quadrature.hpp"
#include "wmod/weights.hpp"

namespace wmod {

enum class ModulusKind { omega, psi, mainpart, mainpart_unrestricted };

const char* to_string(ModulusKind kind);
ModulusKind modulus_kind_from_string(const std::string& s);

/// Which modulus to compute and with which parameters.  For kind omega the
/// tilted weight uses exponents (r/2+alpha, r/2+beta), which must be
/// admissible for p; the other kinds weight by w_{alpha,beta} phi^r.
struct ModulusRequest {
    ModulusKind kind = ModulusKind::omega;
    int k = 1;       // difference order, >= 1
    int r = 0;       // derivative order carried by the weight, >= 0
    double t = 0.1;  // step-size cap, > 0
    double A = 1.0;  // main-part constant (mainpart kinds only)
    WeightSpec weight;
    // Subdivide interior quadrature panels down to the stencil scale k*h.
    // Needed when f_r has interior kinks (|x|-type); smooth or polynomial
    // inputs leave it off.
    bool resolve_stencil = false;

    void validate() const;
    /// Exponents of the weight factor actually applied.
    double xi() const { return 0.5 * r + weight.alpha; }
    double zeta() const { return 0.5 * r + weight.beta; }
};

/// Discretization of sup_{0 <= h <= t}: geometric points from t/1024 to t/8
/// and uniform points from t/8 to t (t always included), followed by one
/// golden-section refinement around the best point.
struct HGrid {
    enum class Layout { uniform, geometric_plus_uniform };
    int count = 48;
    Layout layout = Layout::geometric_plus_uniform;

    std::vector<double> points(double t) const;
};

/// k-th symmetric difference with step h at x, zero whenever the stencil
/// [x - kh/2, x + kh/2] leaves S.
double symmetric_difference(const RealFn& f, int k, double h, double x, const Interval& S);

/// Symmetric difference with step h*phi(x) on [-1,1]; vanishes off D_{kh}.
double phi_step_difference(const RealFn& f, int k, double h, double x);

/// The modulus selected by req.kind for the function f_r (already the r-th
/// derivative of the underlying f).  The reported value is a certified lower
/// bound of the sup over h (grid maximum plus local refinement).
NormResult modulus(const RealFn& f_r, const ModulusRequest& req, const HGrid& grid = {},
                   const QuadratureConfig& cfg = {});

} // namespace wmod
