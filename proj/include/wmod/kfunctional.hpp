#pragma once

#include "wmod/quadrature.hpp"
#include "wmod/testfunctions.hpp"
#include "wmod/weights.hpp"

namespace wmod {

struct KFunctionalResult {
    double value = 0.0;       // upper estimate of K^phi_{k,r}(f^{(r)}, t^k)
    bool used_f_itself = false;  // the g = f candidate won
    bool warning = false;     // descent stalled above the g = f bound
};

/// Upper estimate of the weighted K-functional
///   inf_g ||w phi^r (f^{(r)} - g^{(r)})||_p + t^k ||w phi^{k+r} g^{(k+r)}||_p
/// with g restricted to polynomials of degree <= N_max (plus the g = f and
/// g = const candidates).  p = 2 solves penalized least-squares on a
/// quadrature grid across a penalty ladder; other p refine that solution by
/// coordinate descent on the Chebyshev coefficients.
KFunctionalResult k_functional(const TestFunction& f, int k, int r, double t,
                               const WeightSpec& weight, int N_max = 24,
                               const QuadratureConfig& cfg = {});

} // namespace wmod
