#pragma once

#include <vector>

#include "wmod/chebpoly.hpp"
#include "wmod/quadrature.hpp"
#include "wmod/testfunctions.hpp"
#include "wmod/weights.hpp"

namespace wmod {

enum class Certificate { optimal, locally_optimal, upper_bound };

const char* to_string(Certificate c);

struct ApproxResult {
    ChebPoly poly;
    double error = 0.0;  // achieved ||w (f - P)||_p
    Certificate certified = Certificate::upper_bound;

    // solver diagnostics
    double parseval_residual = 0.0;     // best_l2 cross-check
    double equioscillation_dev = 0.0;   // best_linf certificate deviation
    int iterations = 0;
};

/// Orthogonal projection onto P_n in || w_{alpha,beta} (.) ||_2; the basis is
/// the Jacobi family orthogonal under w^2, with inner products computed by
/// quadrature and a Parseval cross-check of the error.
ApproxResult best_l2(const TestFunction& f, int n, const WeightSpec& weight,
                     const QuadratureConfig& cfg = {});

/// Discrete weighted minimax on a Chebyshev-distributed grid via exchange on
/// the weighted error; requires alpha, beta >= 0.
ApproxResult best_linf(const TestFunction& f, int n, const WeightSpec& weight, int grid_size = 2048,
                       const QuadratureConfig& cfg = {});

/// Best weighted Lp approximation for finite p: IRLS started from best_l2
/// (epsilon-smoothed at p = 1), gradient descent on the smoothed objective
/// below p = 1 (always an upper bound there).
ApproxResult best_lp(const TestFunction& f, int n, const WeightSpec& weight, double p,
                     int grid_size = 2048, const QuadratureConfig& cfg = {});

/// Dispatch on weight.p for E_n(f); p = 2 exact projection, p = infinity
/// exchange, otherwise best_lp.
ApproxResult best_approx(const TestFunction& f, int n, const WeightSpec& weight,
                         int grid_size = 2048, const QuadratureConfig& cfg = {});

/// E_n along an increasing degree list, with the monotonicity of reported
/// errors enforced (violations beyond tolerance signal solver failure).
std::vector<std::pair<int, double>> en_sequence(const TestFunction& f,
                                                const std::vector<int>& n_list,
                                                const WeightSpec& weight, int grid_size = 2048,
                                                const QuadratureConfig& cfg = {});

} // namespace wmod
