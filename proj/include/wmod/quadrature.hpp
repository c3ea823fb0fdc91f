#pragma once

#include <functional>
#include <vector>

#include "wmod/interval.hpp"

namespace wmod {

using RealFn = std::function<double(double)>;

/// Graded composite Gauss-Legendre configuration.  Panel endpoints accumulate
/// geometrically toward both ends of the integration interval, where the
/// integrands may be singular or vanishing; refinement doubles the panel
/// count per side.
struct QuadratureConfig {
    int panels_per_side = 12;
    int nodes_per_panel = 20;
    double grading_ratio = 0.25;      // in (0,1)
    double target_rel_err = 1e-11;    // >= 1e-13
    int max_refinements = 6;          // levels beyond the base grid
    int sup_samples = 4096;           // base sampling density for sup norms
    double divergence_growth = 0.10;  // per-level growth counted toward divergence
    int divergence_count = 3;         // consecutive growths that declare divergence
    double max_panel_width = 0.0;     // 0 = no interior subdivision; halved per level

    void validate() const;

    /// Cheap settings for inner scans whose result only steers a maximizer.
    QuadratureConfig scan_profile() const {
        QuadratureConfig c = *this;
        c.max_refinements = 0;
        c.sup_samples = 512;
        return c;
    }
};

struct NormResult {
    double value = 0.0;
    double rel_err_estimate = 0.0;
    bool diverged = false;
    int levels_used = 0;
};

/// Gauss-Legendre nodes and weights on [-1, 1] (cached per order).
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n);

/// || w g ||_{Lp(I)} for 0 < p <= infinity.  Finite p integrates |w g|^p on
/// graded panels with doubling refinement until target_rel_err, the level
/// cap, or divergence detection; p = infinity delegates to sup_norm.
NormResult weighted_lp_norm(const RealFn& g, const RealFn& weight, double p, const Interval& I,
                            const QuadratureConfig& cfg);

/// ess-sup estimate of |w g| on I: dense Chebyshev-distributed sampling plus
/// golden-section refinement around the best local maxima.
NormResult sup_norm(const RealFn& g, const RealFn& weight, const Interval& I,
                    const QuadratureConfig& cfg);

/// Signed integral of f over I with the same graded/refined scheme.
NormResult integrate(const RealFn& f, const Interval& I, const QuadratureConfig& cfg);

/// ||w(f+g)||_p^q <= ||wf||_p^q + ||wg||_p^q within 1e-9 slack, q = min{1,p}.
bool quasinorm_triangle_check(const RealFn& f, const RealFn& g, const RealFn& weight, double p,
                              const Interval& I, const QuadratureConfig& cfg = {});

/// Fixed sample grid (nodes and weights of the base graded panels on I),
/// used by the discrete best-approximation solvers.
void graded_grid(const Interval& I, int target_size, int nodes_per_panel, double grading_ratio,
                 std::vector<double>& nodes, std::vector<double>& weights);

} // namespace wmod
