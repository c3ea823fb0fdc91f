#include "wmod/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wmod {

const char* to_string(ModulusKind kind) {
    switch (kind) {
        case ModulusKind::omega: return "omega";
        case ModulusKind::psi: return "psi";
        case ModulusKind::mainpart: return "mainpart";
        case ModulusKind::mainpart_unrestricted: return "mainpart-unrestricted";
    }
    return "?";
}

ModulusKind modulus_kind_from_string(const std::string& s) {
    if (s == "omega") return ModulusKind::omega;
    if (s == "psi") return ModulusKind::psi;
    if (s == "mainpart") return ModulusKind::mainpart;
    if (s == "mainpart-unrestricted" || s == "mainpart_unrestricted")
        return ModulusKind::mainpart_unrestricted;
    throw std::invalid_argument("unknown modulus kind: " + s);
}

void ModulusRequest::validate() const {
    if (k < 1) throw std::invalid_argument("ModulusRequest: k must be >= 1");
    if (r < 0) throw std::invalid_argument("ModulusRequest: r must be >= 0");
    if (!(t > 0.0)) throw std::invalid_argument("ModulusRequest: t must be > 0");
    if (!weight.admissible()) throw std::invalid_argument("ModulusRequest: weight not admissible");
    if (kind == ModulusKind::omega) {
        const WeightSpec eff{xi(), zeta(), weight.p};
        if (!eff.admissible())
            throw std::invalid_argument("ModulusRequest: tilted exponents (r/2+alpha, r/2+beta) not admissible");
    }
    if ((kind == ModulusKind::mainpart || kind == ModulusKind::mainpart_unrestricted) && !(A > 0.0))
        throw std::invalid_argument("ModulusRequest: mainpart kinds need A > 0");
}

std::vector<double> HGrid::points(double t) const {
    if (count < 8) throw std::invalid_argument("HGrid: count must be >= 8");
    std::vector<double> hs;
    hs.reserve(static_cast<std::size_t>(count));
    if (layout == Layout::uniform) {
        for (int i = 1; i <= count; ++i) hs.push_back(t * i / count);
        return hs;
    }
    const int geo = (2 * count) / 3;
    const int uni = count - geo;
    const double lo = t / 1024.0, mid = t / 8.0;
    for (int i = 0; i < geo; ++i)
        hs.push_back(lo * std::pow(mid / lo, static_cast<double>(i) / (geo - 1)));
    for (int i = 1; i <= uni; ++i) hs.push_back(mid + (t - mid) * i / uni);
    hs.back() = t;  // exact
    return hs;
}

double symmetric_difference(const RealFn& f, int k, double h, double x, const Interval& S) {
    if (k < 1) throw std::invalid_argument("symmetric_difference: k must be >= 1");
    const double half_span = 0.5 * k * h;
    if (!(S.contains(x - half_span) && S.contains(x + half_span))) return 0.0;
    double acc = 0.0;
    double binom = 1.0;  // C(k,0)
    for (int i = 0; i <= k; ++i) {
        const double term = binom * f(x - half_span + i * h);
        acc += ((k - i) % 2 == 0) ? term : -term;
        binom = binom * (k - i) / (i + 1);
    }
    return acc;
}

double phi_step_difference(const RealFn& f, int k, double h, double x) {
    if (std::abs(x) > 1.0) return 0.0;
    return symmetric_difference(f, k, h * eval_phi(x), x, Interval::whole());
}

namespace {

// One-h norm for the requested kind; the integration interval carries the
// difference's support edge, so the graded panels face the right way.
NormResult norm_at_h(const RealFn& f_r, const ModulusRequest& req, double h,
                     const QuadratureConfig& cfg_in, bool final_eval) {
    const int k = req.k;
    const double p = req.weight.p;
    QuadratureConfig cfg = cfg_in;
    if (req.resolve_stencil && h > 0.0) {
        // Interior panels no wider than the difference stencil.  Scans key
        // the width to t (the maximizer lives near there); only the final
        // evaluation resolves the actual h.
        cfg.max_panel_width =
            final_eval ? std::max(0.5 * k * h, 1e-4) : std::max(0.25 * k * req.t, 1e-3);
        cfg.max_refinements = std::min(cfg.max_refinements, 3);
    }

    switch (req.kind) {
        case ModulusKind::omega: {
            const double xi = req.xi(), zeta = req.zeta();
            const double kh = k * h;
            const Interval D = domain_D(kh);
            if (D.is_empty()) return {};
            auto w = [=](double x) { return eval_tilted_weight(x, kh, xi, zeta); };
            auto g = [&f_r, k, h](double x) { return phi_step_difference(f_r, k, h, x); };
            return weighted_lp_norm(g, w, p, D, cfg);
        }
        case ModulusKind::psi: {
            const Interval D = domain_D(k * h);
            if (D.is_empty()) return {};
            const double a = req.weight.alpha, b = req.weight.beta, r = req.r;
            auto w = [=](double x) {
                return eval_jacobi_weight(x, a, b) * detail::weight_factor(1.0 - x * x, 0.5 * r);
            };
            auto g = [&f_r, k, h](double x) { return phi_step_difference(f_r, k, h, x); };
            return weighted_lp_norm(g, w, p, D, cfg);
        }
        case ModulusKind::mainpart:
        case ModulusKind::mainpart_unrestricted: {
            if (req.A * h * h > 1.0) return {};
            const Interval I = interval_I(req.A, h);
            if (I.is_empty() || I.degenerate()) return {};
            const double a = req.weight.alpha, b = req.weight.beta, r = req.r;
            auto w = [=](double x) {
                return eval_jacobi_weight(x, a, b) * detail::weight_factor(1.0 - x * x, 0.5 * r);
            };
            const bool restricted = req.kind == ModulusKind::mainpart;
            const Interval S = restricted ? I : Interval::whole();
            auto g = [&f_r, k, h, S](double x) {
                return symmetric_difference(f_r, k, h * eval_phi(x), x, S);
            };
            return weighted_lp_norm(g, w, p, I, cfg);
        }
    }
    return {};
}

} // namespace

NormResult modulus(const RealFn& f_r, const ModulusRequest& req, const HGrid& grid,
                   const QuadratureConfig& cfg) {
    req.validate();
    const std::vector<double> hs = grid.points(req.t);

    // Scan cheaply, then re-evaluate the best candidates at full fidelity.
    const QuadratureConfig scan_cfg = cfg.scan_profile();
    std::size_t best = 0;
    double best_val = -1.0;
    std::vector<double> scan(hs.size());
    for (std::size_t i = 0; i < hs.size(); ++i) {
        scan[i] = norm_at_h(f_r, req, hs[i], scan_cfg, false).value;
        if (scan[i] > best_val) { best_val = scan[i]; best = i; }
    }

    // Golden-section refinement of the scan objective around the best point.
    double refined_h = hs[best];
    {
        double a = hs[best > 0 ? best - 1 : 0];
        double b = hs[std::min(best + 1, hs.size() - 1)];
        if (b > a) {
            const double inv_gold = (std::sqrt(5.0) - 1.0) / 2.0;
            double x1 = b - inv_gold * (b - a), x2 = a + inv_gold * (b - a);
            double f1 = norm_at_h(f_r, req, x1, scan_cfg, false).value;
            double f2 = norm_at_h(f_r, req, x2, scan_cfg, false).value;
            for (int it = 0; it < 24; ++it) {
                if (f1 < f2) {
                    a = x1; x1 = x2; f1 = f2;
                    x2 = a + inv_gold * (b - a);
                    f2 = norm_at_h(f_r, req, x2, scan_cfg, false).value;
                } else {
                    b = x2; x2 = x1; f2 = f1;
                    x1 = b - inv_gold * (b - a);
                    f1 = norm_at_h(f_r, req, x1, scan_cfg, false).value;
                }
            }
            const double fr = std::max(f1, f2);
            if (fr > best_val) refined_h = 0.5 * (a + b);
        }
    }

    NormResult final_grid = norm_at_h(f_r, req, hs[best], cfg, true);
    NormResult out = final_grid;
    if (refined_h != hs[best]) {
        NormResult final_ref = norm_at_h(f_r, req, refined_h, cfg, true);
        if (final_ref.value > out.value || final_ref.diverged) out = final_ref;
        out.diverged = final_grid.diverged || final_ref.diverged;
    }
    return out;
}

} // namespace wmod
