#include "wmod/bestapprox.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wmod/dense.hpp"

namespace wmod {

const char* to_string(Certificate c) {
    switch (c) {
        case Certificate::optimal: return "optimal";
        case Certificate::locally_optimal: return "locally_optimal";
        case Certificate::upper_bound: return "upper_bound";
    }
    return "?";
}

namespace {

RealFn weight_fn(const WeightSpec& w) {
    const double a = w.alpha, b = w.beta;
    return [a, b](double x) { return eval_jacobi_weight(x, a, b); };
}

double residual_norm(const TestFunction& f, const ChebPoly& P, const WeightSpec& weight,
                     const QuadratureConfig& cfg) {
    auto g = [&](double x) { return f(x) - cheb_eval(P, x); };
    return weighted_lp_norm(g, weight_fn(weight), weight.p, Interval::whole(), cfg).value;
}

} // namespace

ApproxResult best_l2(const TestFunction& f, int n, const WeightSpec& weight,
                     const QuadratureConfig& cfg) {
    if (n < 1) throw std::invalid_argument("best_l2: n must be >= 1");
    WeightSpec w2 = weight;
    w2.p = 2.0;
    if (!w2.admissible()) throw std::invalid_argument("best_l2: weight not admissible");

    // Orthogonality must hold under the squared weight.
    const double a2 = 2.0 * weight.alpha, b2 = 2.0 * weight.beta;
    std::vector<ChebPoly> basis;
    basis.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) basis.push_back(jacobi_poly(j, a2, b2));

    auto wsq = [a2, b2](double x) { return eval_jacobi_weight(x, a2, b2); };
    const Interval I = Interval::whole();

    ApproxResult res;
    res.poly = ChebPoly::zero();
    double energy = 0.0;  // sum c_j^2 h_j
    for (int j = 0; j < n; ++j) {
        const ChebPoly& J = basis[static_cast<std::size_t>(j)];
        auto num_fn = [&](double x) { return wsq(x) * f(x) * cheb_eval(J, x); };
        auto den_fn = [&](double x) { const double v = cheb_eval(J, x); return wsq(x) * v * v; };
        const double num = integrate(num_fn, I, cfg).value;
        const double den = integrate(den_fn, I, cfg).value;
        const double cj = num / den;
        res.poly += cj * J;
        energy += cj * cj * den;
    }

    res.error = residual_norm(f, res.poly, w2, cfg);
    auto wf2 = [&](double x) { const double v = wsq(x); return v * f(x) * f(x); };
    const double total = integrate(wf2, I, cfg).value;
    const double parseval_err_sq = std::max(total - energy, 0.0);
    res.parseval_residual = std::abs(parseval_err_sq - res.error * res.error) / (1.0 + total);
    res.certified = Certificate::optimal;
    return res;
}

namespace {

// Chebyshev-distributed ascending grid on [-1,1].
std::vector<double> cheb_grid(int size) {
    std::vector<double> g(static_cast<std::size_t>(size) + 1);
    for (int i = 0; i <= size; ++i) g[static_cast<std::size_t>(i)] = -std::cos(M_PI * i / size);
    return g;
}

} // namespace

ApproxResult best_linf(const TestFunction& f, int n, const WeightSpec& weight, int grid_size,
                       const QuadratureConfig& cfg) {
    if (n < 1) throw std::invalid_argument("best_linf: n must be >= 1");
    if (weight.alpha < 0.0 || weight.beta < 0.0)
        throw std::invalid_argument("best_linf: requires alpha, beta >= 0");

    const std::vector<double> grid = cheb_grid(grid_size);
    std::vector<double> wv(grid.size()), fv(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        wv[i] = eval_jacobi_weight(grid[i], weight.alpha, weight.beta);
        fv[i] = f(grid[i]);
    }

    // Reference: n+1 interior-leaning Chebyshev extremes (weighted error
    // vanishes wherever w does, so keep references off zero-weight points).
    std::vector<std::size_t> ref(static_cast<std::size_t>(n) + 1);
    {
        std::vector<std::size_t> usable;
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (wv[i] > 0.0) usable.push_back(i);
        if (usable.size() < ref.size()) throw std::runtime_error("best_linf: weight vanishes on grid");
        for (std::size_t j = 0; j < ref.size(); ++j) {
            const double s = static_cast<double>(j) / n;
            ref[j] = usable[static_cast<std::size_t>(std::round(s * (usable.size() - 1)))];
        }
    }

    ChebPoly P;
    double lambda = 0.0;
    ApproxResult res;
    const int max_iter = 200;
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        // Solve sum_j c_j T_j(x_i) + (-1)^i lambda / w(x_i) = f(x_i).
        const std::size_t m = ref.size();
        DenseMatrix A(m, m);
        std::vector<double> rhs(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double x = grid[ref[i]];
            // Chebyshev recurrence along the row
            double t0 = 1.0, t1 = x;
            for (std::size_t j = 0; j + 1 < m; ++j) {
                if (j == 0) A(i, j) = 1.0;
                else if (j == 1) A(i, j) = x;
                else {
                    const double t2 = 2.0 * x * t1 - t0;
                    t0 = t1;
                    t1 = t2;
                    A(i, j) = t2;
                }
            }
            A(i, m - 1) = ((i % 2 == 0) ? 1.0 : -1.0) / wv[ref[i]];
            rhs[i] = fv[ref[i]];
        }
        std::vector<double> sol = solve_linear(std::move(A), std::move(rhs));
        lambda = sol.back();
        sol.pop_back();
        P = ChebPoly(std::move(sol));

        // Weighted error on the grid and its local extrema.
        std::vector<double> err(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) err[i] = wv[i] * (fv[i] - cheb_eval(P, grid[i]));
        std::vector<std::size_t> extrema;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double v = std::abs(err[i]);
            const bool up = i == 0 || v >= std::abs(err[i - 1]);
            const bool down = i + 1 == grid.size() || v >= std::abs(err[i + 1]);
            if (up && down && v > 0.0) extrema.push_back(i);
        }
        if (extrema.size() < ref.size()) break;

        // Alternating selection keeping the largest amplitude per sign run.
        std::vector<std::size_t> alt;
        for (std::size_t idx : extrema) {
            if (!alt.empty() && (err[alt.back()] > 0) == (err[idx] > 0)) {
                if (std::abs(err[idx]) > std::abs(err[alt.back()])) alt.back() = idx;
            } else {
                alt.push_back(idx);
            }
        }
        if (alt.size() < ref.size()) break;
        // Keep the n+1 consecutive alternations containing the largest error.
        std::size_t argmax = 0;
        for (std::size_t j = 1; j < alt.size(); ++j)
            if (std::abs(err[alt[j]]) > std::abs(err[alt[argmax]])) argmax = j;
        std::size_t first = alt.size() - std::min(alt.size(), ref.size());
        if (argmax < first) first = argmax;
        std::vector<std::size_t> new_ref(alt.begin() + static_cast<std::ptrdiff_t>(first),
                                         alt.begin() + static_cast<std::ptrdiff_t>(first + ref.size()));

        double emax = 0.0, emin = 1e300;
        for (std::size_t idx : new_ref) {
            emax = std::max(emax, std::abs(err[idx]));
            emin = std::min(emin, std::abs(err[idx]));
        }
        ref = std::move(new_ref);
        if (emax - std::abs(lambda) <= 1e-13 * (1.0 + emax)) {
            res.equioscillation_dev = emax > 0.0 ? (emax - emin) / emax : 0.0;
            break;
        }
        if (iter + 1 == max_iter) throw std::runtime_error("best_linf: exchange stalled after 200 iterations");
    }

    res.poly = P;
    res.iterations = iter + 1;
    double emax = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        emax = std::max(emax, std::abs(wv[i] * (fv[i] - cheb_eval(P, grid[i]))));
    // Polish off-grid with the continuous sup norm.
    auto g = [&](double x) { return f(x) - cheb_eval(P, x); };
    res.error = std::max(emax, sup_norm(g, weight_fn(weight), Interval::whole(), cfg).value);
    res.certified = res.equioscillation_dev <= 1e-6 ? Certificate::optimal : Certificate::locally_optimal;
    return res;
}

namespace {

struct GridLS {
    std::vector<double> x, qw, wv, fv;  // nodes, quad weights, w(x), f(x)
    DenseMatrix T;                      // basis values, (points x n)

    GridLS(const TestFunction& f, int n, const WeightSpec& weight, int grid_size,
           const QuadratureConfig& cfg) {
        graded_grid(Interval::whole(), grid_size, cfg.nodes_per_panel, cfg.grading_ratio, x, qw);
        const std::size_t m = x.size();
        wv.resize(m);
        fv.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            wv[i] = eval_jacobi_weight(x[i], weight.alpha, weight.beta);
            fv[i] = f(x[i]);
        }
        T = DenseMatrix(m, static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < m; ++i) {
            double t0 = 1.0, t1 = x[i];
            for (int j = 0; j < n; ++j) {
                if (j == 0) T(i, 0) = 1.0;
                else if (j == 1) T(i, 1) = x[i];
                else {
                    const double t2 = 2.0 * x[i] * t1 - t0;
                    t0 = t1;
                    t1 = t2;
                    T(i, static_cast<std::size_t>(j)) = t2;
                }
            }
        }
    }

    std::vector<double> residuals(const std::vector<double>& c) const {
        std::vector<double> e(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < c.size(); ++j) s += c[j] * T(i, j);
            e[i] = fv[i] - s;
        }
        return e;
    }

    // (sum qw * (w|e|)^p)^{1/p}
    double grid_error(const std::vector<double>& e, double p) const {
        double s = 0.0;
        for (std::size_t i = 0; i < e.size(); ++i) s += qw[i] * std::pow(std::abs(wv[i] * e[i]), p);
        return std::pow(s, 1.0 / p);
    }

    // Weighted LS with per-point multiplier rho (on top of qw * w^2).
    std::vector<double> weighted_fit(const std::vector<double>& rho) const {
        const std::size_t m = x.size(), n = T.cols;
        DenseMatrix A(m, n);
        std::vector<double> b(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double s = std::sqrt(std::max(qw[i] * rho[i], 0.0)) * wv[i];
            for (std::size_t j = 0; j < n; ++j) A(i, j) = s * T(i, j);
            b[i] = s * fv[i];
        }
        return lstsq_qr(std::move(A), std::move(b));
    }
};

} // namespace

ApproxResult best_lp(const TestFunction& f, int n, const WeightSpec& weight, double p,
                     int grid_size, const QuadratureConfig& cfg) {
    if (!(p > 0.0) || std::isinf(p)) throw std::invalid_argument("best_lp: need finite p > 0");
    WeightSpec w = weight;
    w.p = p;
    if (!w.admissible()) throw std::invalid_argument("best_lp: weight not admissible");

    GridLS ls(f, n, weight, grid_size, cfg);

    // Start from the (grid) L2 solution.
    std::vector<double> rho(ls.x.size(), 1.0);
    std::vector<double> c = ls.weighted_fit(rho);
    ApproxResult res;
    res.certified = Certificate::locally_optimal;

    if (p >= 1.0) {
        // IRLS: rho = |e|^{p-2}, damped above p = 2; at p = 1 anneal the
        // smoothing floor from 1e-3 down to 1e-10.
        double eps = p == 1.0 ? 1e-3 : 0.0;
        double prev_err = 1e300;
        const double theta = p > 2.0 ? 2.0 / p : 1.0;
        for (int it = 0; it < 120; ++it) {
            std::vector<double> e = ls.residuals(c);
            const double err = ls.grid_error(e, p);
            if (std::abs(prev_err - err) < 1e-10 * (1.0 + err) && eps <= 1e-10) {
                res.iterations = it;
                break;
            }
            prev_err = err;
            double scale = 0.0;
            for (std::size_t i = 0; i < e.size(); ++i) scale = std::max(scale, std::abs(e[i]));
            const double floor_e = std::max(1e-14 * (1.0 + scale), eps * scale);
            for (std::size_t i = 0; i < e.size(); ++i) {
                const double a = std::max(std::abs(e[i]), floor_e);
                rho[i] = std::pow(a, p - 2.0);
            }
            std::vector<double> cnew = ls.weighted_fit(rho);
            if (theta < 1.0)
                for (std::size_t j = 0; j < c.size(); ++j) cnew[j] = theta * cnew[j] + (1.0 - theta) * c[j];
            c = std::move(cnew);
            if (eps > 0.0) eps = std::max(eps * 0.5, 1e-10);
        }
    } else {
        // 0 < p < 1: smoothed objective descent from the p = 1 solution.
        ApproxResult l1 = best_lp(f, n, weight, 1.0, grid_size, cfg);
        c.assign(static_cast<std::size_t>(n), 0.0);
        for (std::size_t j = 0; j < l1.poly.coeffs.size() && j < c.size(); ++j) c[j] = l1.poly.coeffs[j];
        res.certified = Certificate::upper_bound;

        double scale = 0.0;
        for (double e : ls.residuals(c)) scale = std::max(scale, std::abs(e));
        double eps = std::max(1e-3 * (scale + 1e-30), 1e-300);
        auto smooth_obj = [&](const std::vector<double>& cc) {
            double s = 0.0;
            std::vector<double> e = ls.residuals(cc);
            for (std::size_t i = 0; i < e.size(); ++i) {
                const double we = ls.wv[i] * e[i];
                s += ls.qw[i] * std::pow(we * we + eps * eps, 0.5 * p);
            }
            return s;
        };
        double step = 0.1 * (scale + 1e-30);
        double cur = smooth_obj(c);
        for (int it = 0; it < 200; ++it) {
            // numerical gradient in coefficient space is affordable here
            std::vector<double> gradient(c.size());
            std::vector<double> e = ls.residuals(c);
            for (std::size_t i = 0; i < e.size(); ++i) {
                const double we = ls.wv[i] * e[i];
                const double common =
                    ls.qw[i] * p * we * std::pow(we * we + eps * eps, 0.5 * p - 1.0) * ls.wv[i];
                for (std::size_t j = 0; j < c.size(); ++j) gradient[j] -= common * ls.T(i, j);
            }
            double gnorm = 0.0;
            for (double gv : gradient) gnorm = std::max(gnorm, std::abs(gv));
            if (gnorm == 0.0) break;
            std::vector<double> trial(c.size());
            bool improved = false;
            for (int bt = 0; bt < 20; ++bt) {
                for (std::size_t j = 0; j < c.size(); ++j) trial[j] = c[j] - step * gradient[j] / gnorm;
                const double v = smooth_obj(trial);
                if (v < cur) {
                    c = trial;
                    cur = v;
                    improved = true;
                    step *= 1.5;
                    break;
                }
                step *= 0.5;
            }
            if (!improved && eps <= 1e-10 * (scale + 1e-30)) break;
            if (!improved || it % 10 == 9) {
                eps = std::max(eps * 0.25, 1e-10 * (scale + 1e-30));
                cur = smooth_obj(c);
            }
            res.iterations = it + 1;
        }
    }

    res.poly = ChebPoly(std::move(c));
    res.error = residual_norm(f, res.poly, w, cfg);
    return res;
}

ApproxResult best_approx(const TestFunction& f, int n, const WeightSpec& weight, int grid_size,
                         const QuadratureConfig& cfg) {
    if (weight.p_is_inf()) return best_linf(f, n, weight, grid_size, cfg);
    if (weight.p == 2.0) return best_l2(f, n, weight, cfg);
    return best_lp(f, n, weight, weight.p, grid_size, cfg);
}

std::vector<std::pair<int, double>> en_sequence(const TestFunction& f, const std::vector<int>& n_list,
                                                const WeightSpec& weight, int grid_size,
                                                const QuadratureConfig& cfg) {
    std::vector<std::pair<int, double>> out;
    out.reserve(n_list.size());
    double prev = 1e300;
    int prev_n = 0;
    for (int n : n_list) {
        if (n <= prev_n) throw std::invalid_argument("en_sequence: n_list must be increasing");
        const ApproxResult r = best_approx(f, n, weight, grid_size, cfg);
        const double tol = std::max(1e-10, 1e-6 * prev);
        if (r.error > prev + tol)
            throw std::runtime_error("en_sequence: monotonicity violated at n = " + std::to_string(n));
        out.emplace_back(n, r.error);
        prev = r.error;
        prev_n = n;
    }
    return out;
}

} // namespace wmod
