#include "wmod/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "wmod/dense.hpp"
#include "wmod/kfunctional.hpp"
#include "wmod/rational.hpp"

namespace wmod {

namespace {

// ---------------------------------------------------------------- utilities

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t poly_seed(std::uint64_t base, int seed_idx, int n) {
    return mix64(base ^ mix64(static_cast<std::uint64_t>(seed_idx) + 1) ^
                 mix64(static_cast<std::uint64_t>(n) * 0x100000001b3ULL));
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mtx;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mtx);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const int nthreads = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

RealFn poly_fn(const ChebPoly& P) {
    return [P](double x) { return cheb_eval(P, x); };
}

RealFn deriv_fn(const TestFunction& f, int r) {
    if (r == 0) return [f](double x) { return f(x); };
    return [f, r](double x) { return f.derivative(x, r); };
}

bool has_interior_kink(const std::string& func_id) {
    return func_id.rfind("abs", 0) == 0;  // abs, abs_power:*
}

TestFunction derivative_function(const TestFunction& f, int r) {
    if (r == 0) return f;
    TestFunction g;
    g.id = f.id + "'" + std::to_string(r);
    g.max_derivative_order = f.max_derivative_order - r;
    g.endpoint_exponents = {f.endpoint_exponents.first - r, f.endpoint_exponents.second - r};
    g.eval_deriv = [f, r](double x, int order) { return f.derivative(x, order + r); };
    return g;
}

double coeff_norm(const ChebPoly& P) {
    double s = 0.0;
    for (double c : P.coeffs) s += c * c;
    return std::sqrt(s);
}

// || w_{alpha,beta} phi^{s} g ||_p over [-1,1]
double weighted_phis_norm(const RealFn& g, double alpha, double beta, int s, double p,
                          const QuadratureConfig& cfg) {
    auto w = [alpha, beta, s](double x) {
        return eval_jacobi_weight(x, alpha, beta) * detail::weight_factor(1.0 - x * x, 0.5 * s);
    };
    return weighted_lp_norm(g, w, p, Interval::whole(), cfg).value;
}

double safe_ratio(double lhs, double rhs) {
    if (rhs == 0.0) return lhs == 0.0 ? 1.0 : kInfP;
    return lhs / rhs;
}

// Group key -> ratios; emits one stability row per group.
struct StabilityTracker {
    std::map<std::string, std::vector<double>> groups;

    void add(const std::string& key, double ratio) {
        if (std::isfinite(ratio) && ratio > 0.0) groups[key].push_back(ratio);
    }

    void emit(std::vector<ReportRow>& rows, double factor, const std::string& prefix) const {
        for (const auto& [key, ratios] : groups) {
            if (ratios.size() < 2) continue;
            const double mx = *std::max_element(ratios.begin(), ratios.end());
            const double mn = *std::min_element(ratios.begin(), ratios.end());
            ReportRow row;
            row.quantity = prefix + key;
            row.lhs = mx;
            row.rhs = mn;
            row.ratio = mn > 0.0 ? mx / mn : kInfP;
            row.in_band = row.ratio <= factor;
            row.note = "max/min<=" + fmt(factor);
            rows.push_back(std::move(row));
        }
    }
};

// Least-squares slope of log(y) against log(x); returns {slope, intercept, r2}.
struct LogFit {
    double slope = 0.0, intercept = 0.0, r2 = 0.0;
};
LogFit log_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] > 0.0 && ys[i] > 0.0) {
            lx.push_back(std::log(xs[i]));
            ly.push_back(std::log(ys[i]));
        }
    }
    LogFit fit;
    const std::size_t n = lx.size();
    if (n < 2) return fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
        syy += ly[i] * ly[i];
    }
    const double den = n * sxx - sx * sx;
    if (den == 0.0) return fit;
    fit.slope = (n * sxy - sx * sy) / den;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0.0, ss_tot = 0.0;
    const double ybar = sy / n;
    for (std::size_t i = 0; i < n; ++i) {
        const double pred = fit.intercept + fit.slope * lx[i];
        ss_res += (ly[i] - pred) * (ly[i] - pred);
        ss_tot += (ly[i] - ybar) * (ly[i] - ybar);
    }
    fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

std::vector<double> log_space(double lo, double hi, int count) {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        v[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
    return v;
}

ModulusRequest make_request(ModulusKind kind, int k, int r, double t, double A, double alpha,
                            double beta, double p, bool resolve = false) {
    ModulusRequest req;
    req.kind = kind;
    req.k = k;
    req.r = r;
    req.t = t;
    req.A = A;
    req.weight = WeightSpec{alpha, beta, p};
    req.resolve_stencil = resolve;
    return req;
}

} // namespace

// ----------------------------------------------- main equivalence (thm2.1)

MainEquivParams MainEquivParams::quick() {
    MainEquivParams p;
    p.p_list = {0.5, 2.0, kInfP};
    p.weights_finite = {{0.0, 0.0}, {-0.25, 0.3}};
    p.weights_inf = {{0.0, 0.0}};
    p.k_list = {1, 2};
    p.r_list = {0, 1};
    p.n_list = {4, 8, 16};
    p.num_seeds = 2;
    return p;
}

VerificationReport check_main_equivalence(const MainEquivParams& params, const HarnessConfig& cfg) {
    struct Combo {
        double p, alpha, beta;
        int k, r, n, seed_idx;
    };
    std::vector<Combo> combos;
    for (double p : params.p_list) {
        const auto& weights = std::isinf(p) ? params.weights_inf : params.weights_finite;
        for (const WeightPair& w : weights)
            for (int k : params.k_list)
                for (int r : params.r_list)
                    for (int n : params.n_list)
                        for (int s = 0; s < params.num_seeds; ++s)
                            combos.push_back({p, w.alpha, w.beta, k, r, n, s});
    }

    struct ComboRows {
        std::vector<ReportRow> rows;
    };
    std::vector<ComboRows> per_combo(combos.size());

    parallel_for(combos.size(), cfg.threads, [&](std::size_t ci) {
        const Combo& c = combos[ci];
        const double t = cfg.c_t / c.n;
        const ChebPoly P = random_poly(c.n, poly_seed(cfg.seed, c.seed_idx, c.n));
        const std::uint64_t sid = poly_seed(cfg.seed, c.seed_idx, c.n);

        auto base_row = [&](const std::string& qty) {
            ReportRow row;
            row.quantity = qty;
            row.alpha = c.alpha;
            row.beta = c.beta;
            row.p = c.p;
            row.k = c.k;
            row.r = c.r;
            row.n = c.n;
            row.t = t;
            row.A = params.A;
            row.func = "randpoly";
            row.seed = sid;
            return row;
        };

        const ChebPoly Pr = cheb_derivative(P, c.r);
        const RealFn fr = poly_fn(Pr);
        const double thresh = 1e-10 * (1.0 + coeff_norm(P));

        if (P.degree() < c.k + c.r) {
            // annihilation: every quantity must vanish
            for (ModulusKind kind :
                 {ModulusKind::omega, ModulusKind::psi, ModulusKind::mainpart}) {
                const double v =
                    modulus(fr, make_request(kind, c.k, c.r, t, params.A, c.alpha, c.beta, c.p),
                            cfg.hgrid, cfg.quad)
                        .value;
                ReportRow row = base_row(std::string("annihilation:") + to_string(kind));
                row.lhs = v;
                row.rhs = thresh;
                row.ratio = safe_ratio(v, thresh);
                row.in_band = v <= thresh;
                per_combo[ci].rows.push_back(std::move(row));
            }
            return;
        }

        const double om =
            modulus(fr, make_request(ModulusKind::omega, c.k, c.r, t, params.A, c.alpha, c.beta, c.p),
                    cfg.hgrid, cfg.quad)
                .value;
        const double ps =
            modulus(fr, make_request(ModulusKind::psi, c.k, c.r, t, params.A, c.alpha, c.beta, c.p),
                    cfg.hgrid, cfg.quad)
                .value;
        const double mp =
            modulus(fr,
                    make_request(ModulusKind::mainpart, c.k, c.r, t, params.A, c.alpha, c.beta, c.p),
                    cfg.hgrid, cfg.quad)
                .value;
        const ChebPoly Pkr = cheb_derivative(P, c.k + c.r);
        const double ref = std::pow(t, c.k) *
                           weighted_phis_norm(poly_fn(Pkr), c.alpha, c.beta, c.k + c.r, c.p, cfg.quad);

        const std::pair<std::string, std::pair<double, double>> pairs[] = {
            {"omega/ref", {om, ref}},      {"psi/ref", {ps, ref}},  {"mainpart/ref", {mp, ref}},
            {"omega/psi", {om, ps}},       {"omega/mainpart", {om, mp}},
            {"psi/mainpart", {ps, mp}},
        };
        for (const auto& [qty, lr] : pairs) {
            ReportRow row = base_row(qty);
            row.lhs = lr.first;
            row.rhs = lr.second;
            row.ratio = safe_ratio(lr.first, lr.second);
            row.in_band = cfg.band.contains(row.ratio);
            per_combo[ci].rows.push_back(std::move(row));
        }
    });

    VerificationReport rep;
    rep.experiment_id = "thm2.1";
    rep.band = cfg.band;
    rep.seed = cfg.seed;
    StabilityTracker stability;
    for (std::size_t ci = 0; ci < combos.size(); ++ci) {
        const Combo& c = combos[ci];
        for (ReportRow& row : per_combo[ci].rows) {
            if (row.quantity.rfind("annihilation", 0) != 0) {
                std::ostringstream key;
                key << row.quantity << "|p=" << fmt(c.p) << "|w=(" << fmt(c.alpha) << ","
                    << fmt(c.beta) << ")|k=" << c.k << "|r=" << c.r << "|s=" << c.seed_idx;
                stability.add(key.str(), row.ratio);
            }
            rep.rows.push_back(std::move(row));
        }
    }
    stability.emit(rep.rows, cfg.stability_factor, "stability:");
    rep.tolerances = {{"band_lo", cfg.band.lo},
                      {"band_hi", cfg.band.hi},
                      {"stability_factor", cfg.stability_factor},
                      {"c_t", cfg.c_t}};
    rep.grids = "hgrid=" + std::to_string(cfg.hgrid.count) +
                ";quad=" + std::to_string(cfg.quad.panels_per_side) + "x" +
                std::to_string(cfg.quad.nodes_per_panel);
    rep.finalize();
    return rep;
}

// -------------------------------------- split chains (cor2.2) and (cor2.3)

namespace {

VerificationReport chain_report(const std::string& id, const std::vector<double>& lambda_list,
                                bool t_from_lambda, const std::vector<int>& m_list,
                                const std::vector<int>& n_list, const std::vector<double>& p_list,
                                const std::vector<WeightPair>& weights, int num_seeds,
                                const HarnessConfig& cfg) {
    VerificationReport rep;
    rep.experiment_id = id;
    rep.band = cfg.band;
    rep.seed = cfg.seed;
    StabilityTracker stability;

    struct Job {
        double lambda, p, alpha, beta;
        int m, n, seed_idx;
    };
    std::vector<Job> jobs;
    for (double lam : lambda_list)
        for (int m : m_list)
            for (int n : n_list)
                for (double p : p_list)
                    for (const WeightPair& w : weights)
                        for (int s = 0; s < num_seeds; ++s) {
                            if (std::isinf(p) && (w.alpha < 0.0 || w.beta < 0.0)) continue;
                            jobs.push_back({lam, p, w.alpha, w.beta, m, n, s});
                        }

    std::vector<std::vector<ReportRow>> per_job(jobs.size());
    parallel_for(jobs.size(), cfg.threads, [&](std::size_t ji) {
        const Job& j = jobs[ji];
        const double t = t_from_lambda ? j.lambda / j.n : cfg.c_t / j.n;
        const ChebPoly P = random_poly(j.n, poly_seed(cfg.seed, j.seed_idx, j.n));
        const double widen =
            t_from_lambda ? std::pow(std::max(1.0, j.lambda), j.m + 1) * 2.0 : 1.0;
        const Band row_band{cfg.band.lo / widen, cfg.band.hi * widen};

        auto make = [&](const std::string& qty, int k, int r) {
            ReportRow row;
            row.quantity = qty;
            row.alpha = j.alpha;
            row.beta = j.beta;
            row.p = j.p;
            row.k = k;
            row.r = r;
            row.n = j.n;
            row.t = t;
            row.A = j.lambda;  // records Lambda for cor2.3, unused otherwise
            row.func = "randpoly";
            row.seed = poly_seed(cfg.seed, j.seed_idx, j.n);
            return row;
        };

        if (P.degree() < j.m) {
            const ChebPoly Pr = cheb_derivative(P, j.m - 1);
            const double v = modulus(poly_fn(Pr),
                                     make_request(ModulusKind::omega, 1, j.m - 1, t, 1.0, j.alpha,
                                                  j.beta, j.p),
                                     cfg.hgrid, cfg.quad)
                                 .value;
            ReportRow row = make("annihilation:omega", 1, j.m - 1);
            row.lhs = v;
            row.rhs = 1e-10 * (1.0 + coeff_norm(P));
            row.ratio = safe_ratio(row.lhs, row.rhs);
            row.in_band = row.lhs <= row.rhs;
            per_job[ji].push_back(std::move(row));
            return;
        }

        const ChebPoly Pm = cheb_derivative(P, j.m);
        const double ref = weighted_phis_norm(poly_fn(Pm), j.alpha, j.beta, j.m, j.p, cfg.quad);
        for (int k = 1; k <= j.m; ++k) {
            const int r = j.m - k;
            const ChebPoly Pr = cheb_derivative(P, r);
            const double om =
                modulus(poly_fn(Pr),
                        make_request(ModulusKind::omega, k, r, t, 1.0, j.alpha, j.beta, j.p),
                        cfg.hgrid, cfg.quad)
                    .value;
            const double lhs = om / std::pow(t, k);
            ReportRow row = make("t^-k.omega/ref", k, r);
            row.lhs = lhs;
            row.rhs = ref;
            row.ratio = safe_ratio(lhs, ref);
            row.in_band = row_band.contains(row.ratio);
            if (t_from_lambda)
                row.note = "Lambda=" + fmt(j.lambda) + ";band=[" + fmt(row_band.lo) + "," +
                           fmt(row_band.hi) + "]";
            per_job[ji].push_back(std::move(row));
        }
    });

    for (std::size_t ji = 0; ji < jobs.size(); ++ji) {
        const Job& j = jobs[ji];
        for (ReportRow& row : per_job[ji]) {
            if (row.quantity.rfind("annihilation", 0) != 0) {
                std::ostringstream key;
                key << "splits|L=" << fmt(j.lambda) << "|m=" << j.m << "|n=" << j.n
                    << "|p=" << fmt(j.p) << "|w=(" << fmt(j.alpha) << "," << fmt(j.beta)
                    << ")|s=" << j.seed_idx;
                stability.add(key.str(), row.ratio);
            }
            rep.rows.push_back(std::move(row));
        }
    }
    stability.emit(rep.rows, cfg.stability_factor, "stability:");
    rep.tolerances = {{"band_lo", cfg.band.lo},
                      {"band_hi", cfg.band.hi},
                      {"stability_factor", cfg.stability_factor}};
    rep.grids = "hgrid=" + std::to_string(cfg.hgrid.count);
    rep.finalize();
    return rep;
}

} // namespace

VerificationReport check_derivative_chain(const DerivChainParams& params, const HarnessConfig& cfg) {
    return chain_report("cor2.2", {0.0}, false, params.m_list, params.n_list, params.p_list,
                        params.weights, params.num_seeds, cfg);
}

VerificationReport check_cor_2_3(const Cor23Params& params, const HarnessConfig& cfg) {
    for (double p : params.p_list)
        if (!(p >= 1.0)) throw std::invalid_argument("check_cor_2_3: needs 1 <= p <= inf");
    return chain_report("cor2.3", params.lambda_list, true, params.m_list, params.n_list,
                        params.p_list, params.weights, params.num_seeds, cfg);
}

// ------------------------------------------------------- Bernstein-Dzyadyk

VerificationReport check_bernstein(const BernsteinParams& params, const HarnessConfig& cfg) {
    VerificationReport rep;
    rep.experiment_id = "bernstein";
    rep.band = Band{1.0 - params.identity_rel_tol, 1.0 + params.identity_rel_tol};
    rep.seed = cfg.seed;

    auto unit_weight = [](double) { return 1.0; };

    // || phi T_n' ||_inf = n || T_n ||_inf, exactly.
    for (int n : params.identity_n_list) {
        const ChebPoly Tn = ChebPoly::basis(n);
        const ChebPoly dTn = cheb_derivative(Tn);
        auto phi_dt = [dTn](double x) { return eval_phi(x) * cheb_eval(dTn, x); };
        const double lhs = sup_norm(phi_dt, unit_weight, Interval::whole(), cfg.quad).value;
        const double rhs = n * sup_norm(poly_fn(Tn), unit_weight, Interval::whole(), cfg.quad).value;
        ReportRow row;
        row.quantity = "phiTn'/n.Tn";
        row.p = kInfP;
        row.n = n;
        row.k = 1;
        row.func = "T_" + std::to_string(n);
        row.lhs = lhs;
        row.rhs = rhs;
        row.ratio = safe_ratio(lhs, rhs);
        row.in_band = std::abs(row.ratio - 1.0) <= params.identity_rel_tol;
        rep.rows.push_back(std::move(row));
    }

    // Random sweep of || w phi^s P' ||_p <= C n s || w phi^{s-1} P ||_p.
    struct Job {
        int s, n, seed_idx;
        double p, alpha, beta;
    };
    std::vector<Job> jobs;
    for (int s : params.s_list)
        for (int n : params.n_list) {
            if (s > n - 1) continue;
            for (double p : params.p_list)
                for (const WeightPair& w : params.weights) {
                    if (std::isinf(p) && (w.alpha < 0.0 || w.beta < 0.0)) continue;
                    for (int si = 0; si < params.num_seeds; ++si)
                        jobs.push_back({s, n, si, p, w.alpha, w.beta});
                }
        }
    std::vector<ReportRow> sweep_rows(jobs.size());
    parallel_for(jobs.size(), cfg.threads, [&](std::size_t ji) {
        const Job& j = jobs[ji];
        const ChebPoly P = random_poly(j.n, poly_seed(cfg.seed, j.seed_idx, j.n));
        const ChebPoly dP = cheb_derivative(P);
        const double lhs = weighted_phis_norm(poly_fn(dP), j.alpha, j.beta, j.s, j.p, cfg.quad);
        const double rhs =
            j.n * j.s * weighted_phis_norm(poly_fn(P), j.alpha, j.beta, j.s - 1, j.p, cfg.quad);
        ReportRow row;
        row.quantity = "bernstein-ratio";
        row.alpha = j.alpha;
        row.beta = j.beta;
        row.p = j.p;
        row.k = j.s;
        row.n = j.n;
        row.func = "randpoly";
        row.seed = poly_seed(cfg.seed, j.seed_idx, j.n);
        row.lhs = lhs;
        row.rhs = rhs;
        row.ratio = safe_ratio(lhs, rhs);
        row.in_band = true;  // measurement; stability judged below
        sweep_rows[ji] = std::move(row);
    });

    // stability across n of the per-(s,p,w) empirical constant
    std::map<std::string, std::map<int, double>> group_max;
    double emp_max = 0.0;
    for (std::size_t ji = 0; ji < jobs.size(); ++ji) {
        const Job& j = jobs[ji];
        std::ostringstream key;
        key << "s=" << j.s << "|p=" << fmt(j.p) << "|w=(" << fmt(j.alpha) << "," << fmt(j.beta)
            << ")";
        auto& m = group_max[key.str()];
        m[j.n] = std::max(m.count(j.n) ? m[j.n] : 0.0, sweep_rows[ji].ratio);
        emp_max = std::max(emp_max, sweep_rows[ji].ratio);
        rep.rows.push_back(std::move(sweep_rows[ji]));
    }
    for (const auto& [key, by_n] : group_max) {
        double mx = 0.0, mn = 1e300;
        for (const auto& [n, v] : by_n) {
            mx = std::max(mx, v);
            mn = std::min(mn, v);
        }
        if (by_n.size() < 2) continue;
        ReportRow row;
        row.quantity = "stability:" + key;
        row.lhs = mx;
        row.rhs = mn;
        row.ratio = mn > 0.0 ? mx / mn : kInfP;
        row.in_band = row.ratio <= params.sweep_stability_factor;
        row.note = "max/min<=" + fmt(params.sweep_stability_factor);
        rep.rows.push_back(std::move(row));
    }
    rep.notes.emplace_back("empirical_constant_max", fmt(emp_max));
    rep.tolerances = {{"identity_rel_tol", params.identity_rel_tol},
                      {"sweep_stability_factor", params.sweep_stability_factor}};
    rep.grids = "sup_samples=" + std::to_string(cfg.quad.sup_samples);
    rep.finalize();
    return rep;
}

// ------------------------------------------------------------------- Remez

VerificationReport check_remez(const RemezParams& params, const HarnessConfig& cfg) {
    VerificationReport rep;
    rep.experiment_id = "remez";
    rep.band = Band{1.0, kInfP};
    rep.seed = cfg.seed;

    struct Key {
        int n, seed_idx;
        double p, alpha, beta;
        bool operator<(const Key& o) const {
            return std::tie(n, seed_idx, p, alpha, beta) <
                   std::tie(o.n, o.seed_idx, o.p, o.alpha, o.beta);
        }
    };
    std::map<Key, std::map<double, double>> instance_C;  // per instance: a -> C
    std::map<std::string, std::map<int, double>> group_max;

    struct Job {
        double a, p, alpha, beta;
        int n, seed_idx;
    };
    std::vector<Job> jobs;
    for (double a : params.a_list)
        for (int n : params.n_list) {
            if (!(n > std::sqrt(a))) continue;
            for (double p : params.p_list)
                for (const WeightPair& w : params.weights) {
                    if (std::isinf(p) && (w.alpha < 0.0 || w.beta < 0.0)) continue;
                    for (int si = 0; si < params.num_seeds; ++si)
                        jobs.push_back({a, p, w.alpha, w.beta, n, si});
                }
        }
    std::vector<ReportRow> rows(jobs.size());
    parallel_for(jobs.size(), cfg.threads, [&](std::size_t ji) {
        const Job& j = jobs[ji];
        const ChebPoly P = random_poly(j.n, poly_seed(cfg.seed, j.seed_idx, j.n));
        auto w = [&](double x) { return eval_jacobi_weight(x, j.alpha, j.beta); };
        const double full = weighted_lp_norm(poly_fn(P), w, j.p, Interval::whole(), cfg.quad).value;
        const Interval shrunk = interval_I(j.a, 1.0 / j.n);
        const double inner = weighted_lp_norm(poly_fn(P), w, j.p, shrunk, cfg.quad).value;
        ReportRow row;
        row.quantity = "remez-C";
        row.alpha = j.alpha;
        row.beta = j.beta;
        row.p = j.p;
        row.n = j.n;
        row.A = j.a;
        row.func = "randpoly";
        row.seed = poly_seed(cfg.seed, j.seed_idx, j.n);
        row.lhs = full;
        row.rhs = inner;
        row.ratio = safe_ratio(full, inner);
        // interval-restricted norms use independent panel layouts, so C >= 1
        // only holds up to quadrature accuracy for a > 0
        row.in_band = j.a == 0.0 ? row.ratio == 1.0 : row.ratio >= 1.0 - 1e-4;
        if (j.a == 0.0) row.note = "same-interval: C must be exactly 1";
        rows[ji] = std::move(row);
    });

    for (std::size_t ji = 0; ji < jobs.size(); ++ji) {
        const Job& j = jobs[ji];
        instance_C[{j.n, j.seed_idx, j.p, j.alpha, j.beta}][j.a] = rows[ji].ratio;
        if (j.a > 0.0) {
            std::ostringstream key;
            key << "a=" << fmt(j.a) << "|p=" << fmt(j.p) << "|w=(" << fmt(j.alpha) << ","
                << fmt(j.beta) << ")";
            auto& m = group_max[key.str()];
            m[j.n] = std::max(m.count(j.n) ? m[j.n] : 0.0, rows[ji].ratio);
        }
        rep.rows.push_back(std::move(rows[ji]));
    }

    // C nondecreasing in a per instance (within quadrature accuracy)
    for (const auto& [key, by_a] : instance_C) {
        double prev = -1.0;
        bool ok = true;
        for (const auto& [a, C] : by_a) {
            if (C < prev * (1.0 - 1e-4)) ok = false;
            prev = C;
        }
        ReportRow row;
        row.quantity = "monotone-in-a";
        row.n = key.n;
        row.p = key.p;
        row.alpha = key.alpha;
        row.beta = key.beta;
        row.in_band = ok;
        row.lhs = prev;
        row.rhs = prev;
        row.ratio = 1.0;
        rep.rows.push_back(std::move(row));
    }
    for (const auto& [key, by_n] : group_max) {
        if (by_n.size() < 2) continue;
        double mx = 0.0, mn = 1e300;
        for (const auto& [n, v] : by_n) {
            mx = std::max(mx, v);
            mn = std::min(mn, v);
        }
        ReportRow row;
        row.quantity = "stability:" + key;
        row.lhs = mx;
        row.rhs = mn;
        row.ratio = mn > 0.0 ? mx / mn : kInfP;
        row.in_band = row.ratio <= params.sweep_stability_factor;
        row.note = "max/min<=" + fmt(params.sweep_stability_factor);
        rep.rows.push_back(std::move(row));
    }
    rep.tolerances = {{"sweep_stability_factor", params.sweep_stability_factor}};
    rep.grids = "quad=" + std::to_string(cfg.quad.panels_per_side) + "x" +
                std::to_string(cfg.quad.nodes_per_panel);
    rep.finalize();
    return rep;
}

// ------------------------------------------------- difference expansion (2.4)

namespace {

long double cheb_eval_ld(const std::vector<double>& c, long double x) {
    if (c.empty()) return 0.0L;
    if (c.size() == 1) return c[0];
    long double b1 = 0.0L, b2 = 0.0L;
    const long double x2 = 2.0L * x;
    for (std::size_t j = c.size() - 1; j >= 1; --j) {
        const long double b0 = c[j] + x2 * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return c[0] + x * b1 - b2;
}

// phi-step difference evaluated entirely in extended precision; this is the
// compensated path used when the double evaluation cancels.
long double phi_diff_ld(const std::vector<double>& coeffs, int k, long double h, long double x) {
    const long double phi = std::sqrt((1.0L - x) * (1.0L + x));
    const long double step = h * phi;
    const long double half = 0.5L * k * step;
    if (x - half < -1.0L || x + half > 1.0L) return 0.0L;
    long double acc = 0.0L, binom = 1.0L;
    for (int i = 0; i <= k; ++i) {
        const long double term = binom * cheb_eval_ld(coeffs, x - half + i * step);
        acc += ((k - i) % 2 == 0) ? term : -term;
        binom = binom * (k - i) / (i + 1);
    }
    return acc;
}

} // namespace

VerificationReport check_identity_expansion(const IdentityParams& params, const HarnessConfig& cfg) {
    VerificationReport rep;
    rep.experiment_id = "identity2.4";
    rep.band = Band{0.0, 1.0};
    rep.seed = cfg.seed;

    for (int k : params.k_list) {
        const int n_coeffs = std::max(params.poly_degree + 1, k + 4);
        const std::uint64_t sid = poly_seed(cfg.seed, k, n_coeffs);
        const ChebPoly Q = random_poly(n_coeffs, sid);
        const int deg = Q.degree();
        std::vector<ChebPoly> Qd(static_cast<std::size_t>(deg) + 1);
        Qd[0] = Q;
        for (int j = 1; j <= deg; ++j) Qd[static_cast<std::size_t>(j)] = cheb_derivative(Qd[static_cast<std::size_t>(j - 1)]);
        std::vector<double> S(static_cast<std::size_t>(deg) + 1, 0.0);
        for (int j = k; j <= deg; ++j)
            S[static_cast<std::size_t>(j)] = difference_expansion_coefficient(k, j).to_double();
        const RealFn Qfn = poly_fn(Q);

        // (i) exact reconstruction at seeded random (h, x)
        std::uint64_t state = mix64(sid);
        for (int trial = 0; trial < params.samples; ++trial) {
            state = mix64(state);
            const double uh = static_cast<double>(state >> 11) * 0x1.0p-53;
            state = mix64(state);
            const double ux = static_cast<double>(state >> 11) * 0x1.0p-53;
            const double h = 1e-3 * std::pow(10.0, uh);
            const double x = -0.9 + 1.8 * ux;
            const double delta = phi_step_difference(Qfn, k, h, x);
            const double hphi = h * eval_phi(x);
            double sum = 0.0, sum_abs = 0.0, fact = 1.0, hp = 1.0;
            for (int j = 1; j <= deg; ++j) {
                fact *= j;
                hp *= hphi;
                if (j < k) continue;
                const double term = cheb_eval(Qd[static_cast<std::size_t>(j)], x) / fact *
                                    S[static_cast<std::size_t>(j)] * hp;
                sum += term;
                sum_abs += std::abs(term);
            }
            ReportRow row;
            row.quantity = "exact-reconstruction";
            row.k = k;
            row.t = h;
            row.A = x;
            row.func = "randpoly";
            row.seed = sid;
            row.lhs = std::abs(delta - sum);
            row.rhs = params.exact_tol * (1.0 + sum_abs);
            row.ratio = safe_ratio(row.lhs, row.rhs);
            row.in_band = row.lhs <= row.rhs;
            rep.rows.push_back(std::move(row));
        }

        // pick an x where the leading remainder coefficient is healthy
        double x0 = 0.3;
        {
            double best = -1.0;
            for (double cand : {0.3, 0.37, 0.44, 0.51, 0.23}) {
                const double v = std::abs(cheb_eval(Qd[static_cast<std::size_t>(std::min(k + 2, deg))], cand));
                if (v > best) {
                    best = v;
                    x0 = cand;
                }
            }
        }

        // (ii) remainder slope k+2 over h in [1e-3, 1e-2]
        auto remainder_at = [&](double h, bool extended) {
            const double phi = eval_phi(x0);
            const double lead = std::pow(h * phi, k) * cheb_eval(Qd[static_cast<std::size_t>(k)], x0);
            if (!extended) return std::abs(phi_step_difference(Qfn, k, h, x0) - lead);
            const long double d = phi_diff_ld(Q.coeffs, k, h, x0);
            return static_cast<double>(std::abs(d - static_cast<long double>(lead)));
        };
        const std::vector<double> hs = log_space(1e-3, 1e-2, 10);
        bool used_extended = false;
        LogFit fit;
        for (int attempt = 0; attempt < 2; ++attempt) {
            std::vector<double> ys(hs.size());
            for (std::size_t i = 0; i < hs.size(); ++i) ys[i] = remainder_at(hs[i], attempt == 1);
            fit = log_fit(hs, ys);
            used_extended = attempt == 1;
            if (std::abs(fit.slope - (k + 2)) <= params.slope_tol) break;
        }
        {
            ReportRow row;
            row.quantity = "remainder-slope";
            row.k = k;
            row.A = x0;
            row.func = "randpoly";
            row.seed = sid;
            row.lhs = fit.slope;
            row.rhs = k + 2;
            row.ratio = fit.slope / (k + 2);
            row.in_band = std::abs(fit.slope - (k + 2)) <= params.slope_tol;
            row.note = used_extended ? "compensated-evaluation" : "double-evaluation";
            rep.rows.push_back(std::move(row));
        }

        // (iii) absent odd power: fitted h^{k+1} coefficient
        {
            const double h_hi = 0.25, h_lo = 0.01;
            const std::vector<double> hf = log_space(h_lo, h_hi, 24);
            const int exps[4] = {k + 1, k + 2, k + 4, k + 6};
            DenseMatrix A(hf.size(), 4);
            std::vector<double> b(hf.size());
            for (std::size_t i = 0; i < hf.size(); ++i) {
                const double u = hf[i] / h_hi;
                for (int c = 0; c < 4; ++c) A(i, static_cast<std::size_t>(c)) = std::pow(u, exps[c]);
                const long double d = phi_diff_ld(Q.coeffs, k, hf[i], x0);
                const double phi = eval_phi(x0);
                const double lead =
                    std::pow(hf[i] * phi, k) * cheb_eval(Qd[static_cast<std::size_t>(k)], x0);
                b[i] = static_cast<double>(d - static_cast<long double>(lead));
            }
            const std::vector<double> c = lstsq_qr(std::move(A), std::move(b));
            const double odd_coeff = c[0] / std::pow(h_hi, k + 1);
            ReportRow row;
            row.quantity = "odd-power-coefficient";
            row.k = k;
            row.A = x0;
            row.func = "randpoly";
            row.seed = sid;
            row.lhs = std::abs(odd_coeff);
            row.rhs = params.odd_coeff_tol;
            row.ratio = safe_ratio(row.lhs, row.rhs);
            row.in_band = row.lhs <= row.rhs;
            rep.rows.push_back(std::move(row));
        }
    }

    rep.tolerances = {{"exact_tol", params.exact_tol},
                      {"slope_tol", params.slope_tol},
                      {"odd_coeff_tol", params.odd_coeff_tol}};
    rep.grids = "h=[1e-3,1e-2] slope grid; [0.01,0.25] coefficient grid";
    rep.finalize();
    return rep;
}

// ----------------------------------- direct and inverse estimates (thm3.1)

VerificationReport check_direct_inverse(const DirectInverseParams& params, const HarnessConfig& cfg) {
    VerificationReport rep;
    rep.experiment_id = "thm3.1";
    rep.band = Band{0.0, params.inverse_C_max};
    rep.seed = cfg.seed;

    const TestFunction f = make_test_function(params.func_id);
    const bool kink = has_interior_kink(params.func_id);
    const WeightSpec w{params.weight.alpha, params.weight.beta, params.p};
    const double q = w.q();
    auto wfn = [&](double x) { return eval_jacobi_weight(x, w.alpha, w.beta); };
    const double norm_wf =
        weighted_lp_norm([&](double x) { return f(x); }, wfn, params.p, Interval::whole(), cfg.quad)
            .value;

    auto omega_f = [&](double t) {
        return modulus(deriv_fn(f, 0),
                       make_request(ModulusKind::omega, params.k, 0, t, 1.0, w.alpha, w.beta,
                                    params.p, kink),
                       cfg.hgrid, cfg.quad)
            .value;
    };

    auto fill = [&](ReportRow& row, int n, double t) {
        row.alpha = w.alpha;
        row.beta = w.beta;
        row.p = params.p;
        row.k = params.k;
        row.n = n;
        row.t = t;
        row.func = params.func_id;
    };

    // direct part + Jackson and norm sub-checks
    std::vector<ReportRow> direct_rows(params.n_list.size() * 3);
    parallel_for(params.n_list.size(), cfg.threads, [&](std::size_t ni) {
        const int n = params.n_list[ni];
        const double t = params.theta / n;
        const ApproxResult ap = best_approx(f, n, w, cfg.grid_size, cfg.quad);
        const ChebPoly Pk = cheb_derivative(ap.poly, params.k);
        const double dn = std::pow(n, -params.k) *
                          weighted_phis_norm(poly_fn(Pk), w.alpha, w.beta, params.k, params.p, cfg.quad);
        const double om = omega_f(t);

        ReportRow r1;
        r1.quantity = "direct:n^-k|wphi^kP*^(k)|/omega";
        fill(r1, n, t);
        r1.lhs = dn;
        r1.rhs = om;
        r1.ratio = safe_ratio(dn, om);
        r1.in_band = r1.ratio <= params.direct_ratio_max;
        direct_rows[3 * ni] = std::move(r1);

        ReportRow r2;
        r2.quantity = "jackson:E_n/omega";
        fill(r2, n, t);
        r2.lhs = ap.error;
        r2.rhs = om;
        r2.ratio = safe_ratio(ap.error, om);
        r2.in_band = r2.ratio <= params.jackson_C_max;
        direct_rows[3 * ni + 1] = std::move(r2);

        ReportRow r3;
        r3.quantity = "normest:omega/|wf|";
        fill(r3, n, t);
        r3.lhs = om;
        r3.rhs = norm_wf;
        r3.ratio = safe_ratio(om, norm_wf);
        r3.in_band = r3.ratio <= params.jackson_C_max;
        direct_rows[3 * ni + 2] = std::move(r3);
    });
    for (ReportRow& row : direct_rows) rep.rows.push_back(std::move(row));

    // inverse part at t = theta / inverse_base_n
    {
        const int n0 = params.inverse_base_n;
        if (n0 < params.k)
            throw std::invalid_argument("check_direct_inverse: inverse_base_n must be >= k");
        const double t = params.theta / n0;
        const double om_f = omega_f(t);

        std::vector<double> omega_terms(static_cast<std::size_t>(params.J) + 1);
        std::vector<double> deriv_terms(static_cast<std::size_t>(params.J) + 1);
        parallel_for(static_cast<std::size_t>(params.J) + 1, cfg.threads, [&](std::size_t jj) {
            const int jn = n0 << jj;
            const ApproxResult ap = best_approx(f, jn, w, cfg.grid_size, cfg.quad);
            const double tj = params.theta / jn;
            omega_terms[jj] =
                modulus(poly_fn(ap.poly),
                        make_request(ModulusKind::omega, params.k, 0, tj, 1.0, w.alpha, w.beta,
                                     params.p),
                        cfg.hgrid, cfg.quad)
                    .value;
            const ChebPoly Pk = cheb_derivative(ap.poly, params.k);
            deriv_terms[jj] =
                std::pow(2.0, -static_cast<double>(jj) * params.k) * std::pow(n0, -params.k) *
                weighted_phis_norm(poly_fn(Pk), w.alpha, w.beta, params.k, params.p, cfg.quad);
        });

        double sum_omega = 0.0, sum_deriv = 0.0;
        for (int jj = 0; jj <= params.J; ++jj) {
            sum_omega += std::pow(omega_terms[static_cast<std::size_t>(jj)], q);
            sum_deriv += std::pow(deriv_terms[static_cast<std::size_t>(jj)], q);
        }

        ReportRow r1;
        r1.quantity = "inverse:C(omega-sum)";
        fill(r1, n0, t);
        r1.lhs = std::pow(om_f, q);
        r1.rhs = sum_omega;
        r1.ratio = std::pow(safe_ratio(r1.lhs, r1.rhs), 1.0 / q);
        r1.in_band = r1.ratio <= params.inverse_C_max;
        r1.note = "C = (LHS/RHS)^{1/q}";
        rep.rows.push_back(std::move(r1));

        ReportRow r2;
        r2.quantity = "inverse:C(derivative-sum)";
        fill(r2, n0, t);
        r2.lhs = std::pow(om_f, q);
        r2.rhs = sum_deriv;
        r2.ratio = std::pow(safe_ratio(r2.lhs, r2.rhs), 1.0 / q);
        r2.in_band = r2.ratio <= params.inverse_C_max;
        rep.rows.push_back(std::move(r2));

        ReportRow r3;
        r3.quantity = "inverse:tail-fraction";
        fill(r3, n0 << params.J, params.theta / (n0 << params.J));
        r3.lhs = std::pow(omega_terms[static_cast<std::size_t>(params.J)], q);
        r3.rhs = sum_omega;
        r3.ratio = safe_ratio(r3.lhs, r3.rhs);
        r3.in_band = r3.ratio <= 0.10;
        r3.note = "last dyadic term below 10% of sum";
        rep.rows.push_back(std::move(r3));
    }

    rep.tolerances = {{"direct_ratio_max", params.direct_ratio_max},
                      {"inverse_C_max", params.inverse_C_max},
                      {"theta", params.theta},
                      {"J", static_cast<double>(params.J)}};
    rep.grids = "grid_size=" + std::to_string(cfg.grid_size);
    rep.finalize();
    return rep;
}

// ------------------------------------------------ rate equivalence (cor3.2)

VerificationReport check_gamma_equivalence(const GammaParams& params, const HarnessConfig& cfg) {
    VerificationReport rep;
    rep.experiment_id = "cor3.2";
    rep.band = Band{-params.slope_tol, params.slope_tol};
    rep.seed = cfg.seed;

    const TestFunction f = make_test_function(params.func_id);
    const bool kink = has_interior_kink(params.func_id);
    const WeightSpec w{params.weight.alpha, params.weight.beta, params.p};

    // derivative-norm side
    std::vector<double> dn(params.n_list.size());
    parallel_for(params.n_list.size(), cfg.threads, [&](std::size_t ni) {
        const int n = params.n_list[ni];
        const ApproxResult ap = best_approx(f, n, w, cfg.grid_size, cfg.quad);
        const ChebPoly Pk = cheb_derivative(ap.poly, params.k);
        dn[ni] = weighted_phis_norm(poly_fn(Pk), w.alpha, w.beta, params.k, params.p, cfg.quad);
    });

    // modulus side
    std::vector<double> om(params.t_list.size());
    parallel_for(params.t_list.size(), cfg.threads, [&](std::size_t ti) {
        om[ti] = modulus(deriv_fn(f, 0),
                         make_request(ModulusKind::omega, params.k, 0, params.t_list[ti], 1.0,
                                      w.alpha, w.beta, params.p, kink),
                         cfg.hgrid, cfg.quad)
                     .value;
    });

    // superalgebraic decay short-circuits the fits
    const double dn_last = dn.back();
    const double expected_algebraic =
        dn.front() * std::pow(static_cast<double>(params.n_list.back()) / params.n_list.front(), -8.0);
    if (dn_last <= expected_algebraic || om.back() < 1e-12) {
        ReportRow row;
        row.quantity = "rate-fit";
        row.func = params.func_id;
        row.note = "superalgebraic decay; slope test not applicable";
        row.in_band = true;
        rep.rows.push_back(std::move(row));
        rep.finalize(false);
        rep.verdict = "not-applicable";
        return rep;
    }

    std::vector<double> nd(params.n_list.begin(), params.n_list.end());
    const LogFit fit_n = log_fit(nd, dn);
    const LogFit fit_t = log_fit(params.t_list, om);
    const double gamma_n = params.k - fit_n.slope;
    const double gamma_t = fit_t.slope;
    // a log-log fit only certifies a rate when it actually is a power law
    const bool inconclusive = fit_n.r2 < params.r2_min || fit_t.r2 < params.r2_min;

    auto push = [&](const std::string& qty, double got, double want, double r2) {
        ReportRow row;
        row.quantity = qty;
        row.func = params.func_id;
        row.p = params.p;
        row.k = params.k;
        row.alpha = params.weight.alpha;
        row.beta = params.weight.beta;
        row.lhs = got;
        row.rhs = want;
        row.ratio = want != 0.0 ? got / want : got;
        row.in_band = inconclusive || (std::abs(got - want) <= params.slope_tol && r2 >= params.r2_min);
        row.note = "R2=" + fmt(r2) + (inconclusive ? "; inconclusive" : "");
        rep.rows.push_back(std::move(row));
    };
    if (params.gamma > 0.0) {
        push("gamma-from-derivative-norms", gamma_n, params.gamma, fit_n.r2);
        push("gamma-from-modulus", gamma_t, params.gamma, fit_t.r2);
    }
    push("gamma-consistency", gamma_n, gamma_t, std::min(fit_n.r2, fit_t.r2));

    rep.notes.emplace_back("gamma_from_derivative_norms", fmt(gamma_n));
    rep.notes.emplace_back("gamma_from_modulus", fmt(gamma_t));
    rep.notes.emplace_back("r2_derivative", fmt(fit_n.r2));
    rep.notes.emplace_back("r2_modulus", fmt(fit_t.r2));
    rep.tolerances = {{"slope_tol", params.slope_tol}, {"r2_min", params.r2_min}};
    rep.grids = "n=" + std::to_string(params.n_list.front()) + ".." +
                std::to_string(params.n_list.back());
    rep.finalize();
    if (inconclusive) {
        rep.verdict = "not-applicable";
        rep.notes.emplace_back("fit_quality", "inconclusive (R2 below threshold)");
    }
    return rep;
}

// ------------------------------------------- K-functional band (lemma4.1)

VerificationReport check_lemma_4_1(const Lemma41Params& params, const HarnessConfig& cfg) {
    VerificationReport rep;
    rep.experiment_id = "lemma4.1";
    rep.band = params.band;
    rep.seed = cfg.seed;

    for (const Lemma41Case& cs : params.cases) {
        const TestFunction f = make_test_function(cs.func_id);
        const bool kink = has_interior_kink(cs.func_id);
        const WeightSpec w{cs.weight.alpha, cs.weight.beta, cs.p};
        if (cs.r / 2.0 + w.alpha < 0.0 || cs.r / 2.0 + w.beta < 0.0)
            throw std::invalid_argument("check_lemma_4_1: needs r/2+alpha, r/2+beta >= 0");
        for (double t : params.t_list) {
            if (!(t <= 2.0 / cs.k)) continue;
            const double om =
                modulus(deriv_fn(f, cs.r),
                        make_request(ModulusKind::omega, cs.k, cs.r, t, 1.0, w.alpha, w.beta, cs.p,
                                     kink),
                        cfg.hgrid, cfg.quad)
                    .value;
            const KFunctionalResult K = k_functional(f, cs.k, cs.r, t, w, params.N_max, cfg.quad);

            ReportRow row;
            row.quantity = "K/omega";
            row.func = cs.func_id;
            row.alpha = w.alpha;
            row.beta = w.beta;
            row.p = cs.p;
            row.k = cs.k;
            row.r = cs.r;
            row.t = t;
            row.lhs = K.value;
            row.rhs = om;
            if (K.value <= 1e-9 && om <= 1e-9) {
                row.ratio = 1.0;
                row.in_band = true;
                row.note = "degenerate: both sides vanish";
            } else if (K.warning) {
                row.ratio = safe_ratio(K.value, om);
                row.in_band = true;
                row.note = "excluded: K-estimator non-convergence";
            } else {
                row.ratio = safe_ratio(K.value, om);
                row.in_band = params.band.contains(row.ratio);
            }
            rep.rows.push_back(std::move(row));
        }
    }
    rep.tolerances = {{"band_lo", params.band.lo},
                      {"band_hi", params.band.hi},
                      {"N_max", static_cast<double>(params.N_max)}};
    rep.grids = "kfun_grid=1536";
    rep.finalize();
    return rep;
}

// --------------------------------- sharp Marchaud and Jackson inequalities

namespace {

// omega_{m,r} of f at each step in `steps` (parallel over steps).
std::vector<double> modulus_curve(const TestFunction& f, int m, int r, const WeightSpec& w,
                                  const std::vector<double>& steps, bool kink,
                                  const HarnessConfig& cfg) {
    std::vector<double> out(steps.size());
    parallel_for(steps.size(), cfg.threads, [&](std::size_t i) {
        out[i] = modulus(deriv_fn(f, r),
                         make_request(ModulusKind::omega, m, r, steps[i], 1.0, w.alpha, w.beta, w.p,
                                      kink),
                         cfg.hgrid, cfg.quad)
                     .value;
    });
    return out;
}

// E_n(f^{(r)}) with weight w_{alpha,beta} phi^r for n = 1..n_max.
std::vector<double> en_curve(const TestFunction& f, int r, const WeightSpec& w, int n_max,
                             const HarnessConfig& cfg) {
    const TestFunction fr = derivative_function(f, r);
    const WeightSpec we{w.alpha + 0.5 * r, w.beta + 0.5 * r, w.p};
    std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
    parallel_for(static_cast<std::size_t>(n_max), cfg.threads, [&](std::size_t idx) {
        const int n = static_cast<int>(idx) + 1;
        out[static_cast<std::size_t>(n)] = best_approx(fr, n, we, cfg.grid_size, cfg.quad).error;
    });
    return out;
}

// trapezoid of g over the sub-grid of `u` restricted to [lo, hi]
double log_trapezoid(const std::vector<double>& u, const std::vector<double>& g, double lo,
                     double hi) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        const double a = u[i], b = u[i + 1];
        if (b <= lo || a >= hi) continue;
        const double aa = std::max(a, lo), bb = std::min(b, hi);
        // linear interpolation of g at clipped ends
        auto at = [&](double x) {
            const double s = (x - a) / (b - a);
            return g[i] * (1.0 - s) + g[i + 1] * s;
        };
        acc += 0.5 * (at(aa) + at(bb)) * (bb - aa);
    }
    return acc;
}

} // namespace

VerificationReport check_sharp_marchaud(const MarchaudParams& params, const HarnessConfig& cfg) {
    VerificationReport rep;
    rep.experiment_id = "marchaud";
    rep.band = Band{0.0, params.C_max};
    rep.seed = cfg.seed;

    const TestFunction f = make_test_function(params.func_id);
    const bool kink = has_interior_kink(params.func_id);
    const double t_min = *std::min_element(params.t_list.begin(), params.t_list.end());

    StabilityTracker stability;
    for (double p : params.p_list) {
        if (!(p > 1.0 && p < kInfP)) throw std::invalid_argument("check_sharp_marchaud: 1 < p < inf");
        const double s = std::min(2.0, p);
        const WeightSpec w{params.weight.alpha, params.weight.beta, p};
        if (params.r / 2.0 + w.alpha < 0.0 || params.r / 2.0 + w.beta < 0.0)
            throw std::invalid_argument("check_sharp_marchaud: needs r/2+alpha, r/2+beta >= 0");

        // u-grid for the integral, including every t in t_list
        std::set<double> uset(params.t_list.begin(), params.t_list.end());
        for (double u : log_space(t_min, 1.0, params.integral_nodes)) uset.insert(u);
        uset.insert(1.0);
        const std::vector<double> ug(uset.begin(), uset.end());

        const std::vector<double> om_m1 = modulus_curve(f, params.m + 1, params.r, w, ug, kink, cfg);
        const std::vector<double> om_m = modulus_curve(f, params.m, params.r, w, params.t_list, kink, cfg);

        std::vector<double> integrand(ug.size());
        for (std::size_t i = 0; i < ug.size(); ++i)
            integrand[i] = std::pow(om_m1[i], s) / std::pow(ug[i], params.m * s + 1.0);

        const int n_needed = static_cast<int>(std::ceil(1.0 / t_min)) - 1;
        const int n_max = std::min(n_needed, 64);
        const std::vector<double> En = en_curve(f, params.r, w, n_max, cfg);
        const double Em = En[static_cast<std::size_t>(std::min(params.m, n_max))];

        for (std::size_t ti = 0; ti < params.t_list.size(); ++ti) {
            const double t = params.t_list[ti];
            const double tm = std::pow(t, params.m);

            const double I = log_trapezoid(ug, integrand, t, 1.0);
            const double rhs1 = tm * std::pow(I + std::pow(Em, s), 1.0 / s);

            double S = 0.0;
            const int n_lim = static_cast<int>(std::ceil(1.0 / t)) - 1;
            bool tail_flag = false;
            for (int n = 1; n <= n_lim; ++n) {
                if (n > n_max) {  // geometric tail estimate from the last term
                    const double last = std::pow(n_max, s * params.m - 1.0) *
                                        std::pow(En[static_cast<std::size_t>(n_max)], s);
                    const double tail = last * (n_lim - n_max);
                    tail_flag = tail > 0.1 * (S + tail);
                    S += tail;
                    break;
                }
                S += std::pow(n, s * params.m - 1.0) * std::pow(En[static_cast<std::size_t>(n)], s);
            }
            const double rhs2 = tm * std::pow(S, 1.0 / s);

            auto push = [&](const std::string& qty, double lhs, double rhs, bool flag) {
                ReportRow row;
                row.quantity = qty;
                row.func = params.func_id;
                row.alpha = w.alpha;
                row.beta = w.beta;
                row.p = p;
                row.k = params.m;
                row.r = params.r;
                row.t = t;
                row.lhs = lhs;
                row.rhs = rhs;
                row.ratio = safe_ratio(lhs, rhs);
                row.in_band = row.ratio <= params.C_max && !flag;
                if (flag) row.note = "tail-dominance";
                std::ostringstream key;
                key << qty << "|p=" << fmt(p);
                stability.add(key.str(), row.ratio);
                rep.rows.push_back(std::move(row));
            };
            push("marchaud-integral:omega_m/rhs", om_m[ti], rhs1, false);
            push("marchaud-sum:omega_m/rhs", om_m[ti], rhs2, tail_flag);
        }
    }
    stability.emit(rep.rows, cfg.stability_factor, "stability:");
    rep.tolerances = {{"C_max", params.C_max}, {"stability_factor", cfg.stability_factor}};
    rep.grids = "integral_nodes=" + std::to_string(params.integral_nodes);
    rep.finalize();
    return rep;
}

VerificationReport check_sharp_jackson(const JacksonParams& params, const HarnessConfig& cfg) {
    VerificationReport rep;
    rep.experiment_id = "jackson";
    rep.band = Band{0.0, params.C_max};
    rep.seed = cfg.seed;

    const TestFunction f = make_test_function(params.func_id);
    const bool kink = has_interior_kink(params.func_id);
    const int j_max = *std::max_element(params.n_levels.begin(), params.n_levels.end());
    int j0 = 0;
    while ((1 << j0) < params.m) ++j0;

    StabilityTracker stability;
    for (double p : params.p_list) {
        if (!(p > 1.0 && p < kInfP)) throw std::invalid_argument("check_sharp_jackson: 1 < p < inf");
        const double s = std::max(2.0, p);
        const WeightSpec w{params.weight.alpha, params.weight.beta, p};
        if (params.r / 2.0 + w.alpha < 0.0 || params.r / 2.0 + w.beta < 0.0)
            throw std::invalid_argument("check_sharp_jackson: needs r/2+alpha, r/2+beta >= 0");

        // E_{2^j} and omega_{m+1}(2^{-j})
        const TestFunction fr = derivative_function(f, params.r);
        const WeightSpec we{w.alpha + 0.5 * params.r, w.beta + 0.5 * params.r, p};
        std::vector<double> E2(static_cast<std::size_t>(j_max) + 1);
        parallel_for(static_cast<std::size_t>(j_max) + 1, cfg.threads, [&](std::size_t j) {
            E2[j] = best_approx(fr, 1 << j, we, cfg.grid_size, cfg.quad).error;
        });
        std::vector<double> dyadic_steps(static_cast<std::size_t>(j_max) + 1);
        for (int j = 0; j <= j_max; ++j) dyadic_steps[static_cast<std::size_t>(j)] = std::pow(2.0, -j);
        const std::vector<double> om_m1_dyadic =
            modulus_curve(f, params.m + 1, params.r, w, dyadic_steps, kink, cfg);
        const std::vector<double> om_m_dyadic =
            modulus_curve(f, params.m, params.r, w, dyadic_steps, kink, cfg);

        for (int n : params.n_levels) {
            double sumE = 0.0, sumW = 0.0;
            for (int j = j0; j <= n; ++j) {
                const double w2 = std::pow(2.0, params.m * j * s);
                sumE += w2 * std::pow(E2[static_cast<std::size_t>(j)], s);
                sumW += w2 * std::pow(om_m1_dyadic[static_cast<std::size_t>(j)], s);
            }
            const double pref = std::pow(2.0, -static_cast<double>(n) * params.m);
            const double om_ref = om_m_dyadic[static_cast<std::size_t>(n)];

            auto push = [&](const std::string& qty, double lhs) {
                ReportRow row;
                row.quantity = qty;
                row.func = params.func_id;
                row.alpha = w.alpha;
                row.beta = w.beta;
                row.p = p;
                row.k = params.m;
                row.r = params.r;
                row.n = n;
                row.t = std::pow(2.0, -n);
                row.lhs = lhs;
                row.rhs = om_ref;
                row.ratio = safe_ratio(lhs, om_ref);
                row.in_band = row.ratio <= params.C_max;
                std::ostringstream key;
                key << qty << "|p=" << fmt(p);
                stability.add(key.str(), row.ratio);
                rep.rows.push_back(std::move(row));
            };
            push("jackson-E-sum/omega", pref * std::pow(sumE, 1.0 / s));
            push("jackson-omega-sum/omega", pref * std::pow(sumW, 1.0 / s));
        }

        // integral form of the Jackson-type bound on [t, 1/m]
        const double hi = 1.0 / params.m;
        std::vector<double> tl;
        for (double t : params.t_list)
            if (t <= hi) tl.push_back(t);
        if (!tl.empty()) {
            const double t_lo = *std::min_element(tl.begin(), tl.end());
            std::set<double> uset(tl.begin(), tl.end());
            for (double u : log_space(t_lo, hi, params.integral_nodes)) uset.insert(u);
            uset.insert(hi);
            const std::vector<double> ug(uset.begin(), uset.end());
            const std::vector<double> om_m1 =
                modulus_curve(f, params.m + 1, params.r, w, ug, kink, cfg);
            const std::vector<double> om_m = modulus_curve(f, params.m, params.r, w, tl, kink, cfg);
            std::vector<double> integrand(ug.size());
            for (std::size_t i = 0; i < ug.size(); ++i)
                integrand[i] = std::pow(om_m1[i], s) / std::pow(ug[i], params.m * s + 1.0);
            for (std::size_t ti = 0; ti < tl.size(); ++ti) {
                const double t = tl[ti];
                const double lhs =
                    std::pow(t, params.m) * std::pow(log_trapezoid(ug, integrand, t, hi), 1.0 / s);
                ReportRow row;
                row.quantity = "jackson-integral/omega";
                row.func = params.func_id;
                row.alpha = w.alpha;
                row.beta = w.beta;
                row.p = p;
                row.k = params.m;
                row.r = params.r;
                row.t = t;
                row.lhs = lhs;
                row.rhs = om_m[ti];
                row.ratio = safe_ratio(lhs, om_m[ti]);
                row.in_band = row.ratio <= params.C_max;
                std::ostringstream key;
                key << "jackson-integral|p=" << fmt(p);
                stability.add(key.str(), row.ratio);
                rep.rows.push_back(std::move(row));
            }
        }
    }
    stability.emit(rep.rows, cfg.stability_factor, "stability:");
    rep.tolerances = {{"C_max", params.C_max}, {"stability_factor", cfg.stability_factor}};
    rep.grids = "levels<=" + std::to_string(j_max);
    rep.finalize();
    return rep;
}

// ------------------------------------------------------------ open problem

VerificationReport probe_open_problem(const ProbeParams& params, const HarnessConfig& cfg) {
    VerificationReport rep;
    rep.experiment_id = "open-probe";
    rep.band = Band{0.0, kInfP};
    rep.seed = cfg.seed;

    const ChebPoly Tn = ChebPoly::basis(params.n);
    for (double p : params.p_list) {
        if (!(p > 0.0 && p <= 1.0))
            throw std::invalid_argument("probe_open_problem: wants 0 < p <= 1");
        const WeightSpec w{params.weight.alpha, params.weight.beta, p};
        for (double t : params.t_list) {
            const double om = modulus(poly_fn(Tn),
                                      make_request(ModulusKind::omega, params.k, 0, t, 1.0, w.alpha,
                                                   w.beta, p),
                                      cfg.hgrid, cfg.quad)
                                  .value;
            const double ps = modulus(poly_fn(Tn),
                                      make_request(ModulusKind::psi, params.k, 0, t, 1.0, w.alpha,
                                                   w.beta, p),
                                      cfg.hgrid, cfg.quad)
                                  .value;
            const double mp = modulus(poly_fn(Tn),
                                      make_request(ModulusKind::mainpart, params.k, 0, t, 1.0,
                                                   w.alpha, w.beta, p),
                                      cfg.hgrid, cfg.quad)
                                  .value;
            const ChebPoly Tk = cheb_derivative(Tn, params.k);
            const double ref = std::pow(t, params.k) *
                               weighted_phis_norm(poly_fn(Tk), w.alpha, w.beta, params.k, p, cfg.quad);
            auto push = [&](const std::string& qty, double lhs, double rhs) {
                ReportRow row;
                row.quantity = qty;
                row.func = "T_" + std::to_string(params.n);
                row.alpha = w.alpha;
                row.beta = w.beta;
                row.p = p;
                row.k = params.k;
                row.t = t;
                row.lhs = lhs;
                row.rhs = rhs;
                row.ratio = safe_ratio(lhs, rhs);
                row.in_band = true;  // informational probe
                rep.rows.push_back(std::move(row));
            };
            push("omega/ref", om, ref);
            push("psi/ref", ps, ref);
            push("mainpart/ref", mp, ref);
            push("omega/psi", om, ps);
        }
    }
    rep.notes.emplace_back("purpose", "ratio tables only; no pass/fail semantics below p=1");
    rep.finalize(true);
    return rep;
}

// ----------------------------------------------------------------- dispatch

std::vector<std::string> experiment_ids() {
    return {"thm2.1", "cor2.2",  "cor2.3",   "bernstein", "remez",   "identity2.4",
            "thm3.1", "cor3.2",  "lemma4.1", "marchaud",  "jackson", "open-probe"};
}

bool is_experiment_id(const std::string& id) {
    const auto ids = experiment_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end() || id == "all";
}

std::vector<VerificationReport> run_experiment(const std::string& id, const HarnessConfig& cfg) {
    if (id == "thm2.1")
        return {check_main_equivalence(cfg.full_sweep ? MainEquivParams{} : MainEquivParams::quick(),
                                       cfg)};
    if (id == "cor2.2") return {check_derivative_chain(DerivChainParams{}, cfg)};
    if (id == "cor2.3") return {check_cor_2_3(Cor23Params{}, cfg)};
    if (id == "bernstein") {
        BernsteinParams p;
        if (!cfg.full_sweep) p.n_list = {4, 8, 16, 32};
        return {check_bernstein(p, cfg)};
    }
    if (id == "remez") {
        RemezParams p;
        if (!cfg.full_sweep) p.n_list = {8, 16, 32};
        return {check_remez(p, cfg)};
    }
    if (id == "identity2.4") return {check_identity_expansion(IdentityParams{}, cfg)};
    if (id == "thm3.1") {
        DirectInverseParams abs_params;
        DirectInverseParams pow_params;
        pow_params.func_id = "abs_power:1.5";
        if (!cfg.full_sweep) {
            abs_params.n_list = {4, 8, 16, 32};
            pow_params.n_list = {4, 8, 16, 32};
        }
        return {check_direct_inverse(abs_params, cfg), check_direct_inverse(pow_params, cfg)};
    }
    if (id == "cor3.2") {
        GammaParams pow_params;  // declared-rate comparison for |x|^1.5
        GammaParams abs_params;  // |x| has L2 rate 1 + 1/2 = 1.5 on the nose
        abs_params.func_id = "abs";
        GammaParams runge_params;
        runge_params.func_id = "runge";
        runge_params.gamma = -1.0;  // consistency-only
        return {check_gamma_equivalence(pow_params, cfg), check_gamma_equivalence(abs_params, cfg),
                check_gamma_equivalence(runge_params, cfg)};
    }
    if (id == "lemma4.1") return {check_lemma_4_1(Lemma41Params{}, cfg)};
    if (id == "marchaud") {
        MarchaudParams p;
        p.t_list = {0.05, 0.1, 0.2};
        return {check_sharp_marchaud(p, cfg)};
    }
    if (id == "jackson") return {check_sharp_jackson(JacksonParams{}, cfg)};
    if (id == "open-probe") return {probe_open_problem(ProbeParams{}, cfg)};
    throw std::invalid_argument("unknown experiment id: " + id);
}

std::vector<VerificationReport> run_all(const HarnessConfig& cfg) {
    std::vector<VerificationReport> all;
    for (const std::string& id : experiment_ids()) {
        std::vector<VerificationReport> rs = run_experiment(id, cfg);
        for (VerificationReport& r : rs) all.push_back(std::move(r));
    }
    return all;
}

} // namespace wmod
