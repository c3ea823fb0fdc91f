#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wmod/bestapprox.hpp"
#include "wmod/chebpoly.hpp"
#include "wmod/moduli.hpp"
#include "wmod/report.hpp"
#include "wmod/testfunctions.hpp"
#include "wmod/weights.hpp"

namespace wmod {

/// Shared experiment configuration.  All sweeps derive per-instance seeds
/// deterministically from `seed`; `threads` parallelizes across parameter
/// rows only (row values are computed and stored by index, so reports are
/// identical for any thread count).
struct HarnessConfig {
    std::uint64_t seed = 7;
    int threads = 1;
    double c_t = 0.05;              // t = c_t / n step rule
    double stability_factor = 4.0;  // max/min of a ratio family
    Band band{0.05, 20.0};          // equivalence-ratio band
    QuadratureConfig quad;
    HGrid hgrid;
    int grid_size = 2048;
    bool full_sweep = false;  // acceptance-scale parameter sweeps
};

struct WeightPair {
    double alpha, beta;
};

// ---- main equivalence sweep (thm2.1) ----------------------------------------
struct MainEquivParams {
    std::vector<double> p_list{0.5, 1.0, 2.0, kInfP};
    std::vector<WeightPair> weights_finite{{0.0, 0.0}, {0.5, 0.5}, {-0.25, 0.3}};
    std::vector<WeightPair> weights_inf{{0.0, 0.0}, {0.5, 0.5}};
    std::vector<int> k_list{1, 2, 3};
    std::vector<int> r_list{0, 1};
    std::vector<int> n_list{4, 8, 16, 32, 64};
    int num_seeds = 5;
    double A = 1.0;

    static MainEquivParams quick();
};
VerificationReport check_main_equivalence(const MainEquivParams& params, const HarnessConfig& cfg);

// ---- derivative split chain (cor2.2) ----------------------------------------
struct DerivChainParams {
    std::vector<int> m_list{1, 2, 3};
    std::vector<int> n_list{8, 16};
    std::vector<double> p_list{1.0, 2.0, kInfP};
    std::vector<WeightPair> weights{{0.0, 0.0}, {0.5, 0.5}};
    int num_seeds = 2;
};
VerificationReport check_derivative_chain(const DerivChainParams& params, const HarnessConfig& cfg);

// ---- larger-step chain, t = Lambda/n, 1 <= p <= inf (cor2.3) -----------------
struct Cor23Params {
    std::vector<double> lambda_list{0.5, 1.0, 2.0};
    std::vector<int> m_list{1, 2};
    std::vector<int> n_list{8, 16, 32};
    std::vector<double> p_list{1.0, 2.0, kInfP};
    std::vector<WeightPair> weights{{0.0, 0.0}, {0.5, 0.5}};
    int num_seeds = 2;
};
VerificationReport check_cor_2_3(const Cor23Params& params, const HarnessConfig& cfg);

// ---- Bernstein-Dzyadyk inequality -----------------------------------------
struct BernsteinParams {
    std::vector<int> s_list{1, 2, 3};
    std::vector<int> n_list{4, 8, 16, 32, 64};
    std::vector<double> p_list{1.0, 2.0, kInfP};
    std::vector<WeightPair> weights{{0.0, 0.0}, {0.5, 0.5}};
    int num_seeds = 5;
    std::vector<int> identity_n_list{4, 8, 16, 32};  // ||phi T_n'||_inf = n rows
    double identity_rel_tol = 1e-10;
    double sweep_stability_factor = 2.0;
};
VerificationReport check_bernstein(const BernsteinParams& params, const HarnessConfig& cfg);

// ---- Remez-type inequality -------------------------------------------------
struct RemezParams {
    std::vector<double> a_list{0.0, 0.5, 1.0, 2.0};
    std::vector<int> n_list{8, 16, 32, 64};
    std::vector<double> p_list{1.0, 2.0, kInfP};
    std::vector<WeightPair> weights{{0.0, 0.0}, {0.5, 0.5}};
    int num_seeds = 5;
    double sweep_stability_factor = 2.0;
};
VerificationReport check_remez(const RemezParams& params, const HarnessConfig& cfg);

// ---- Expansion identity of the k-th difference -----------------------------
struct IdentityParams {
    std::vector<int> k_list{1, 2, 3, 4};
    int poly_degree = 8;  // random polynomial degree for the checks
    int samples = 20;
    double exact_tol = 1e-11;
    double slope_tol = 0.1;       // slope must be k+2 within this
    double odd_coeff_tol = 1e-9;  // fitted h^{k+1} coefficient bound
};
VerificationReport check_identity_expansion(const IdentityParams& params, const HarnessConfig& cfg);

// ---- direct + inverse best-approximation estimates (thm3.1) ------------------
struct DirectInverseParams {
    std::string func_id = "abs";
    int k = 2;
    WeightPair weight{0.0, 0.0};
    double p = 2.0;
    std::vector<int> n_list{4, 8, 16, 32, 64};
    double theta = 0.2;        // direct part compares against omega(f, theta/n)
    int inverse_base_n = 2;    // inverse sum starts at this degree
    int J = 6;                 // dyadic truncation depth
    double direct_ratio_max = 50.0;
    double inverse_C_max = 100.0;
    double jackson_C_max = 100.0;
};
VerificationReport check_direct_inverse(const DirectInverseParams& params, const HarnessConfig& cfg);

// ---- rate equivalence fits (cor3.2) ------------------------------------------
struct GammaParams {
    std::string func_id = "abs_power:1.5";
    int k = 2;
    WeightPair weight{0.0, 0.0};
    double p = 2.0;
    double gamma = 1.5;  // declared modulus rate under test
    std::vector<int> n_list{8, 12, 16, 24, 32, 48, 64};
    std::vector<double> t_list{0.01, 0.02, 0.04, 0.08, 0.16};
    double slope_tol = 0.25;
    double r2_min = 0.98;
};
VerificationReport check_gamma_equivalence(const GammaParams& params, const HarnessConfig& cfg);

// ---- K-functional vs modulus band (lemma4.1) ---------------------------------
struct Lemma41Case {
    std::string func_id;
    int k = 1, r = 0;
    WeightPair weight{0.0, 0.0};
    double p = 2.0;
};
struct Lemma41Params {
    std::vector<Lemma41Case> cases{{"randpoly:2:11", 2, 0, {0.0, 0.0}, 2.0},
                                   {"exp", 2, 0, {0.0, 0.0}, 2.0},
                                   {"abs_power:2.5", 1, 1, {0.0, 0.0}, 2.0}};
    std::vector<double> t_list{0.02, 0.05, 0.1, 0.2};
    Band band{0.05, 20.0};
    int N_max = 24;
};
VerificationReport check_lemma_4_1(const Lemma41Params& params, const HarnessConfig& cfg);

// ---- sharp Marchaud inequality (marchaud) ------------------------------------
struct MarchaudParams {
    std::string func_id = "abs_power:1.5";
    int m = 1, r = 0;
    WeightPair weight{0.0, 0.0};
    std::vector<double> p_list{1.5, 2.0, 3.0};
    std::vector<double> t_list{0.02, 0.05, 0.1, 0.2};
    int integral_nodes = 64;
    double C_max = 100.0;
};
VerificationReport check_sharp_marchaud(const MarchaudParams& params, const HarnessConfig& cfg);

// ---- Corollaries 4.5 / 4.6 sharp Jackson ------------------------------------
struct JacksonParams {
    std::string func_id = "abs_power:1.5";
    int m = 1, r = 0;
    WeightPair weight{0.0, 0.0};
    std::vector<double> p_list{1.5, 2.0, 3.0};
    std::vector<int> n_levels{3, 4, 5, 6};  // dyadic depth of the sums
    std::vector<double> t_list{0.05, 0.1, 0.2, 0.5};
    int integral_nodes = 64;
    double C_max = 100.0;
};
VerificationReport check_sharp_jackson(const JacksonParams& params, const HarnessConfig& cfg);

// ---- small-p probe (open-probe, informational) --------------------------------
struct ProbeParams {
    int k = 2;
    int n = 8;  // T_{n} family member
    std::vector<double> p_list{0.5, 1.0};
    WeightPair weight{0.0, 0.0};
    std::vector<double> t_list{0.00625, 0.0125, 0.025};
};
VerificationReport probe_open_problem(const ProbeParams& params, const HarnessConfig& cfg);

// ---- dispatch ----------------------------------------------------------------
std::vector<std::string> experiment_ids();
bool is_experiment_id(const std::string& id);
std::vector<VerificationReport> run_experiment(const std::string& id, const HarnessConfig& cfg);
std::vector<VerificationReport> run_all(const HarnessConfig& cfg);

} // namespace wmod
