#include <doctest.h>

#include <cmath>

#include "wmod/harness.hpp"
#include "wmod/report.hpp"

using namespace wmod;

namespace {

HarnessConfig tiny_config() {
    HarnessConfig cfg;
    cfg.seed = 7;
    cfg.threads = 2;
    return cfg;
}

} // namespace

TEST_CASE("main equivalence on a tiny sweep") {
    MainEquivParams params;
    params.p_list = {2.0, kInfP};
    params.weights_finite = {{0.0, 0.0}};
    params.weights_inf = {{0.0, 0.0}};
    params.k_list = {1, 2};
    params.r_list = {0};
    params.n_list = {4, 8};
    params.num_seeds = 2;
    const VerificationReport rep = check_main_equivalence(params, tiny_config());
    CHECK(rep.verdict == "pass");
    CHECK(rep.experiment_id == "thm2.1");
    CHECK(!rep.rows.empty());
    bool has_stability = false;
    for (const auto& row : rep.rows) has_stability |= row.quantity.rfind("stability:", 0) == 0;
    CHECK(has_stability);
}

TEST_CASE("annihilation rows appear for degree-deficient instances") {
    MainEquivParams params;
    params.p_list = {2.0};
    params.weights_finite = {{0.0, 0.0}};
    params.k_list = {3};
    params.r_list = {1};
    params.n_list = {4};  // degree 3 < k + r = 4
    params.num_seeds = 1;
    const VerificationReport rep = check_main_equivalence(params, tiny_config());
    CHECK(rep.verdict == "pass");
    REQUIRE(!rep.rows.empty());
    for (const auto& row : rep.rows) {
        CHECK(row.quantity.rfind("annihilation:", 0) == 0);
        CHECK(row.in_band);
    }
}

TEST_CASE("chain with m=1 matches the main equivalence omega/ref rows") {
    HarnessConfig cfg = tiny_config();
    MainEquivParams mp;
    mp.p_list = {2.0};
    mp.weights_finite = {{0.5, 0.5}};
    mp.k_list = {1};
    mp.r_list = {0};
    mp.n_list = {8};
    mp.num_seeds = 1;
    const VerificationReport a = check_main_equivalence(mp, cfg);

    DerivChainParams dp;
    dp.m_list = {1};
    dp.n_list = {8};
    dp.p_list = {2.0};
    dp.weights = {{0.5, 0.5}};
    dp.num_seeds = 1;
    const VerificationReport b = check_derivative_chain(dp, cfg);

    // both ratios are omega / (t^k ||w phi P'||) on the same instance
    double main_ratio = 0.0, chain_ratio = 0.0;
    for (const auto& row : a.rows)
        if (row.quantity == "omega/ref") main_ratio = row.ratio;
    for (const auto& row : b.rows)
        if (row.quantity == "t^-k.omega/ref") chain_ratio = row.ratio;
    REQUIRE(main_ratio > 0.0);
    CHECK(main_ratio == doctest::Approx(chain_ratio).epsilon(1e-12));
}

TEST_CASE("reports are byte-reproducible") {
    DerivChainParams dp;
    dp.m_list = {2};
    dp.n_list = {8};
    dp.p_list = {kInfP};
    dp.weights = {{0.0, 0.0}};
    dp.num_seeds = 1;
    HarnessConfig cfg = tiny_config();
    const std::string a = report_to_json(check_derivative_chain(dp, cfg));
    cfg.threads = 1;  // thread count must not affect bytes
    const std::string b = report_to_json(check_derivative_chain(dp, cfg));
    CHECK(a == b);
}

TEST_CASE("identity expansion passes for k up to 4") {
    const VerificationReport rep = check_identity_expansion(IdentityParams{}, tiny_config());
    CHECK(rep.verdict == "pass");
    int slope_rows = 0;
    for (const auto& row : rep.rows)
        if (row.quantity == "remainder-slope") {
            ++slope_rows;
            CHECK(std::abs(row.lhs - row.rhs) <= 0.1);
        }
    CHECK(slope_rows == 4);
}

TEST_CASE("probe is informational") {
    ProbeParams params;
    params.t_list = {0.0125};
    const VerificationReport rep = probe_open_problem(params, tiny_config());
    CHECK(rep.verdict == "informational");
    CHECK(rep.passed());
}

TEST_CASE("empirical constants are independent of the verdict band") {
    MainEquivParams params;
    params.p_list = {2.0};
    params.weights_finite = {{0.0, 0.0}};
    params.k_list = {1};
    params.r_list = {0};
    params.n_list = {8};
    params.num_seeds = 1;
    HarnessConfig narrow = tiny_config();
    HarnessConfig wide = tiny_config();
    wide.band = Band{0.001, 1000.0};
    const VerificationReport a = check_main_equivalence(params, narrow);
    const VerificationReport b = check_main_equivalence(params, wide);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].ratio == b.rows[i].ratio);
}

TEST_CASE("dispatch ids") {
    CHECK(is_experiment_id("thm2.1"));
    CHECK(is_experiment_id("all"));
    CHECK_FALSE(is_experiment_id("bogus"));
    CHECK(experiment_ids().size() == 12);
    CHECK_THROWS_AS(run_experiment("bogus", tiny_config()), std::invalid_argument);
}
