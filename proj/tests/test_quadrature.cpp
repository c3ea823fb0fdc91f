#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wmod/chebpoly.hpp"
#include "wmod/quadrature.hpp"
#include "wmod/weights.hpp"

using namespace wmod;

namespace {
const RealFn kUnit = [](double) { return 1.0; };
}

TEST_CASE("weighted_lp_norm closed forms") {
    QuadratureConfig cfg;
    CHECK(weighted_lp_norm(kUnit, kUnit, 2.0, Interval::whole(), cfg).value ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(weighted_lp_norm([](double x) { return x; }, kUnit, 2.0, Interval::whole(), cfg).value ==
          doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("weighted_lp_norm endpoint singular integrand") {
    // |(1-x)^{0.5} (1-x)^{-0.4}|^2 integrates to 2^{1.2}/1.2 (frozen oracle)
    QuadratureConfig cfg;
    auto g = [](double x) { return std::pow(1.0 - x, -0.4); };
    auto w = [](double x) { return eval_jacobi_weight(x, 0.5, 0.0); };
    const NormResult res = weighted_lp_norm(g, w, 2.0, Interval::whole(), cfg);
    CHECK_FALSE(res.diverged);
    CHECK(res.value == doctest::Approx(1.3836535904367074196).epsilon(1e-9));
}

TEST_CASE("weighted_lp_norm flags a genuinely divergent integrand") {
    QuadratureConfig cfg;
    auto g = [](double x) { return std::pow(std::max(1.0 - x, 5e-324), -0.75); };
    const NormResult res = weighted_lp_norm(g, kUnit, 2.0, Interval::whole(), cfg);
    CHECK(res.diverged);
    CHECK(res.levels_used <= cfg.max_refinements);
}

TEST_CASE("weighted_lp_norm rejects bad p") {
    QuadratureConfig cfg;
    CHECK_THROWS_AS(weighted_lp_norm(kUnit, kUnit, 0.0, Interval::whole(), cfg),
                    std::invalid_argument);
    CHECK_THROWS_AS(weighted_lp_norm(kUnit, kUnit, -1.0, Interval::whole(), cfg),
                    std::invalid_argument);
}

TEST_CASE("quadrature config validation") {
    QuadratureConfig cfg;
    cfg.target_rel_err = 1e-14;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.grading_ratio = 1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("sup_norm basics") {
    QuadratureConfig cfg;
    CHECK(sup_norm([](double x) { return x * x; }, kUnit, Interval::whole(), cfg).value ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sup_norm([](double x) { return eval_phi(x); }, kUnit, Interval::whole(), cfg).value ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sup_norm vs dense scan oracle") {
    QuadratureConfig cfg;
    const ChebPoly T8 = ChebPoly::basis(8);
    auto w = [](double x) { return eval_jacobi_weight(x, 0.5, 0.5); };
    auto g = [&](double x) { return cheb_eval(T8, x); };
    const double got = sup_norm(g, w, Interval::whole(), cfg).value;
    const double want = oracle::scan_max([&](double x) { return w(x) * g(x); }, -1.0, 1.0, 1000000);
    CHECK(got == doctest::Approx(want).epsilon(1e-10));
    CHECK(got >= want - 1e-12);  // the refined value may only exceed the scan
}

TEST_CASE("norm homogeneity") {
    QuadratureConfig cfg;
    const ChebPoly P = random_poly(9, 31);
    auto w = [](double x) { return eval_jacobi_weight(x, 0.5, 0.0); };
    for (double p : {0.5, 1.0, 2.0, kInfP}) {
        const double base = weighted_lp_norm([&](double x) { return cheb_eval(P, x); }, w, p,
                                             Interval::whole(), cfg)
                                .value;
        for (double c : {2.0, 10.0, -3.0}) {
            const double scaled = weighted_lp_norm([&](double x) { return c * cheb_eval(P, x); },
                                                   w, p, Interval::whole(), cfg)
                                      .value;
            CHECK(scaled == doctest::Approx(std::abs(c) * base).epsilon(1e-10));
        }
    }
}

TEST_CASE("interval monotonicity") {
    QuadratureConfig cfg;
    const ChebPoly P = random_poly(7, 77);
    auto g = [&](double x) { return cheb_eval(P, x); };
    const double inner = weighted_lp_norm(g, kUnit, 2.0, Interval(-0.5, 0.7), cfg).value;
    const double outer = weighted_lp_norm(g, kUnit, 2.0, Interval::whole(), cfg).value;
    CHECK(inner <= outer + 1e-12);
}

TEST_CASE("refinement consistency on a smooth integrand") {
    QuadratureConfig coarse;
    coarse.max_refinements = 0;
    QuadratureConfig fine;
    fine.max_refinements = 1;
    fine.target_rel_err = 1e-13;
    auto g = [](double x) { return std::exp(x); };
    auto w = [](double x) { return eval_jacobi_weight(x, 0.5, 0.25); };
    const NormResult a = weighted_lp_norm(g, w, 2.0, Interval::whole(), coarse);
    const NormResult b = weighted_lp_norm(g, w, 2.0, Interval::whole(), fine);
    CHECK(std::abs(a.value - b.value) <=
          2.0 * std::max(b.rel_err_estimate, 1e-13) * b.value + 1e-13);
}

TEST_CASE("p -> infinity consistency") {
    QuadratureConfig cfg;
    auto g = [](double x) { return 4.0 + x; };
    const double p64 = weighted_lp_norm(g, kUnit, 64.0, Interval::whole(), cfg).value;
    const double sup = sup_norm(g, kUnit, Interval::whole(), cfg).value;
    CHECK(std::abs(p64 - sup) / sup < 0.05);
}

TEST_CASE("quasinorm triangle inequality") {
    QuadratureConfig cfg;
    auto w = [](double x) { return eval_jacobi_weight(x, 0.25, 0.0); };
    SUBCASE("equality at p=1 for equal nonnegative functions") {
        auto f = [](double x) { return 1.0 + x * x; };
        const double lhs =
            weighted_lp_norm([&](double x) { return 2.0 * f(x); }, w, 1.0, Interval::whole(), cfg)
                .value;
        const double rhs =
            2.0 * weighted_lp_norm(f, w, 1.0, Interval::whole(), cfg).value;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
        CHECK(quasinorm_triangle_check(f, f, w, 1.0, Interval::whole(), cfg));
    }
    SUBCASE("property over seeded random pairs") {
        QuadratureConfig quick = cfg;
        quick.max_refinements = 1;  // the inequality has 1e-9 slack
        for (double p : {0.5, 2.0}) {
            for (int s = 0; s < 100; ++s) {
                const ChebPoly A = random_poly(6, 9000 + static_cast<std::uint64_t>(s));
                const ChebPoly B = random_poly(6, 9500 + static_cast<std::uint64_t>(s));
                auto fa = [&](double x) { return cheb_eval(A, x); };
                auto fb = [&](double x) { return cheb_eval(B, x); };
                CHECK(quasinorm_triangle_check(fa, fb, w, p, Interval::whole(), quick));
            }
        }
    }
}

TEST_CASE("graded_grid covers the interval with positive weights") {
    std::vector<double> x, qw;
    graded_grid(Interval::whole(), 2048, 20, 0.25, x, qw);
    REQUIRE(x.size() == qw.size());
    CHECK(x.size() >= 1000);
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(qw[i] > 0.0);
        CHECK(std::abs(x[i]) < 1.0);
        total += qw[i];
    }
    CHECK(total == doctest::Approx(2.0).epsilon(1e-12));
}
