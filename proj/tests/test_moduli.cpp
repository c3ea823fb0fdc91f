#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wmod/moduli.hpp"
#include "wmod/chebpoly.hpp"
#include "wmod/testfunctions.hpp"

using namespace wmod;

namespace {

ModulusRequest req(ModulusKind kind, int k, int r, double t, double alpha, double beta, double p,
                   double A = 1.0) {
    ModulusRequest m;
    m.kind = kind;
    m.k = k;
    m.r = r;
    m.t = t;
    m.A = A;
    m.weight = WeightSpec{alpha, beta, p};
    return m;
}

} // namespace

TEST_CASE("symmetric difference exact cases") {
    auto cube = [](double x) { return x * x * x; };
    for (double h : {0.01, 0.1, 0.3})
        CHECK(symmetric_difference(cube, 3, h, 0.0, Interval::whole()) ==
              doctest::Approx(6.0 * h * h * h).epsilon(1e-12));
    auto c5 = [](double) { return 5.0; };
    for (int k : {1, 2, 3, 4})
        CHECK(symmetric_difference(c5, k, 0.05, 0.2, Interval::whole()) ==
              doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("symmetric difference matches the direct-summation oracle") {
    auto f = [](double x) { return std::exp(x); };
    const double got = symmetric_difference(f, 2, 0.01, 0.3, Interval::whole());
    const double want = oracle::symmetric_difference_direct(f, 2, 0.01, 0.3);
    CHECK(got == doctest::Approx(want).epsilon(1e-15));
}

TEST_CASE("symmetric difference restriction to S") {
    auto f = [](double x) { return x; };
    // stencil [0.35, 0.45] leaves S = [0, 0.4]
    CHECK(symmetric_difference(f, 2, 0.05, 0.4, Interval(0.0, 0.4)) == 0.0);
    CHECK(symmetric_difference(f, 2, 0.05, 0.3, Interval(0.0, 0.4)) ==
          doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("phi step difference") {
    auto sq = [](double x) { return x * x; };
    SUBCASE("exact second difference of x^2") {
        for (double h : {0.05, 0.2}) {
            const Interval D = domain_D(2.0 * h);
            for (double x : {0.0, 0.3, -0.5}) {
                REQUIRE(D.contains(x));
                const double phi2 = 1.0 - x * x;
                CHECK(phi_step_difference(sq, 2, h, x) ==
                      doctest::Approx(2.0 * h * h * phi2).epsilon(1e-11));
            }
        }
    }
    SUBCASE("vanishes at the endpoints and outside D_{kh}") {
        CHECK(phi_step_difference(sq, 2, 0.1, 1.0) == 0.0);
        CHECK(phi_step_difference(sq, 2, 0.1, -1.0) == 0.0);
        const Interval D = domain_D(0.2);
        const double outside = D.hi + 0.5 * (1.0 - D.hi);
        CHECK(phi_step_difference(sq, 2, 0.1, outside) == 0.0);
    }
    SUBCASE("boundary consistency vs containment scan") {
        const int k = 2;
        const double h = 0.1;
        const Interval D = domain_D(k * h);
        for (int i = 0; i <= 4000; ++i) {
            const double x = D.hi - 2e-4 + 4e-4 * i / 4000;  // straddles the edge
            if (std::abs(x) > 1.0) continue;
            const bool in = phi_step_difference(sq, k, h, x) != 0.0;
            const double span = 0.5 * k * h * eval_phi(x);
            const bool should = x - span >= -1.0 && x + span <= 1.0;
            CHECK(in == should);
        }
    }
}

TEST_CASE("modulus annihilation") {
    const ChebPoly P = random_poly(2, 17, 2.0);  // degree 1
    auto fn = [P](double x) { return cheb_eval(P, x); };
    for (ModulusKind kind : {ModulusKind::omega, ModulusKind::psi, ModulusKind::mainpart,
                             ModulusKind::mainpart_unrestricted}) {
        const NormResult res = modulus(fn, req(kind, 2, 0, 0.1, 0.0, 0.0, 2.0));
        CHECK(res.value <= 1e-12);
    }
}

TEST_CASE("modulus closed form: omega_2(x^2, t) at p=inf is 2t^2") {
    const TestFunction xsq = make_test_function("xsq");
    auto fn = [xsq](double x) { return xsq(x); };
    for (double t : {0.05, 0.1, 0.2}) {
        const NormResult res = modulus(fn, req(ModulusKind::omega, 2, 0, t, 0.0, 0.0, kInfP));
        CHECK(res.value == doctest::Approx(2.0 * t * t).epsilon(1e-6));
    }
}

TEST_CASE("modulus kind orderings") {
    const ChebPoly P = random_poly(8, 3141);
    auto fn = [P](double x) { return cheb_eval(P, x); };
    const double t = 0.05;
    for (double p : {1.0, 2.0}) {
        const double om = modulus(fn, req(ModulusKind::omega, 2, 0, t, 0.25, 0.5, p)).value;
        const double ps = modulus(fn, req(ModulusKind::psi, 2, 0, t, 0.25, 0.5, p)).value;
        CHECK(om <= ps * (1.0 + 1e-9));

        const double mp = modulus(fn, req(ModulusKind::mainpart, 2, 0, t, 0.25, 0.5, p, 4.0)).value;
        const double mpu =
            modulus(fn, req(ModulusKind::mainpart_unrestricted, 2, 0, t, 0.25, 0.5, p, 4.0)).value;
        CHECK(mp <= mpu * (1.0 + 1e-9));

        // unrestricted at A' = 2 max(A, k^2) sits below restricted at A
        // (different integration intervals, so quadrature-level slack)
        const double mpu_Ap =
            modulus(fn, req(ModulusKind::mainpart_unrestricted, 2, 0, t, 0.25, 0.5, p, 8.0)).value;
        CHECK(mpu_Ap <= mp * (1.0 + 1e-5));

        // A <= k^2/4 makes the unrestricted main part equal psi
        const double mpu_small =
            modulus(fn, req(ModulusKind::mainpart_unrestricted, 2, 0, t, 0.25, 0.5, p, 1.0)).value;
        CHECK(mpu_small == doctest::Approx(ps).epsilon(1e-5));
    }
}

TEST_CASE("modulus monotone in t") {
    const ChebPoly P = random_poly(6, 555);
    auto fn = [P](double x) { return cheb_eval(P, x); };
    for (ModulusKind kind : {ModulusKind::omega, ModulusKind::psi, ModulusKind::mainpart,
                             ModulusKind::mainpart_unrestricted}) {
        double prev = 0.0;
        for (double t : {0.02, 0.04, 0.08, 0.16}) {
            const double v = modulus(fn, req(kind, 2, 0, t, 0.0, 0.0, 2.0)).value;
            CHECK(v >= prev * (1.0 - 1e-6));
            prev = v;
        }
    }
}

TEST_CASE("psi modulus diverges for an endpoint-singular function") {
    const TestFunction f = make_test_function("endpoint_singular:0.5");
    auto fn = [f](double x) { return f(x); };
    const NormResult res = modulus(fn, req(ModulusKind::psi, 2, 0, 0.1, 0.25, 0.0, 2.0));
    CHECK(res.diverged);
    CHECK(res.levels_used <= 6);
    // omega of the same function stays bounded
    const NormResult om = modulus(fn, req(ModulusKind::omega, 2, 0, 0.1, 0.25, 0.0, 2.0));
    CHECK_FALSE(om.diverged);
}

TEST_CASE("request validation") {
    CHECK_THROWS_AS(modulus([](double) { return 0.0; }, req(ModulusKind::omega, 0, 0, 0.1, 0, 0, 2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(modulus([](double) { return 0.0; }, req(ModulusKind::omega, 1, 0, -0.1, 0, 0, 2)),
                    std::invalid_argument);
    // inadmissible tilted exponents: r/2 + alpha must stay admissible at p=inf
    CHECK_THROWS_AS(modulus([](double) { return 0.0; },
                            req(ModulusKind::omega, 1, 0, 0.1, -0.2, 0.0, kInfP)),
                    std::invalid_argument);
    CHECK(to_string(ModulusKind::mainpart_unrestricted) == std::string("mainpart-unrestricted"));
    CHECK(modulus_kind_from_string("psi") == ModulusKind::psi);
    CHECK_THROWS_AS(modulus_kind_from_string("bogus"), std::invalid_argument);
}

TEST_CASE("hgrid layout") {
    HGrid g;
    const auto pts = g.points(0.4);
    REQUIRE(static_cast<int>(pts.size()) == g.count);
    CHECK(pts.back() == 0.4);
    CHECK(pts.front() == doctest::Approx(0.4 / 1024));
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i] > pts[i - 1]);
    HGrid u;
    u.layout = HGrid::Layout::uniform;
    u.count = 10;
    const auto up = u.points(1.0);
    CHECK(up.front() == doctest::Approx(0.1));
    CHECK(up.back() == doctest::Approx(1.0));
    HGrid bad;
    bad.count = 4;
    CHECK_THROWS_AS(bad.points(0.1), std::invalid_argument);
}
