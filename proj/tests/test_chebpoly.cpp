#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wmod/chebpoly.hpp"
#include "wmod/quadrature.hpp"
#include "wmod/weights.hpp"

using namespace wmod;

TEST_CASE("cheb_eval defining identity") {
    const double theta = 0.7;
    const ChebPoly T3 = ChebPoly::basis(3);
    CHECK(cheb_eval(T3, std::cos(theta)) == doctest::Approx(std::cos(3 * theta)).epsilon(1e-14));
    CHECK(cheb_eval(ChebPoly::zero(), 0.3) == 0.0);
}

TEST_CASE("cheb_eval vs monomial oracle") {
    const ChebPoly P = random_poly(13, 123);
    const std::vector<double> mono = oracle::cheb_to_monomial(P.coeffs);
    for (int i = 0; i <= 100; ++i) {
        const double x = -1.0 + 2.0 * i / 100;
        CHECK(cheb_eval(P, x) == doctest::Approx(oracle::horner(mono, x)).epsilon(1e-11));
    }
}

TEST_CASE("cheb_derivative basics") {
    // d/dx T_2 = 4x = 4 T_1
    ChebPoly d = cheb_derivative(ChebPoly::basis(2));
    REQUIRE(d.degree() == 1);
    CHECK(d.coeffs[0] == doctest::Approx(0.0));
    CHECK(d.coeffs[1] == doctest::Approx(4.0));
    // exhausting the degree gives the zero polynomial
    CHECK(cheb_derivative(random_poly(5, 7), 9).is_zero());
    CHECK(cheb_derivative(ChebPoly::constant(3.0)).is_zero());
}

TEST_CASE("cheb_derivative vs finite differences") {
    const ChebPoly P = random_poly(10, 99);
    const ChebPoly d3 = cheb_derivative(P, 3);
    auto f = [&](double x) { return cheb_eval(P, x); };
    for (int i = 1; i <= 20; ++i) {
        const double x = -0.7 + 1.4 * i / 21;
        const double fd = oracle::finite_difference(f, x, 3, 3e-4);
        CHECK(cheb_eval(d3, x) == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("cheb_derivative is linear and commutes with scaling") {
    const ChebPoly P = random_poly(9, 5), Q = random_poly(9, 6);
    const ChebPoly sum = P + Q;
    const ChebPoly d_sum = cheb_derivative(sum);
    const ChebPoly d_sep = cheb_derivative(P) + cheb_derivative(Q);
    const ChebPoly d_scaled = cheb_derivative(2.5 * P);
    for (double x : {-0.7, -0.2, 0.0, 0.4, 0.9}) {
        CHECK(cheb_eval(d_sum, x) == doctest::Approx(cheb_eval(d_sep, x)).epsilon(1e-12));
        CHECK(cheb_eval(d_scaled, x) ==
              doctest::Approx(2.5 * cheb_eval(cheb_derivative(P), x)).epsilon(1e-12));
    }
}

TEST_CASE("jacobi_poly classical cases") {
    const ChebPoly J0 = jacobi_poly(0, 0.7, -0.2);
    REQUIRE(J0.degree() == 0);
    CHECK(J0.coeffs[0] == doctest::Approx(1.0));
    // alpha = beta = 0 gives Legendre: P_2 = (3x^2 - 1)/2
    const ChebPoly P2 = jacobi_poly(2, 0.0, 0.0);
    for (double x : {-0.9, -0.3, 0.1, 0.6, 1.0})
        CHECK(cheb_eval(P2, x) == doctest::Approx(0.5 * (3 * x * x - 1)).epsilon(1e-13));
}

TEST_CASE("jacobi_poly quadrature orthogonality") {
    const double alpha = 0.5, beta = -0.25;
    QuadratureConfig cfg;
    std::vector<ChebPoly> J;
    for (int n = 0; n <= 10; ++n) J.push_back(jacobi_poly(n, alpha, beta));
    for (int m = 0; m <= 10; ++m) {
        for (int n = m; n <= 10; ++n) {
            auto fn = [&](double x) {
                return eval_jacobi_weight(x, alpha, beta) * cheb_eval(J[static_cast<std::size_t>(m)], x) *
                       cheb_eval(J[static_cast<std::size_t>(n)], x);
            };
            const double val = integrate(fn, Interval::whole(), cfg).value;
            if (m == n)
                CHECK(val > 0.0);
            else
                CHECK(std::abs(val) < 1e-10);
        }
    }
}

TEST_CASE("jacobi_poly norm matches the closed form") {
    // ||P_n^{(a,b)}||^2_{w_{a,b}} = 2^{a+b+1}/(2n+a+b+1) G(n+a+1)G(n+b+1)/(G(n+a+b+1) n!)
    const double a = 0.5, b = -0.25;
    QuadratureConfig cfg;
    for (int n : {1, 3, 6}) {
        const ChebPoly J = jacobi_poly(n, a, b);
        auto fn = [&](double x) {
            const double v = cheb_eval(J, x);
            return eval_jacobi_weight(x, a, b) * v * v;
        };
        const double got = integrate(fn, Interval::whole(), cfg).value;
        const double expect = std::exp((a + b + 1) * std::log(2.0) - std::log(2 * n + a + b + 1) +
                                       std::lgamma(n + a + 1) + std::lgamma(n + b + 1) -
                                       std::lgamma(n + a + b + 1) - std::lgamma(n + 1.0));
        CHECK(got == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("random_poly determinism and shape") {
    const ChebPoly P1 = random_poly(12, 42, 1.5);
    const ChebPoly P2 = random_poly(12, 42, 1.5);
    CHECK(P1.coeffs == P2.coeffs);
    CHECK(random_poly(1, 3).degree() == 0);
    const ChebPoly Q = random_poly(12, 43, 1.5);
    CHECK(P1.coeffs != Q.coeffs);
    for (double c : P1.coeffs) CHECK(std::abs(c) <= 1.5);
}

TEST_CASE("random_poly coefficient statistics") {
    // empirical mean of 10^4 draws within 3 sigma of 0
    const int draws = 10000;
    double sum = 0.0;
    int count = 0;
    for (int s = 0; s < draws / 4; ++s) {
        const ChebPoly P = random_poly(4, 1000 + static_cast<std::uint64_t>(s));
        for (double c : P.coeffs) {
            sum += c;
            ++count;
        }
    }
    const double mean = sum / count;
    const double sigma = 1.0 / std::sqrt(3.0) / std::sqrt(static_cast<double>(count));
    CHECK(std::abs(mean) < 3.0 * sigma);
}

TEST_CASE("membership helper") {
    CHECK(random_poly(8, 1).in_Pn(8));
    CHECK_FALSE(random_poly(9, 1).in_Pn(8));
}
