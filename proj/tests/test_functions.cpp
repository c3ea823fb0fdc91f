#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "wmod/testfunctions.hpp"

using namespace wmod;

TEST_CASE("registry parses every family") {
    for (const std::string& id : registry_sample_ids()) {
        const TestFunction f = make_test_function(id);
        CHECK(f.id == id);
        CHECK(std::isfinite(f(0.3)));
    }
    CHECK_THROWS_AS(make_test_function("nope"), std::invalid_argument);
    CHECK_THROWS_AS(make_test_function("abs_power:-1"), std::invalid_argument);
}

TEST_CASE("registry self-test: derivatives vs central differences") {
    // 50 interior points per entry, relative tolerance 1e-5.  The sample
    // window and FD step keep the oracle's own truncation/roundoff error
    // well below that for the steep registry members.
    for (const std::string& id : registry_sample_ids()) {
        const TestFunction f = make_test_function(id);
        const bool steep = id.rfind("endpoint_singular", 0) == 0 || id == "runge" ||
                           id.rfind("randpoly", 0) == 0;
        const double span = id.rfind("randpoly", 0) == 0 ? 0.85 : (steep ? 0.6 : 0.85);
        const int max_order = std::min(f.max_derivative_order, 2);
        for (int order = 1; order <= max_order; ++order) {
            auto fn = [&](double x) { return f(x); };
            for (int i = 0; i < 50; ++i) {
                const double x = -span + 2 * span * (i + 0.5) / 50;
                if (std::abs(x) < 0.05 && id.rfind("abs", 0) == 0) continue;  // stencil must not straddle the kink
                const double got = f.derivative(x, order);
                const double fd = oracle::finite_difference(fn, x, order, steep ? 7e-5 : 5e-4);
                CHECK(got == doctest::Approx(fd).epsilon(1e-5));
            }
        }
    }
}

TEST_CASE("specific values") {
    const TestFunction xsq = make_test_function("xsq");
    CHECK(xsq(0.5) == doctest::Approx(0.25));
    CHECK(xsq.derivative(0.5, 1) == doctest::Approx(1.0));
    CHECK(xsq.derivative(0.5, 2) == doctest::Approx(2.0));
    CHECK(xsq.derivative(0.5, 3) == doctest::Approx(0.0));

    const TestFunction ap = make_test_function("abs_power:1.5");
    CHECK(ap(0.0) == 0.0);
    CHECK(ap(-0.25) == doctest::Approx(std::pow(0.25, 1.5)));
    CHECK(ap.derivative(-0.25, 1) == doctest::Approx(-1.5 * std::sqrt(0.25)));
    CHECK(ap.max_derivative_order == 1);
    CHECK(make_test_function("abs_power:2.5").max_derivative_order == 2);

    const TestFunction es = make_test_function("endpoint_singular:0.5");
    CHECK(es(0.0) == doctest::Approx(1.0));
    CHECK(es(0.99) == doctest::Approx(10.0));
    CHECK(es.endpoint_exponents.first == doctest::Approx(-0.5));

    const TestFunction runge = make_test_function("runge");
    CHECK(runge(0.0) == doctest::Approx(1.0));
    CHECK(runge(0.2) == doctest::Approx(1.0 / 2.0));
    CHECK(runge.derivative(0.0, 1) == doctest::Approx(0.0));
    CHECK(runge.derivative(0.0, 2) == doctest::Approx(-50.0));
}

TEST_CASE("polynomial wrapper differentiates exactly") {
    const ChebPoly P = random_poly(7, 2024);
    const TestFunction f = test_function_from_poly("p", P);
    const ChebPoly d2 = cheb_derivative(P, 2);
    for (double x : {-0.6, 0.1, 0.8}) {
        CHECK(f(x) == doctest::Approx(cheb_eval(P, x)).epsilon(1e-15));
        CHECK(f.derivative(x, 2) == doctest::Approx(cheb_eval(d2, x)).epsilon(1e-13));
    }
    CHECK(f.derivative(0.3, 10) == 0.0);
}

TEST_CASE("randpoly registry ids are reproducible") {
    const TestFunction a = make_test_function("randpoly:8:42");
    const TestFunction b = make_test_function("randpoly:8:42");
    for (double x : {-0.4, 0.0, 0.9}) CHECK(a(x) == b(x));
}
