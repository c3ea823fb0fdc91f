#include <doctest.h>

#include <cmath>

#include "wmod/kfunctional.hpp"
#include "wmod/moduli.hpp"

using namespace wmod;

TEST_CASE("k_functional vanishes when f is a low-degree polynomial") {
    // degree <= k+r-1 makes g = f a perfect competitor
    const TestFunction f = test_function_from_poly("p", random_poly(2, 99));
    const KFunctionalResult res = k_functional(f, 2, 0, 0.1, WeightSpec{0.0, 0.0, 2.0});
    CHECK(res.value <= 1e-12);
    CHECK(res.used_f_itself);
}

TEST_CASE("k_functional bounded by the g = f candidate") {
    QuadratureConfig cfg;
    const TestFunction f = make_test_function("exp");
    const WeightSpec w{0.0, 0.0, 2.0};
    for (double t : {0.05, 0.2}) {
        const KFunctionalResult res = k_functional(f, 2, 0, t, w);
        auto f2 = [&](double x) { return f.derivative(x, 2); };
        auto wphi2 = [](double x) { return 1.0 - x * x; };
        const double self =
            t * t * weighted_lp_norm(f2, wphi2, 2.0, Interval::whole(), cfg).value;
        CHECK(res.value <= self + 1e-9);
        CHECK(res.value >= 0.0);
    }
}

TEST_CASE("k_functional saturates for large t") {
    // as t grows the t-free term of the best polynomial bounds the value
    const TestFunction f = make_test_function("exp");
    const WeightSpec w{0.0, 0.0, 2.0};
    const double v1 = k_functional(f, 2, 0, 1.0, w, 24).value;
    const double v2 = k_functional(f, 2, 0, 4.0, w, 24).value;
    CHECK(v2 <= 10.0 * std::max(v1, 1e-8));  // bounded growth, not t^k growth
    CHECK(v2 < 1.0);  // far below t^k ||w phi^2 f''|| ~ 30
}

TEST_CASE("k_functional within the equivalence band of the modulus") {
    const TestFunction f = make_test_function("exp");
    const WeightSpec w{0.0, 0.0, 2.0};
    for (double t : {0.05, 0.1}) {
        const double K = k_functional(f, 2, 0, t, w).value;
        ModulusRequest req;
        req.kind = ModulusKind::omega;
        req.k = 2;
        req.r = 0;
        req.t = t;
        req.weight = w;
        const double om = modulus([&](double x) { return f(x); }, req).value;
        CHECK(K / om > 1.0 / 20.0);
        CHECK(K / om < 20.0);
    }
}

TEST_CASE("k_functional at p != 2 refines the L2 start") {
    const TestFunction f = make_test_function("exp");
    const KFunctionalResult res = k_functional(f, 1, 0, 0.1, WeightSpec{0.0, 0.0, 3.0}, 12);
    CHECK(res.value > 0.0);
    CHECK_FALSE(res.warning);
}

TEST_CASE("k_functional argument validation") {
    const TestFunction f = make_test_function("exp");
    CHECK_THROWS_AS(k_functional(f, 0, 0, 0.1, WeightSpec{0.0, 0.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(k_functional(f, 1, 0, 0.1, WeightSpec{0.0, 0.0, 0.5}), std::invalid_argument);
    const TestFunction a = make_test_function("abs");  // no declared derivatives
    CHECK_THROWS_AS(k_functional(a, 1, 1, 0.1, WeightSpec{0.0, 0.0, 2.0}), std::invalid_argument);
}
