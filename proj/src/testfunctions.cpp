#include "wmod/testfunctions.hpp"

#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>

namespace wmod {

TestFunction test_function_from_poly(std::string id, const ChebPoly& poly) {
    // All derivatives up to exhaustion, computed once.
    auto derivs = std::make_shared<std::vector<ChebPoly>>();
    derivs->push_back(poly);
    while (!derivs->back().is_zero()) derivs->push_back(cheb_derivative(derivs->back()));

    TestFunction f;
    f.id = std::move(id);
    f.max_derivative_order = 64;
    f.endpoint_exponents = {0.0, 0.0};
    f.eval_deriv = [derivs](double x, int order) {
        if (order >= static_cast<int>(derivs->size())) return 0.0;
        return cheb_eval((*derivs)[static_cast<std::size_t>(order)], x);
    };
    return f;
}

namespace {

TestFunction make_exp() {
    TestFunction f;
    f.id = "exp";
    f.max_derivative_order = 64;
    f.eval_deriv = [](double x, int) { return std::exp(x); };
    return f;
}

TestFunction make_xsq() { return test_function_from_poly("xsq", ChebPoly({0.5, 0.0, 0.5})); }

TestFunction make_abs_power(double gamma) {
    if (gamma <= 0.0) throw std::invalid_argument("abs_power: gamma must be positive");
    TestFunction f;
    f.id = "abs_power:" + std::to_string(gamma);
    // Highest order whose derivative is still continuous at 0.
    f.max_derivative_order = std::max(0, static_cast<int>(std::ceil(gamma)) - 1);
    f.eval_deriv = [gamma](double x, int order) {
        double c = 1.0;
        for (int i = 0; i < order; ++i) c *= gamma - i;
        const double a = std::abs(x);
        if (a == 0.0) return gamma - order > 0.0 ? 0.0 : c;  // c only when all powers consumed
        double v = c * std::pow(a, gamma - order);
        if (order % 2 != 0 && x < 0.0) v = -v;
        return v;
    };
    return f;
}

TestFunction make_abs() {
    TestFunction f = make_abs_power(1.0);
    f.id = "abs";
    f.max_derivative_order = 0;
    return f;
}

TestFunction make_runge() {
    TestFunction f;
    f.id = "runge";
    f.max_derivative_order = 16;
    // 1/(1+25x^2) = Re[ 1/(1 - 5ix) ]; the m-th derivative is
    // m! Re[(5i)^m (1-5ix)^{-m-1}].
    f.eval_deriv = [](double x, int order) {
        const std::complex<double> i5(0.0, 5.0);
        std::complex<double> base = 1.0 / (1.0 - i5 * x);
        std::complex<double> v = base;
        double fact = 1.0;
        for (int m = 1; m <= order; ++m) {
            fact *= m;
            v *= i5 * base;
        }
        return fact * v.real();
    };
    return f;
}

TestFunction make_endpoint_singular(double gamma) {
    if (gamma <= 0.0) throw std::invalid_argument("endpoint_singular: gamma must be positive");
    TestFunction f;
    f.id = "endpoint_singular:" + std::to_string(gamma);
    f.max_derivative_order = 8;
    f.endpoint_exponents = {-gamma, 0.0};
    f.eval_deriv = [gamma](double x, int order) {
        double c = 1.0;
        for (int i = 0; i < order; ++i) c *= gamma + i;
        const double base = std::max(1.0 - x, 5e-324);
        return c * std::pow(base, -gamma - order);
    };
    return f;
}

} // namespace

TestFunction make_test_function(const std::string& id) {
    if (id == "exp") return make_exp();
    if (id == "xsq") return make_xsq();
    if (id == "abs") return make_abs();
    if (id == "runge") return make_runge();

    const auto colon = id.find(':');
    const std::string head = id.substr(0, colon);
    if (head == "abs_power" && colon != std::string::npos) {
        TestFunction f = make_abs_power(std::stod(id.substr(colon + 1)));
        f.id = id;
        return f;
    }
    if (head == "endpoint_singular" && colon != std::string::npos) {
        TestFunction f = make_endpoint_singular(std::stod(id.substr(colon + 1)));
        f.id = id;
        return f;
    }
    if (head == "randpoly" && colon != std::string::npos) {
        const auto colon2 = id.find(':', colon + 1);
        if (colon2 == std::string::npos) throw std::invalid_argument("randpoly wants randpoly:<n>:<seed>");
        const int n = std::stoi(id.substr(colon + 1, colon2 - colon - 1));
        const auto seed = static_cast<std::uint64_t>(std::stoll(id.substr(colon2 + 1)));
        return test_function_from_poly(id, random_poly(n, seed));
    }
    throw std::invalid_argument("unknown test function id: " + id);
}

std::vector<std::string> registry_sample_ids() {
    return {"xsq", "exp", "abs", "runge", "abs_power:1.5", "abs_power:2.5",
            "endpoint_singular:0.5", "randpoly:8:42"};
}

} // namespace wmod
