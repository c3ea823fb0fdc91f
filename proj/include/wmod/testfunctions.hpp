#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "wmod/chebpoly.hpp"

namespace wmod {

/// A function on (-1,1) with analytic derivatives up to a declared order and
/// endpoint-singularity exponents (behavior like (1-x)^e at +1 and (1+x)^e
/// at -1) recorded for quadrature grading decisions.
struct TestFunction {
    std::string id;
    int max_derivative_order = 0;
    std::pair<double, double> endpoint_exponents{0.0, 0.0};  // at +1, at -1
    std::function<double(double, int)> eval_deriv;           // (x, order)

    double operator()(double x) const { return eval_deriv(x, 0); }
    double derivative(double x, int order) const { return eval_deriv(x, order); }
    bool has_derivative(int order) const { return order <= max_derivative_order; }
};

/// Wrap a polynomial; derivatives are exact (precomputed coefficient
/// recurrences), declared order unbounded in practice.
TestFunction test_function_from_poly(std::string id, const ChebPoly& poly);

/// Parse a registry id:
///   xsq | exp | abs | runge | abs_power:<gamma> | endpoint_singular:<gamma>
///   | randpoly:<n>:<seed>
TestFunction make_test_function(const std::string& id);

/// Ids instantiating every registry family (used by self-tests).
std::vector<std::string> registry_sample_ids();

} // namespace wmod
