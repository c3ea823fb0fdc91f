#include <doctest.h>

#include "wmod/rational.hpp"

using namespace wmod;

namespace {

// Independent route: S(k, j) as the k-fold iterated first difference of the
// sequence m -> (m - k/2)^j over m = 0..k.
Rational iterated_difference(int k, int j) {
    std::vector<Rational> v;
    for (int m = 0; m <= k; ++m) v.push_back(rational_pow(Rational(2 * m - k, 2), j));
    while (v.size() > 1) {
        std::vector<Rational> next;
        for (std::size_t i = 0; i + 1 < v.size(); ++i) next.push_back(v[i + 1] - v[i]);
        v = std::move(next);
    }
    return v[0];
}

} // namespace

TEST_CASE("rational arithmetic") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(3, 6) == Rational(1, 2));
    CHECK(Rational(-4, -8) == Rational(1, 2));
    CHECK(Rational(1, 4) * Rational(2, 3) == Rational(1, 6));
    CHECK(Rational(1, 2) < Rational(2, 3));
    CHECK(rational_binomial(5, 2) == Rational(10));
    CHECK(rational_factorial(5) == Rational(120));
    CHECK(rational_pow(Rational(-3, 2), 3) == Rational(-27, 8));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("S(k,k) = k!") {
    for (int k : {1, 2, 3, 4, 5})
        CHECK(difference_expansion_coefficient(k, k) == rational_factorial(k));
}

TEST_CASE("S vanishes below k and on odd offsets") {
    for (int k = 1; k <= 5; ++k) {
        for (int j = 0; j < k; ++j) CHECK(difference_expansion_coefficient(k, j) == Rational(0));
        for (int j = k; j <= 20; ++j)
            if ((j - k) % 2 != 0) CHECK(difference_expansion_coefficient(k, j) == Rational(0));
    }
}

TEST_CASE("specific exact values") {
    CHECK(difference_expansion_coefficient(2, 3) == Rational(0));
    CHECK(difference_expansion_coefficient(2, 4) == Rational(2));
    // xi_4^2 = S(2,4) 2!/4! = 1/6
    const Rational xi4_sq = difference_expansion_coefficient(2, 4) * rational_factorial(2) /
                            rational_factorial(4);
    CHECK(xi4_sq == Rational(1, 6));
}

TEST_CASE("matches the iterated-difference route") {
    for (int k = 1; k <= 5; ++k)
        for (int j = k; j <= 12; ++j)
            CHECK(difference_expansion_coefficient(k, j) == iterated_difference(k, j));
}

TEST_CASE("xi bound: (S(k,k+2i) (2i)!/(k+2i)!)^{1/(2i)} < k/2") {
    for (int k = 1; k <= 5; ++k) {
        for (int i = 1; i <= 6; ++i) {
            const int j = k + 2 * i;
            const Rational v = difference_expansion_coefficient(k, j) * rational_factorial(2 * i) /
                               rational_factorial(j);
            // v < (k/2)^{2i}, compared exactly
            const Rational bound = rational_pow(Rational(k, 2), 2 * i);
            CHECK(v < bound);
            CHECK(Rational(0) < v);
        }
    }
}

TEST_CASE("coefficient list helper") {
    const auto S2 = difference_expansion_coefficients(2, 8);
    REQUIRE(S2.size() == 7);
    CHECK(S2[0] == Rational(2));   // S(2,2) = 2!
    CHECK(S2[2] == Rational(2));   // S(2,4)
    CHECK(S2[1] == Rational(0));
    CHECK_THROWS_AS(difference_expansion_coefficients(3, 2), std::domain_error);
}
