#include <doctest.h>

#include <cmath>

#include "rsiss/quadrature.hpp"
#include "rsiss/types.hpp"

using namespace rsiss;

TEST_CASE("Gauss-Legendre rule") {
    for (int order : {1, 2, 5, 10, 20}) {
        const GaussLegendreRule<> rule(order);
        CHECK(rule.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
        // exact up to degree 2 order - 1
        for (int deg = 0; deg <= 2 * order - 1; ++deg) {
            double s = 0.0;
            for (int i = 0; i < order; ++i)
                s += rule.weights[i] * std::pow(rule.nodes[i], deg);
            const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
            CHECK(std::abs(s - exact) < 1e-13);
        }
    }
    CHECK_THROWS(GaussLegendreRule<>(0));
}

TEST_CASE("composite rule converges") {
    const double exact = 2.0 / pi;  // int_0^1 sin(pi x)
    double prev = 1.0;
    for (int panels : {1, 2, 4}) {
        const CompositeGaussLegendre<> q(0.0, 1.0, panels, 4);
        const double err = std::abs(q.integrate([](double x) { return std::sin(pi * x); }) - exact);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-9);
    const CompositeGaussLegendre<> q(0.0, 1.0, 64, 10);
    const Complex z = q.integrate([](double x) { return Complex(std::cos(40 * x), x * x); });
    CHECK(std::abs(z - Complex(std::sin(40.0) / 40.0, 1.0 / 3.0)) < 1e-13);
    CHECK_THROWS(CompositeGaussLegendre<>(1.0, 0.0, 4));
}
