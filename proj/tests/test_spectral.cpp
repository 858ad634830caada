#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rsiss/beam.hpp"
#include "rsiss/phi_functions.hpp"
#include "rsiss/spectral.hpp"

using namespace rsiss;

namespace {

Spectrum spectrum_of(std::initializer_list<Complex> ev) {
    Spectrum s;
    s.eigenvalues.resize(static_cast<Eigen::Index>(ev.size()));
    Eigen::Index i = 0;
    for (const Complex& z : ev)
        s.eigenvalues[i++] = z;
    return s;
}

}  // namespace

TEST_CASE("growth bound") {
    CHECK(growth_bound(spectrum_of({-1.0})) == -1.0);
    CHECK(growth_bound(beam::beam_system(2.0, 16).spectrum) ==
          doctest::Approx(-(2.0 - std::sqrt(3.0)) * pi * pi).epsilon(1e-14));
    CHECK(growth_bound(beam::beam_system(0.5, 16).spectrum) == doctest::Approx(-pi * pi / 2).epsilon(1e-14));

    Spectrum s = spectrum_of({-3.0, -5.0});
    s.declared_tail_bound = -2.0;
    CHECK(growth_bound(s) == -2.0);
    CHECK_THROWS_AS(growth_bound(Spectrum{}), DomainError);
}

TEST_CASE("parabolicity ratio") {
    CHECK(parabolicity_ratio(beam::beam_system(2.0, 16).spectrum).value() == doctest::Approx(1.0));
    CHECK(parabolicity_ratio(beam::beam_system(0.5, 16).spectrum).value() == doctest::Approx(2.0));
    CHECK(parabolicity_ratio(spectrum_of({Complex(-1, 1)})).value() == doctest::Approx(std::sqrt(2.0)));
    CHECK(parabolicity_ratio(spectrum_of({Complex(0, 1), -1.0})).is_infinite());

    // invariant under positive real scaling
    Spectrum s = spectrum_of({Complex(-1, 3), Complex(-4, 1), Complex(-0.5, -2)});
    const double z = parabolicity_ratio(s).value();
    for (double scale : {1e-3, 0.7, 13.0, 1e4}) {
        Spectrum t = s;
        t.eigenvalues *= scale;
        CHECK(parabolicity_ratio(t).value() == doctest::Approx(z).epsilon(1e-14));
    }
}

TEST_CASE("constraint verdict") {
    for (double alpha : {0.3, 0.5, 2.0, 5.0}) {
        const ConstraintVerdict v = check_constraints(beam::beam_system(alpha, 32).spectrum);
        REQUIRE(v.passes);
        CHECK(v.kappa0 > 0.0);
        const auto ev = beam::beam_system(alpha, 32).spectrum.eigenvalues;
        CHECK(ev.real().maxCoeff() <= -v.kappa0 + 1e-12);
    }
    CHECK_FALSE(check_constraints(spectrum_of({Complex(0, 2), -1.0})).passes);
    CHECK_FALSE(check_constraints(spectrum_of({0.5, -1.0})).passes);
}

TEST_CASE("simple spectrum") {
    CHECK_NOTHROW(require_simple(spectrum_of({-1.0, -2.0, Complex(-1, 1)})));
    CHECK_THROWS_AS(require_simple(spectrum_of({-1.0, -2.0, -1.0})), DomainError);
}

TEST_CASE("relaxed sum") {
    const Spectrum s = spectrum_of({-1.0, -4.0, Complex(-2, 2)});
    CHECK(relaxed_constraint_sum(s, Eigen::VectorXcd::Zero(3)).sum == 0.0);

    // lambda_n = -n^2 (1 +- 3i), b = 1/n: terms 10/n^2
    const int N = 2000;
    Spectrum g;
    g.eigenvalues.resize(N);
    Eigen::VectorXcd b(N);
    for (int n = 1; n <= N; ++n) {
        g.eigenvalues[n - 1] = -double(n) * n * Complex(1.0, n % 2 ? 3.0 : -3.0);
        b[n - 1] = 1.0 / n;
    }
    double expect = 0.0;
    for (int n = N; n >= 1; --n)
        expect += 10.0 / (double(n) * n);
    const RelaxedSum r = relaxed_constraint_sum(g, b);
    CHECK(r.sum == doctest::Approx(expect).epsilon(1e-13));
    CHECK(r.sum < 10.0 * pi * pi / 6.0);

    // beam alpha = 2, channel 1, N = 1000: finite, tail shrinking like 1/n
    const SystemDefinition beam = beam::beam_system(2.0, 1000);
    const RelaxedSum rb = relaxed_constraint_sum(beam.spectrum, beam.b.col(0));
    CHECK(std::isfinite(rb.sum));
    CHECK(rb.relative_increment() < 0.05);
    const RelaxedSum half = relaxed_constraint_sum(beam::beam_system(2.0, 500).spectrum,
                                                   beam::beam_system(2.0, 500).b.col(0));
    CHECK(rb.sum - half.sum < 2e-3 * rb.sum);
}

TEST_CASE("phi functions") {
    // direct formulas away from zero
    for (Complex z : {Complex(-3.0), Complex(2.5, 1.0), Complex(-40.0, 7.0), Complex(1.2)}) {
        const auto p = phi_functions<Complex, 3>(z);
        const Complex e = std::exp(z);
        CHECK(std::abs(p[0] - e) < 1e-14 * std::abs(e));
        CHECK(std::abs(p[1] - (e - 1.0) / z) < 1e-13 * (1.0 + std::abs(p[1])));
        CHECK(std::abs(p[2] - (e - 1.0 - z) / (z * z)) < 1e-12 * (1.0 + std::abs(p[2])));
    }
    // continuity across the switch at |z| = 1
    const auto in = phi_functions<double, 3>(-0.999999);
    const auto out = phi_functions<double, 3>(-1.000001);
    for (int k = 0; k <= 3; ++k)
        CHECK(std::abs(in[k] - out[k]) < 1e-6);
    const auto zero = phi_functions<double, 3>(0.0);
    CHECK(zero[1] == doctest::Approx(1.0));
    CHECK(zero[2] == doctest::Approx(0.5));
    CHECK(zero[3] == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("exponential quadrature is exact for quadratics") {
    for (Complex lambda : {Complex(-1.0), Complex(-250.0, 40.0), Complex(-1e-6), Complex(-3e4)}) {
        const double h = 0.01;
        const auto w = exponential_quadrature_weights(lambda, h);
        auto f = [](double s) { return 1.0 - 3.0 * s + 7.0 * s * s; };
        const Complex approx = w[0] * f(0.0) + w[1] * f(0.5 * h) + w[2] * f(h);
        const Complex exact =
            oracle::simpson([&](double s) { return std::exp(lambda * (h - s)) * f(s); }, 0.0, h, 200000);
        CHECK(std::abs(approx - exact) < 1e-10 * std::abs(exact) + 1e-16);
    }
}
