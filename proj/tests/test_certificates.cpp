#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rsiss/beam.hpp"
#include "rsiss/certificates.hpp"

using namespace rsiss;

namespace {

const double r3 = std::sqrt(3.0);

// Printed closed forms of the modal certificate: {kappa0, C0, C1, C2}.
std::array<double, 4> printed_v1(double a) {
    if (a < 1.0) {
        const double q = std::sqrt((1 + a) / (1 - a));
        return {a * pi * pi, q, 2.0 / (a * r3) * q, q / (a * pi * pi)};
    }
    const double q = std::sqrt((a + 1) / (a - 1));
    const double k = (a - std::sqrt(a * a - 1)) * pi * pi;
    return {k, q, 2.0 / r3 * q, q / k};
}

double rel(double x, double y) { return std::abs(x - y) / std::abs(y); }

}  // namespace

TEST_CASE("modal certificate reproduces the beam closed forms") {
    for (double alpha : {0.3, 0.5, 2.0, 5.0}) {
        const auto p = printed_v1(alpha);
        const SystemDefinition s = beam::beam_system(alpha, 64);
        for (const ISSCertificate& c : {certificate_thm1(s), certificate_thm2(s), beam_certificates_v1(alpha)}) {
            CHECK(rel(c.kappa0, p[0]) < 1e-6);
            CHECK(rel(c.C0.value(), p[1]) < 1e-6);
            CHECK(rel(c.C1.value(), p[2]) < 1e-6);
            CHECK(rel(c.C2->value(), p[3]) < 1e-6);
        }
    }
    const ISSCertificate half = beam_certificates_v1(0.5);
    CHECK(half.C0.value() == doctest::Approx(r3));
    CHECK(half.C1.value() == doctest::Approx(4.0));
    CHECK(half.C2->value() == doctest::Approx(2 * r3 / (pi * pi)));
    CHECK(beam_certificates_v1(2.0).C1.value() == doctest::Approx(2.0));
}

TEST_CASE("modal certificate near and at alpha = 1") {
    const ISSCertificate one = beam_certificates_v1(1.0);
    CHECK(one.C0.is_infinite());
    CHECK(one.C1.is_infinite());
    CHECK_FALSE(one.is_finite());
    CHECK(beam_certificates_v1(1.0 + 1e-8).C1.value() > 1e3);
    CHECK(beam_certificates_v1(1.0 - 1e-8).C1.value() > 1e3);

    // decreasing for alpha > 1 with the printed limits
    double c0 = INFINITY, c1 = INFINITY;
    for (double a = 1.1; a < 2000; a *= 1.3) {
        const ISSCertificate c = beam_certificates_v1(a);
        CHECK(c.C0.value() < c0);
        CHECK(c.C1.value() < c1);
        c0 = c.C0.value();
        c1 = c.C1.value();
    }
    CHECK(c0 == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(c1 == doctest::Approx(2.0 / r3).epsilon(1e-3));
}

TEST_CASE("degenerate and small systems") {
    // M_R = m_R
    const SystemDefinition one = fixtures::toy_system(Eigen::VectorXcd::Constant(1, -2.0),
                                                      Eigen::VectorXcd::Constant(1, 0.5), Eigen::VectorXcd::Zero(1));
    CHECK(certificate_thm1(one).C0.value() == 1.0);

    SystemDefinition cancel = fixtures::toy_system();
    cancel.a = cancel.spectrum.eigenvalues.cwiseProduct(cancel.b.col(0));
    const ISSCertificate t2 = certificate_thm2(cancel);
    CHECK(t2.C1.value() == 0.0);
    CHECK(t2.degenerate);

    const SystemDefinition zero = fixtures::toy_system(Eigen::VectorXcd::Constant(3, -1.0) +
                                                           Eigen::VectorXcd::LinSpaced(3, 0.0, -2.0),
                                                       Eigen::VectorXcd::Zero(3), Eigen::VectorXcd::Zero(3));
    const ISSCertificate rz = certificate_relaxed(zero);
    CHECK(rz.C1.value() == 0.0);
    CHECK(rz.degenerate);

    Eigen::VectorXcd lam(2);
    lam << Complex(0.0, 1.0), -1.0;
    SystemDefinition bad = fixtures::toy_system(lam, Eigen::VectorXcd::Ones(2), Eigen::VectorXcd::Zero(2));
    CHECK_THROWS_AS(certificate_thm1(bad), CertificateUnavailable);
    CHECK_THROWS_AS(certificate_thm2(bad), CertificateUnavailable);
}

TEST_CASE("thm2 scales with the stationary energy") {
    SystemDefinition s = fixtures::toy_system();
    s.a = Eigen::VectorXcd::Constant(s.modes(), Complex(0.3, 0.1));
    const double c1 = certificate_thm2(s).C1.value();
    SystemDefinition twice = s;
    twice.b *= 2.0;
    twice.a *= 2.0;
    CHECK(certificate_thm2(twice).C1.value() == doctest::Approx(2.0 * c1));
    CHECK(stationary_norm(twice, 0) == doctest::Approx(2.0 * stationary_norm(s, 0)));
}

TEST_CASE("relaxed certificate") {
    // six modes say nothing about a tail; accept any finite sum here
    const SystemDefinition s = fixtures::toy_system();
    CHECK_THROWS_AS(certificate_relaxed(s), CertificateUnavailable);
    const ISSCertificate r = certificate_relaxed(s, RelaxedOptions{1.0});
    CHECK(r.C1.value() >= 0.0);
    CHECK_NOTHROW(certificate_thm1(s));

    const SystemDefinition beam = beam::beam_system(2.0, 1000);
    const double c1r = certificate_relaxed(beam).C1.value();
    const double c1 = certificate_thm1(beam).C1.value();
    CHECK(std::abs(c1r - c1) <= 0.25 * c1);
}

TEST_CASE("tight C2") {
    for (double alpha : {1.5, 2.0, 10.0}) {
        const TightC2 t = beam_c2_tight(alpha, 500);
        const double closed = std::sqrt(alpha / (alpha - 1)) / (3 * std::sqrt(10.0));
        CHECK(rel(t.closed_form, closed) < 1e-14);
        CHECK(rel(t.series, closed) < 1e-6);

        // the same series from the printed adjoint eigenvectors
        double sum = 0.0;
        for (int n = 500; n >= 1; --n)
            for (int eps : {+1, -1}) {
                const oracle::PrintedMode m = oracle::printed_mode(alpha, n, eps);
                sum += 0.5 * m.psi_amp * m.psi_amp;
            }
        CHECK(rel(t.series, std::sqrt((1 + 1 / alpha) * sum)) < 1e-12);
    }
    CHECK(rel(beam_c2_tight(2.0, 200).series, beam_c2_tight(2.0, 200).closed_form) < 1e-6);
    CHECK(rel(beam_c2_tight(1e8, 10).closed_form, 1 / (3 * std::sqrt(10.0))) < 1e-7);
    CHECK_THROWS_AS(beam_c2_tight(0.5, 10), DomainError);
}

TEST_CASE("block certificate") {
    const ISSCertificate one = beam_certificates_v2(1.0);
    CHECK(one.C1.value() == doctest::Approx(16 / r3).epsilon(1e-14));
    CHECK(one.kappa0 == doctest::Approx(0.5 * pi * pi));
    CHECK_FALSE(one.C2.has_value());
    // both branch formulas meet at alpha = 1
    CHECK(beam_certificates_v2(1.0 - 1e-9).C1.value() == doctest::Approx(16 / r3).epsilon(1e-7));
    CHECK(beam_certificates_v2(1.0 + 1e-9).C1.value() == doctest::Approx(16 / r3).epsilon(1e-4));

    CHECK(beam_certificates_v2(0.5, 0.5).C0.value() == doctest::Approx(12 / std::exp(1.0)));
    CHECK(beam_certificates_v2(0.5).C1.value() == doctest::Approx(8 * 1.5 / (r3 * 0.5)));

    const double big = 1e3;
    CHECK(beam_certificates_v2(big).C1.value() / (16 * std::pow(big, 4) / r3) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK_THROWS_AS(beam_certificates_v2(2.0, 1.0), DomainError);
    CHECK_THROWS_AS(beam_certificates_v2(2.0, 0.0), DomainError);

    const ISSCertificate paired = beam_v2_with_c2(2.0);
    CHECK(paired.C2->value() == doctest::Approx(beam_c2_tight(2.0, 10).closed_form));
    CHECK_FALSE(paired.c2_source.empty());
    CHECK(beam_v2_with_c2(0.5).C2->value() == doctest::Approx(beam_certificates_v1(0.5).C2->value()));
    CHECK(beam_v1_with_tight_c2(2.0).C2->value() == doctest::Approx(paired.C2->value()));
}

TEST_CASE("combined curve") {
    std::vector<double> grid;
    for (int i = 0; i <= 200; ++i)
        grid.push_back(0.9 + 0.001 * i);
    const auto curve = combined_c1_curve(grid);
    for (const CurvePoint& p : curve) {
        CHECK(std::isfinite(p.C1_min));
        CHECK(p.C0_v2_best <= p.C0_v2);
    }
    const auto [first, last] = v2_better_range(curve);
    CHECK(curve[first].alpha == doctest::Approx(0.969));
    CHECK(curve[last].alpha == doctest::Approx(1.017));
    for (std::size_t i = 0; i < curve.size(); ++i)
        CHECK((curve[i].C1_v2 < curve[i].C1_v1.as_double()) == (i >= first && i <= last));
    CHECK(curve[100].C1_v1.is_infinite());
    CHECK(curve[100].C1_min == doctest::Approx(16 / r3).epsilon(1e-12));

    const auto [lo, hi] = c1_crossover_points();
    CHECK(std::abs(lo - 0.967) < 0.002);
    CHECK(lo == doctest::Approx(std::sqrt(15.0) / 4.0).epsilon(1e-12));
    CHECK(hi == doctest::Approx(1.0172743).epsilon(1e-7));

    const auto far = combined_c1_curve({0.5, 2.0, 5.0, 50.0});
    CHECK(far[0].C1_min == doctest::Approx(4.0));
    CHECK(far[1].C1_min == doctest::Approx(2.0));
    CHECK(far[3].C1_min > 2 / r3);
    for (std::size_t i = 2; i < far.size(); ++i)
        CHECK(far[i].C1_min < far[i - 1].C1_min);

    CHECK_THROWS_AS(v2_better_range(combined_c1_curve({2.0, 3.0})), DomainError);
    CHECK_THROWS_AS(combined_c1_curve({-1.0}), DomainError);
}

TEST_CASE("method names") {
    for (auto m : {CertificateMethod::thm1, CertificateMethod::thm2, CertificateMethod::relaxed,
                   CertificateMethod::beam_v1, CertificateMethod::beam_v2, CertificateMethod::combined})
        CHECK(method_from_string(to_string(m)) == m);
    CHECK_THROWS_AS(method_from_string("thm9"), InputError);
}
