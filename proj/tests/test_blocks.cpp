#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rsiss/beam.hpp"
#include "rsiss/beam_blocks.hpp"
#include "rsiss/certificates.hpp"

using namespace rsiss;

namespace {

ModalVector smooth_block_state(int N, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1, 1);
    ModalVector z(2 * N);
    for (int n = 1; n <= N; ++n) {
        z[2 * (n - 1)] = u(rng) / (double(n) * n * n);
        z[2 * (n - 1) + 1] = u(rng) / (double(n) * n * n);
    }
    return z;
}

// Block coordinates of B d(0).
ModalVector block_lift(int N, const BoundaryVector& d) {
    ModalVector z(2 * N);
    for (int n = 1; n <= N; ++n)
        z.segment<2>(2 * (n - 1)) = beam::stationary_block_projection(n, 0).cast<Complex>() * d[0] +
                                    beam::stationary_block_projection(n, 1).cast<Complex>() * d[1];
    return z;
}

}  // namespace

TEST_CASE("block exponential against scaling and squaring") {
    for (double alpha : {0.3, 0.5, 0.999, 1.0, 1.001, 2.0, 5.0}) {
        const Eigen::Matrix2d M = beam::BlockMatrix2(alpha).matrix();
        for (int n = 1; n <= 16; ++n)
            for (double t : {0.0, 1e-6, 1e-3, 0.01, 0.1, 0.5, 1.0}) {
                const Eigen::Matrix2d E = beam::block_exponential(alpha, n, t);
                const Eigen::Matrix2d R = oracle::expm(n * n * pi * pi * t * M);
                CHECK((E - R).cwiseAbs().maxCoeff() < 1e-10);
            }
    }
    CHECK(beam::block_exponential(2.0, 3, 0.0).isIdentity(0.0));
}

TEST_CASE("block exponential identities") {
    for (double alpha : {0.5, 1.0, 2.0}) {
        for (double t : {0.001, 0.01, 0.05}) {
            const int n = 2;
            const double k = n * n * pi * pi;
            const Eigen::Matrix2d E = beam::block_exponential(alpha, n, t);
            CHECK(E.determinant() == doctest::Approx(std::exp(-2 * alpha * k * t)).epsilon(1e-12));
            const Eigen::Matrix2d E2 = beam::block_exponential(alpha, n, 2 * t);
            CHECK((E * E - E2).cwiseAbs().maxCoeff() < 1e-14);
        }
    }
    // printed cosh/sinh form at alpha = 2, n = 1, t = 0.01
    const double a = 2.0, k = pi * pi, t = 0.01, th = k * std::sqrt(3.0);
    Eigen::Matrix2d P;
    P << std::cosh(th * t), std::sqrt((a - 1) / (a + 1)) * std::sinh(th * t),
        std::sqrt((a + 1) / (a - 1)) * std::sinh(th * t), std::cosh(th * t);
    P *= std::exp(-a * k * t);
    CHECK((beam::block_exponential(a, 1, t) - P).cwiseAbs().maxCoeff() < 1e-14);
    // no overflow for long times
    CHECK(beam::block_exponential(1.5, 40, 50.0).allFinite());
    CHECK_THROWS_AS(beam::block_exponential(2.0, 1, -1.0), DomainError);
}

TEST_CASE("block integrator matches the modal integrator") {
    const int N = 32;
    for (double alpha : {0.5, 2.0}) {
        const SystemDefinition s = beam::beam_system(alpha, N);
        DisturbanceSignal d = make_disturbance(DisturbanceKind::spline_C2, 17, 1.0, 2);
        attach_beam_load(d, make_beam_load(2, 1.0, 3), alpha, N);
        const ModalVector z0 = smooth_block_state(N, 4) + block_lift(N, d.d(0.0));
        const ModalVector c0 = beam::modal_from_block(alpha, N, z0);
        const auto times = uniform_grid(2.0, 0.02);
        const Trajectory blocks = beam::integrate_beam_blocks(alpha, N, z0, d, times);
        const Trajectory modal = integrate_modes(s, c0, d, times);
        for (Eigen::Index i = 0; i < modal.norms.size(); ++i)
            CHECK(std::abs(blocks.norms[i] - modal.norms[i]) < 1e-6 * modal.norms[i]);
        const Trajectory back = beam::blocks_to_modal(alpha, N, blocks);
        CHECK((back.coeffs - modal.coeffs).cwiseAbs().maxCoeff() < 1e-6 * modal.coeffs.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("block integrator at alpha = 1") {
    const int N = 32;
    const auto times = uniform_grid(5.0, 0.01);
    CHECK(beam::integrate_beam_blocks(1.0, N, ModalVector::Zero(2 * N), zero_disturbance(2), times)
              .norms.maxCoeff() == 0.0);

    // stationary state stays put
    const BoundaryVector e = BoundaryVector::Unit(2, 1);
    const ModalVector ze = block_lift(N, e);
    const Trajectory st = beam::integrate_beam_blocks(1.0, N, ze, constant_disturbance(e), times);
    CHECK(st.norms.maxCoeff() - st.norms.minCoeff() < 1e-12);

    // the block certificate bounds trajectories at alpha = 1
    const ISSCertificate cert = beam_certificates_v2(1.0);
    for (std::uint64_t seed : {1, 2, 3}) {
        const DisturbanceSignal d = make_disturbance(DisturbanceKind::trig_poly, seed, 1.0, 2);
        const ModalVector z0 = smooth_block_state(N, seed) + block_lift(N, d.d(0.0));
        const Trajectory tr = beam::integrate_beam_blocks(1.0, N, z0, d, times);
        const auto sup = running_sup_d(d, times);
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double rhs = cert.C0.value() * std::exp(-cert.kappa0 * times[i]) * tr.norms[0] +
                               cert.C1.value() * sup[i];
            CHECK(tr.norms[static_cast<Eigen::Index>(i)] <= rhs);
        }
    }
}

TEST_CASE("block integrator input checks") {
    DisturbanceSignal d = zero_disturbance(2);
    attach_modal_load(d, beam::beam_system(2.0, 2), [](double) { return ModalVector::Ones(4); });
    CHECK_THROWS_AS(beam::integrate_beam_blocks(2.0, 2, ModalVector::Zero(4), d, {0.0, 0.1}), UnsupportedOperation);
    CHECK_THROWS_AS(beam::integrate_beam_blocks(2.0, 2, ModalVector::Zero(3), zero_disturbance(2), {0.0, 0.1}),
                    DomainError);
    CHECK_THROWS_AS(beam::integrate_beam_blocks(2.0, 2, ModalVector::Zero(4), zero_disturbance(1), {0.0, 0.1}),
                    DomainError);
}
