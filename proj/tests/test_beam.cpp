#include <doctest.h>

#include <cmath>
#include <random>

#include "rsiss/beam.hpp"
#include "rsiss/beam_blocks.hpp"

using namespace rsiss;

namespace {

ModalVector random_vector(Eigen::Index size, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    ModalVector v(size);
    for (auto& z : v)
        z = Complex(g(rng), g(rng));
    return v;
}

}  // namespace

TEST_CASE("block basis is orthonormal") {
    for (int n : {1, 2, 7}) {
        for (bool a : {false, true})
            for (bool b : {false, true}) {
                const Complex ip = beam::sine_inner(beam::block_basis(n, a), beam::block_basis(n, b));
                CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-14);
                const Complex q = beam::h_inner_quadrature(beam::to_point_profile(beam::block_basis(n, a)),
                                                           beam::to_point_profile(beam::block_basis(n, b)));
                CHECK(std::abs(q - ip) < 1e-12);
            }
    }
}

TEST_CASE("operator in the block basis is k M") {
    for (double alpha : {0.4, 2.0, 3.5}) {
        const int N = 5;
        const auto ms = beam::modes(alpha, N);
        const Eigen::Matrix2d M = beam::BlockMatrix2(alpha).matrix();
        for (int n = 1; n <= N; ++n)
            for (int branch : {+1, -1}) {
                // an eigenvector in modal coordinates is a unit vector
                const Eigen::Index idx = beam::mode_index(n, branch);
                const ModalVector z = beam::block_from_modal(alpha, N, ModalVector::Unit(2 * N, idx));
                const Eigen::Vector2cd zn = z.segment<2>(2 * (n - 1));
                const Complex lambda = ms[static_cast<std::size_t>(idx)].lambda;
                const Eigen::Vector2cd lhs = (n * n * pi * pi) * M.cast<Complex>() * zn;
                CHECK((lhs - lambda * zn).norm() < 1e-10 * std::abs(lambda) * zn.norm());
            }
    }
}

TEST_CASE("block and modal coordinates describe the same state") {
    for (double alpha : {0.5, 2.0}) {
        const int N = 12;
        const SystemDefinition s = beam::beam_system(alpha, N);
        const ModalVector c = random_vector(2 * N, 3);
        const ModalVector z = beam::block_from_modal(alpha, N, c);
        CHECK(z.norm() == doctest::Approx(state_norm(s, c)).epsilon(1e-12));
        CHECK((beam::modal_from_block(alpha, N, z) - c).norm() < 1e-12 * c.norm());
    }
}

TEST_CASE("stationary projections") {
    for (int k = 0; k < 2; ++k) {
        const auto xe = beam::stationary_profile(Eigen::Vector2cd::Unit(k));
        for (int n = 1; n <= 6; ++n) {
            const Eigen::Vector2d p = beam::stationary_block_projection(n, k);
            for (int dual = 0; dual < 2; ++dual) {
                const Complex q = beam::h_inner_quadrature(xe, beam::to_point_profile(beam::block_basis(n, dual)));
                CHECK(std::abs(q - p[dual]) < 1e-12);
            }
        }
        // the stationary profile is the lifting
        const auto lift = beam::lifting_profile(k);
        for (double x : {0.0, 0.3, 0.77, 1.0})
            CHECK(std::abs(xe(x).first - lift(x).first) < 1e-14);
    }
    // Parseval: sum of squared projections tends to ||X_e||^2 = 1/3
    double s = 0.0;
    for (int n = 2000; n >= 1; --n)
        s += beam::stationary_block_projection(n, 0).squaredNorm();
    CHECK(s == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
}

TEST_CASE("distributed load projections") {
    const int N = 8;
    Eigen::VectorXd w(3);
    w << 0.7, -0.2, 1.1;
    for (double alpha : {0.5, 2.0}) {
        const SystemDefinition s = beam::beam_system(alpha, N);
        const double norm = beam::load_norm(w);
        CHECK(state_norm(s, beam::load_modal_projection(alpha, N, w)) == doctest::Approx(norm).epsilon(1e-12));
        CHECK(beam::load_block_projection(N, w).norm() == doctest::Approx(norm).epsilon(1e-12));
        CHECK((beam::block_from_modal(alpha, N, beam::load_modal_projection(alpha, N, w)) -
               beam::load_block_projection(N, w))
                  .norm() < 1e-12);
    }
}

TEST_CASE("block matrix") {
    const beam::BlockMatrix2 b(2.0);
    CHECK(b.matrix().trace() == doctest::Approx(b.trace()));
    CHECK(b.matrix().determinant() == doctest::Approx(b.det()));
    CHECK(b.theta(2) == doctest::Approx(4 * pi * pi * std::sqrt(3.0)));
    CHECK_THROWS_AS(beam::BlockMatrix2(0.5).theta(1), DomainError);
    CHECK_THROWS_AS(beam::BlockMatrix2(0.0), DomainError);
}
