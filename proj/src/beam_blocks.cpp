#include "rsiss/beam_blocks.hpp"

#include <map>

#include <unsupported/Eigen/MatrixFunctions>

#include "rsiss/beam.hpp"

namespace rsiss::beam {

BlockMatrix2::BlockMatrix2(double a) : alpha(a) {
    if (!(a > 0.0))
        throw DomainError("block matrix needs alpha > 0");
}

Eigen::Matrix2d BlockMatrix2::matrix() const {
    Eigen::Matrix2d M;
    M << -alpha, alpha - 1.0, alpha + 1.0, -alpha;
    return M;
}

double BlockMatrix2::theta(int n) const {
    if (alpha < 1.0)
        throw DomainError("theta_n is defined for alpha >= 1");
    return n * n * pi * pi * std::sqrt(alpha * alpha - 1.0);
}

namespace {

// Step of z' = k M z + f(s) over [0, h], f quadratic through s = 0, h/2, h:
// z(h) = E z(0) + P0 f(0) + Pm f(h/2) + P1 f(h).
struct BlockStep {
    Eigen::Matrix2d E, P0, Pm, P1;
};

BlockStep make_step(double alpha, int n, double h) {
    const double k = n * n * pi * pi;
    // Van Loan: the exponential of the chain [[kM, I, 0, 0], [0, 0, I, 0], [0, 0, 0, I], 0]
    // holds int E(h - s) s^j / j! ds in its first block row.
    Eigen::Matrix<double, 8, 8> Z = Eigen::Matrix<double, 8, 8>::Zero();
    Z.block<2, 2>(0, 0) = k * BlockMatrix2(alpha).matrix();
    Z.block<2, 2>(0, 2).setIdentity();
    Z.block<2, 2>(2, 4).setIdentity();
    Z.block<2, 2>(4, 6).setIdentity();
    const Eigen::Matrix<double, 8, 8> F = (Z * h).exp();
    const Eigen::Matrix2d W0 = F.block<2, 2>(0, 2);
    const Eigen::Matrix2d W1 = F.block<2, 2>(0, 4) / h;
    const Eigen::Matrix2d W2 = 2.0 * F.block<2, 2>(0, 6) / (h * h);
    BlockStep step;
    step.E = block_exponential(alpha, n, h);
    step.P0 = W0 - 3.0 * W1 + 2.0 * W2;
    step.Pm = 4.0 * W1 - 4.0 * W2;
    step.P1 = -W1 + 2.0 * W2;
    return step;
}

}  // namespace

Trajectory integrate_beam_blocks(double alpha, int N, const ModalVector& Z0, const DisturbanceSignal& dist,
                                 const std::vector<double>& times, const IntegratorOptions& options) {
    if (!(alpha > 0.0))
        throw DomainError("integrate_beam_blocks: alpha must be positive");
    if (N < 1 || Z0.size() != 2 * N)
        throw DomainError("integrate_beam_blocks: expected 2N block coefficients");
    dist.validate();
    if (dist.m != 2)
        throw DomainError("the beam has two boundary channels");
    if (dist.has_load() && !dist.U_sine)
        throw UnsupportedOperation("block integrator accepts distributed loads given by sine coefficients only");
    if (times.empty())
        throw InputError("time grid is empty");
    if (!(options.max_step > 0.0))
        throw InputError("integrator step must be positive");

    const double kM_scale = pi * pi;
    const Eigen::Matrix2d M = BlockMatrix2(alpha).matrix();
    // f_n(s) = -k M D_n(s) + U_n(s) where D_n = block coordinates of B d(s)
    auto forcing = [&](double s) -> ModalVector {
        const BoundaryVector d = dist.d(s);
        if (!d.allFinite())
            throw InputError("non-finite disturbance sample at t = " + std::to_string(s));
        ModalVector f(2 * N);
        for (int n = 1; n <= N; ++n) {
            const Eigen::Vector2cd D = stationary_block_projection(n, 0).cast<Complex>() * d[0] +
                                       stationary_block_projection(n, 1).cast<Complex>() * d[1];
            f.segment<2>(2 * (n - 1)) = -(kM_scale * n * n) * (M.cast<Complex>() * D);
        }
        if (dist.has_load())
            f += load_block_projection(N, dist.U_sine(s));
        return f;
    };

    std::map<double, std::vector<BlockStep>> cache;
    auto steps_for = [&](double h) -> const std::vector<BlockStep>& {
        auto it = cache.find(h);
        if (it != cache.end())
            return it->second;
        std::vector<BlockStep> steps;
        steps.reserve(static_cast<std::size_t>(N));
        for (int n = 1; n <= N; ++n)
            steps.push_back(make_step(alpha, n, h));
        if (cache.size() > 16)
            cache.clear();
        return cache.emplace(h, std::move(steps)).first->second;
    };

    Trajectory traj;
    traj.times = times;
    traj.coeffs.resize(2 * N, static_cast<Eigen::Index>(times.size()));
    ModalVector z = Z0;
    traj.coeffs.col(0) = z;
    ModalVector f0 = forcing(times[0]);
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double a = times[i - 1], b = times[i];
        if (!(b > a))
            throw InputError("time grid must be strictly increasing");
        const int count = std::max(1, static_cast<int>(std::ceil((b - a) / options.max_step - 1e-9)));
        const double h = (b - a) / count;
        const auto& steps = steps_for(h);
        for (int s = 0; s < count; ++s) {
            const double s0 = a + s * h;
            const double s1 = s + 1 == count ? b : a + (s + 1) * h;
            const ModalVector fm = forcing(s0 + 0.5 * h);
            const ModalVector f1 = forcing(s1);
            for (int n = 0; n < N; ++n) {
                const BlockStep& st = steps[static_cast<std::size_t>(n)];
                const Eigen::Vector2cd zn = z.segment<2>(2 * n);
                z.segment<2>(2 * n) = st.E.cast<Complex>() * zn + st.P0.cast<Complex>() * f0.segment<2>(2 * n) +
                                      st.Pm.cast<Complex>() * fm.segment<2>(2 * n) +
                                      st.P1.cast<Complex>() * f1.segment<2>(2 * n);
            }
            f0 = f1;
        }
        traj.coeffs.col(static_cast<Eigen::Index>(i)) = z;
    }
    // {psi_n, psi_n^d} is orthonormal
    traj.norms = traj.coeffs.colwise().norm().transpose();
    return traj;
}

Trajectory blocks_to_modal(double alpha, int N, const Trajectory& blocks) {
    Trajectory out;
    out.times = blocks.times;
    out.norms = blocks.norms;
    out.coeffs.resize(blocks.coeffs.rows(), blocks.coeffs.cols());
    for (Eigen::Index i = 0; i < blocks.coeffs.cols(); ++i)
        out.coeffs.col(i) = modal_from_block(alpha, N, blocks.coeffs.col(i));
    return out;
}

}  // namespace rsiss::beam
