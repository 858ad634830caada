#pragma once

#include <cmath>
#include <vector>

#include "rsiss/simulator.hpp"

namespace rsiss::beam {

/// M = [[-alpha, alpha - 1], [alpha + 1, -alpha]]: the beam operator on span{psi_n, psi_n^d}
/// is n^2 pi^2 M.
struct BlockMatrix2 {
    double alpha = 2.0;

    explicit BlockMatrix2(double a);

    Eigen::Matrix2d matrix() const;
    /// n^2 pi^2 sqrt(alpha^2 - 1), alpha >= 1.
    double theta(int n) const;
    double trace() const { return -2.0 * alpha; }
    double det() const { return 1.0; }
};

/// e^{n^2 pi^2 M t} in closed form:
///   alpha > 1  e^{-a k t} [[cosh, r sinh], [sinh / r, cosh]](theta_n t),  r = sqrt((a-1)/(a+1))
///   alpha = 1  e^{-k t} [[1, 0], [2 k t, 1]]
///   alpha < 1  the same with cos / sin of k sqrt(1 - a^2) t
/// with k = n^2 pi^2. The two exponentials are combined before multiplying,
/// so large theta_n t does not overflow.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> block_exponential(Scalar alpha, int n, Scalar t) {
    using std::abs;
    using std::cos;
    using std::exp;
    using std::sin;
    using std::sqrt;
    if (!(alpha > Scalar(0)))
        throw DomainError("block_exponential: alpha must be positive");
    if (!(t >= Scalar(0)))
        throw DomainError("block_exponential: t must be nonnegative");
    const Scalar pi_s = Scalar(3.14159265358979323846264338327950288L);
    const Scalar k = Scalar(n) * Scalar(n) * pi_s * pi_s;
    const Scalar kt = k * t;
    // e^{kMt} = c I + s N with N = M + alpha I, N^2 = (alpha^2 - 1) I
    Scalar c, s;
    if (alpha > Scalar(1)) {
        const Scalar sigma = sqrt((alpha - Scalar(1)) * (alpha + Scalar(1)));
        const Scalar slow = exp(-kt / (alpha + sigma));  // e^{-k (alpha - sigma) t}
        const Scalar fast = exp(-kt * (alpha + sigma));
        c = Scalar(0.5) * (slow + fast);
        const Scalar x = kt * sigma;
        // sinh(x) / sigma, kept accurate as sigma -> 0
        s = x < Scalar(1e-3) ? exp(-alpha * kt) * kt * (Scalar(1) + x * x / Scalar(6) + x * x * x * x / Scalar(120))
                             : Scalar(0.5) * (slow - fast) / sigma;
    } else if (alpha == Scalar(1)) {
        c = exp(-kt);
        s = c * kt;
    } else {
        const Scalar omega = sqrt((Scalar(1) - alpha) * (Scalar(1) + alpha));
        const Scalar x = kt * omega;
        const Scalar env = exp(-alpha * kt);
        c = env * cos(x);
        s = abs(x) < Scalar(1e-3) ? env * kt * (Scalar(1) - x * x / Scalar(6) + x * x * x * x / Scalar(120))
                                  : env * sin(x) / omega;
    }
    Eigen::Matrix<Scalar, 2, 2> E;
    E << c, s * (alpha - Scalar(1)), s * (alpha + Scalar(1)), c;
    return E;
}

/// Block forcing is built from d(t) through the stationary states and from
/// beam loads through U_sine; other distributed disturbances are rejected.
Trajectory integrate_beam_blocks(double alpha, int N, const ModalVector& Z0, const DisturbanceSignal& dist,
                                 const std::vector<double>& times, const IntegratorOptions& options = {});

/// Trajectory in eigen-coordinates, converted from block coordinates, with the
/// norms kept (both bases give the same state).
Trajectory blocks_to_modal(double alpha, int N, const Trajectory& blocks);

}  // namespace rsiss::beam
