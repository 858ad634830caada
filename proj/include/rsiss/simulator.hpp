#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "rsiss/disturbance.hpp"
#include "rsiss/system.hpp"

namespace rsiss {

/// Sampled solution. Column i of `coeffs` holds the coefficients at times[i],
/// in the eigenbasis for integrate_modes and in the orthonormal
/// (psi_n, psi_n^d) basis for integrate_beam_blocks.
struct Trajectory {
    std::vector<double> times;
    Eigen::MatrixXcd coeffs;
    Eigen::VectorXd norms;

    ModalVector at(std::size_t i) const { return coeffs.col(static_cast<Eigen::Index>(i)); }
};

struct IntegratorOptions {
    /// Internal step. The kernel exp(lambda (t - s)) is integrated exactly, so
    /// the step only controls how well a quadratic follows the forcing.
    double max_step = 1e-3;
};

/// Modal forcing g(s) in  c_n' = lambda_n c_n + g_n(s).
using ModalForcing = std::function<ModalVector(double)>;

/// Exact propagation of c' = diag(lambda) c + g(s) with g interpolated by a
/// quadratic on each internal step. Returns the coefficients at `times`
/// (times[0] is the initial time).
Eigen::MatrixXcd propagate_modes(const Eigen::VectorXcd& lambda, const ModalVector& c0, const ModalForcing& g,
                                 const std::vector<double>& times, const IntegratorOptions& options = {});

/// Variation of constants for
///   c_n' = lambda_n c_n - lambda_n <B d, psi_n> + <A B d, psi_n> + <U, psi_n>.
Trajectory integrate_modes(const SystemDefinition& system, const ModalVector& X0, const DisturbanceSignal& dist,
                           const std::vector<double>& times, const IntegratorOptions& options = {});

/// S(t)(X0 - B d(0)) + B d(t) + int_0^t S(t - s)(-B d'(s) + A B d(s) + U(s)) ds, mode-wise.
/// Requires the exact derivative of d.
ModalVector mild_solution(const SystemDefinition& system, const ModalVector& X0, const DisturbanceSignal& dist,
                          double t, const IntegratorOptions& options = {});

/// Same formula on a whole grid.
Trajectory mild_trajectory(const SystemDefinition& system, const ModalVector& X0, const DisturbanceSignal& dist,
                           const std::vector<double>& times, const IntegratorOptions& options = {});

/// t0, t0 + dt, ..., up to t_final (last point snapped to t_final).
std::vector<double> uniform_grid(double t_final, double dt, double t0 = 0.0);

/// CSV with columns t, norm_H and optionally re_c_k, im_c_k per mode.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out, bool with_coeffs = false);
void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path, bool with_coeffs = false);

}  // namespace rsiss
