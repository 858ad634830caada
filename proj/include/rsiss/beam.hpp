#pragma once

#include <functional>
#include <vector>

#include "rsiss/system.hpp"

namespace rsiss::beam {

// Damped Euler-Bernoulli beam on (0, 1), pinned ends, point torques d_1, d_2
// at x = 0 and x = 1, state X = (y, y_t) in H = (H^2 cap H^1_0) x L^2 with
// <(x1, x2), (y1, y2)>_H = int x1'' conj(y1'') + x2 conj(y2).
//
// Every eigenvector and adjoint eigenvector is a multiple of sin(n pi x) in
// both components, so mode shapes are stored as two amplitudes.

/// (first, second) = (amp1 sin(n pi x), amp2 sin(n pi x)).
struct SineProfile {
    int n = 1;
    Complex amp1 = 0.0;
    Complex amp2 = 0.0;
};

struct Mode {
    int n = 1;
    int branch = +1;        // epsilon in {+1, -1}
    Complex lambda;         // eigenvalue of A0
    Complex phi_amp;        // phi = phi_amp * (sin, lambda sin)
    Complex psi_amp;        // psi = psi_amp * (sin, -conj(lambda) sin)

    SineProfile phi() const;
    SineProfile psi() const;
};

/// Mode index used by beam_system: 2 (n - 1) for branch +1, 2 (n - 1) + 1 for -1.
inline Eigen::Index mode_index(int n, int branch) { return 2 * (n - 1) + (branch > 0 ? 0 : 1); }

/// Eigen-data for alpha in (0, 1) or (1, inf). For alpha > 1 the amplitudes are
/// the closed forms of the literature; for alpha < 1 phi is scaled to unit norm
/// and psi is fixed by biorthogonality.
std::vector<Mode> modes(double alpha, int N);

/// Exact <u, v>_H for sine profiles (zero when the frequencies differ).
Complex sine_inner(const SineProfile& u, const SineProfile& v);

/// A state profile evaluated pointwise: returns (x1''(x), x2(x)).
using PointProfile = std::function<std::pair<Complex, Complex>(double)>;

PointProfile to_point_profile(const SineProfile& s);

/// <u, v>_H by composite Gauss-Legendre quadrature on (0, 1).
Complex h_inner_quadrature(const PointProfile& u, const PointProfile& v, int panels = 256, int order = 10);

/// B e_k as a point profile (second component zero); channel in {0, 1}.
PointProfile lifting_profile(int channel);

/// Stationary profile of y'''' = 0, y(0) = y(1) = 0, y''(0) = e_0, y''(1) = e_1,
/// solved as a cubic independently of the lifting operator.
PointProfile stationary_profile(const Eigen::Vector2cd& e);

struct Options {
    int quadrature_panels = 256;
    int quadrature_order = 10;
};

/// The beam as a truncated Riesz-spectral system with 2N modes.
SystemDefinition beam_system(double alpha, int N, const Options& options = {});

/// Printed Riesz constants: (1 - alpha, 1 + alpha) below 1 and
/// (1 - 1/alpha, 1 + 1/alpha) above 1.
RieszBounds riesz_bounds(double alpha);

/// Orthonormal basis psi_n = (sin / (n pi)^2, sin), psi_n^d = (sin / (n pi)^2, -sin)
/// used by the coupled 2x2 decomposition. Block vectors are ordered
/// (c_1, c_1^d, c_2, c_2^d, ...).
SineProfile block_basis(int n, bool dual);

/// Converts modal coefficients <X, psi_{n,eps}> to block coefficients and back.
ModalVector block_from_modal(double alpha, int N, const ModalVector& modal);
ModalVector modal_from_block(double alpha, int N, const ModalVector& block);

/// <X_{e,k}, psi_n> and <X_{e,k}, psi_n^d> for the stationary state of channel k.
Eigen::Vector2d stationary_block_projection(int n, int channel);

/// Modal coefficients <U, psi_{n,eps}> of U = (0, sum_j w_j sin(j pi x)).
ModalVector load_modal_projection(double alpha, int N, const Eigen::VectorXd& sine_coeffs);

/// Block coefficients of the same distributed load.
ModalVector load_block_projection(int N, const Eigen::VectorXd& sine_coeffs);

/// ||(0, sum_j w_j sin(j pi x))||_H.
double load_norm(const Eigen::VectorXd& sine_coeffs);

}  // namespace rsiss::beam
