#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rsiss/spectral.hpp"
#include "rsiss/types.hpp"

namespace rsiss {

/// One group of eigenvectors whose span is orthogonal to every other group.
/// G(i, j) = <phi_{modes[i]}, phi_{modes[j]}>_H.
struct GramBlock {
    std::vector<Eigen::Index> modes;
    Eigen::MatrixXcd G;
};

struct GramData {
    std::vector<GramBlock> blocks;

    /// Identity blocks, i.e. an orthonormal eigenbasis.
    static GramData identity(Eigen::Index modes);
};

/// Access to <phi_i, psi_j>_H for systems that can evaluate their
/// eigenfunctions (explicitly or by quadrature).
class EigenfunctionData {
public:
    virtual ~EigenfunctionData() = default;
    virtual Eigen::Index size() const = 0;
    virtual Complex cross(Eigen::Index i, Eigen::Index j) const = 0;
};

/// Eigenvectors given as columns of finite-dimensional matrices under the
/// Euclidean inner product. Mostly useful for small reference systems.
class MatrixEigenfunctions final : public EigenfunctionData {
public:
    MatrixEigenfunctions(Eigen::MatrixXcd phi, Eigen::MatrixXcd psi);
    Eigen::Index size() const override { return phi_.cols(); }
    Complex cross(Eigen::Index i, Eigen::Index j) const override;

private:
    Eigen::MatrixXcd phi_, psi_;
};

/// A truncated Riesz-spectral boundary control system described by modal data.
///
/// Column k of `b` holds <B e_k, psi_n>_H and column k of `a` holds
/// <A B e_k, psi_n>_H, for the lifting operator B and the canonical basis
/// (e_k) of K^m. The semigroup has no object of its own: it acts mode-wise
/// as c_n -> exp(lambda_n t) c_n.
struct SystemDefinition {
    std::string name = "generic";
    Spectrum spectrum;
    Eigen::MatrixXcd b;
    Eigen::MatrixXcd a;
    GramData gram;
    RieszBounds riesz;
    int m = 1;
    double c_E = 1.0;

    // Exact (untruncated) quantities when the system knows them. Otherwise
    // they are evaluated from the truncated modal expansion.
    std::optional<Eigen::VectorXd> lift_norms;        // ||B e_k||_H
    std::optional<Eigen::VectorXd> stationary_norms;  // ||X_{e,k}||_H
    std::optional<double> ab_norm;                    // ||A B||_{L(K^m, H)}

    std::shared_ptr<const EigenfunctionData> eigenfunctions;

    Eigen::Index modes() const { return spectrum.size(); }

    /// Checks dimensions, simplicity of the spectrum and the Gram blocks.
    void validate() const;
};

/// <B d, psi_n> for every mode.
ModalVector lift_projection(const SystemDefinition& system, const BoundaryVector& d);

/// <A B d, psi_n> for every mode.
ModalVector ab_projection(const SystemDefinition& system, const BoundaryVector& d);

/// Coefficients of the stationary state X_e with A X_e = 0 and boundary value e:
/// x_n = b_n(e) - a_n(e) / lambda_n.
ModalVector stationary_coeffs(const SystemDefinition& system, const BoundaryVector& e);

/// ||sum_n c_n phi_n||_H, evaluated exactly through the Gram blocks.
double state_norm(const SystemDefinition& system, const ModalVector& coeffs);

double lift_norm(const SystemDefinition& system, int channel);
double stationary_norm(const SystemDefinition& system, int channel);

/// Spectral norm of the Gram matrix of {A B e_k} in H, square-rooted.
double ab_operator_norm(const SystemDefinition& system);

/// max |<phi_i, psi_j> - delta_ij| over i, j < max_modes (all modes when 0).
double biorthogonality_check(const SystemDefinition& system, Eigen::Index max_modes = 0);

/// Extreme eigenvalues of the Gram blocks: the tightest Riesz bounds of the
/// truncated eigenbasis.
RieszBounds gram_riesz_bounds(const SystemDefinition& system);

}  // namespace rsiss
