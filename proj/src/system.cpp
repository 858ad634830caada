#include "rsiss/system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rsiss {

GramData GramData::identity(Eigen::Index modes) {
    GramData g;
    g.blocks.reserve(static_cast<std::size_t>(modes));
    for (Eigen::Index i = 0; i < modes; ++i)
        g.blocks.push_back({{i}, Eigen::MatrixXcd::Identity(1, 1)});
    return g;
}

MatrixEigenfunctions::MatrixEigenfunctions(Eigen::MatrixXcd phi, Eigen::MatrixXcd psi)
    : phi_(std::move(phi)), psi_(std::move(psi)) {
    if (phi_.rows() != psi_.rows() || phi_.cols() != psi_.cols())
        throw DomainError("eigenfunction matrices must have equal shapes");
}

Complex MatrixEigenfunctions::cross(Eigen::Index i, Eigen::Index j) const {
    // <x, y> = sum x conj(y); Eigen's dot conjugates its left operand.
    return psi_.col(j).dot(phi_.col(i));
}

void SystemDefinition::validate() const {
    const Eigen::Index n = modes();
    if (n == 0)
        throw DomainError("system has no modes");
    if (m < 1)
        throw DomainError("input dimension m must be positive");
    if (b.rows() != n || b.cols() != m || a.rows() != n || a.cols() != m)
        throw DomainError("projection matrices must be (modes x m)");
    if (!(c_E > 0.0))
        throw DomainError("c(E) must be positive");
    require_simple(spectrum);

    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    for (const GramBlock& block : gram.blocks) {
        const auto size = static_cast<Eigen::Index>(block.modes.size());
        if (block.G.rows() != size || block.G.cols() != size)
            throw DomainError("Gram block size does not match its mode list");
        for (Eigen::Index idx : block.modes) {
            if (idx < 0 || idx >= n)
                throw DomainError("Gram block references an unknown mode");
            ++seen[static_cast<std::size_t>(idx)];
        }
        if ((block.G - block.G.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + block.G.cwiseAbs().maxCoeff()))
            throw DomainError("Gram block is not Hermitian");
        Eigen::LLT<Eigen::MatrixXcd> llt(block.G);
        if (llt.info() != Eigen::Success)
            throw DomainError("Gram block is not positive definite");
    }
    if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
        throw DomainError("Gram blocks must partition the modes");
    for (const auto* v : {&lift_norms, &stationary_norms})
        if (*v && (*v)->size() != m)
            throw DomainError("per-channel norm list must have m entries");
}

ModalVector lift_projection(const SystemDefinition& system, const BoundaryVector& d) {
    if (d.size() != system.m)
        throw DomainError("boundary vector has wrong dimension");
    return system.b * d;
}

ModalVector ab_projection(const SystemDefinition& system, const BoundaryVector& d) {
    if (d.size() != system.m)
        throw DomainError("boundary vector has wrong dimension");
    return system.a * d;
}

ModalVector stationary_coeffs(const SystemDefinition& system, const BoundaryVector& e) {
    const auto& lambda = system.spectrum.eigenvalues;
    if ((lambda.array() == Complex(0.0)).any())
        throw DomainError("stationary solution requires 0 in the resolvent set of A0");
    const ModalVector lift = lift_projection(system, e);
    ModalVector x = lift.array() - ab_projection(system, e).array() / lambda.array();
    // a_n = lambda_n b_n cancels up to roundoff; report it as exact
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (std::abs(x[i]) <= 8.0 * std::numeric_limits<double>::epsilon() * std::abs(lift[i]))
            x[i] = 0.0;
    return x;
}

namespace {

double gram_quadratic_form(const SystemDefinition& system, const ModalVector& u, const ModalVector& v) {
    // sum_{ij} u_i conj(v_j) <phi_i, phi_j>
    Complex total = 0.0;
    for (const GramBlock& block : system.gram.blocks) {
        const auto size = static_cast<Eigen::Index>(block.modes.size());
        for (Eigen::Index i = 0; i < size; ++i) {
            const Complex ui = u[block.modes[static_cast<std::size_t>(i)]];
            if (ui == Complex(0.0))
                continue;
            for (Eigen::Index j = 0; j < size; ++j)
                total += ui * std::conj(v[block.modes[static_cast<std::size_t>(j)]]) * block.G(i, j);
        }
    }
    return total.real();
}

}  // namespace

double state_norm(const SystemDefinition& system, const ModalVector& coeffs) {
    if (coeffs.size() != system.modes())
        throw DomainError("state_norm: coefficient vector has wrong length");
    return std::sqrt(std::max(0.0, gram_quadratic_form(system, coeffs, coeffs)));
}

double lift_norm(const SystemDefinition& system, int channel) {
    if (system.lift_norms)
        return (*system.lift_norms)[channel];
    return state_norm(system, system.b.col(channel));
}

double stationary_norm(const SystemDefinition& system, int channel) {
    if (system.stationary_norms)
        return (*system.stationary_norms)[channel];
    return state_norm(system, stationary_coeffs(system, BoundaryVector::Unit(system.m, channel)));
}

double ab_operator_norm(const SystemDefinition& system) {
    if (system.ab_norm)
        return *system.ab_norm;
    if (system.a.cwiseAbs().maxCoeff() == 0.0)
        return 0.0;
    Eigen::MatrixXcd gamma(system.m, system.m);
    for (int k = 0; k < system.m; ++k)
        for (int l = 0; l < system.m; ++l) {
            Complex total = 0.0;
            for (const GramBlock& block : system.gram.blocks)
                for (std::size_t i = 0; i < block.modes.size(); ++i)
                    for (std::size_t j = 0; j < block.modes.size(); ++j)
                        total += system.a(block.modes[i], k) * std::conj(system.a(block.modes[j], l)) *
                                 block.G(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            gamma(l, k) = total;
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gamma, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
}

double biorthogonality_check(const SystemDefinition& system, Eigen::Index max_modes) {
    if (!system.eigenfunctions)
        throw UnsupportedOperation("system does not provide eigenfunction data");
    const EigenfunctionData& ef = *system.eigenfunctions;
    const Eigen::Index n = max_modes > 0 ? std::min(max_modes, ef.size()) : ef.size();
    double defect = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            defect = std::max(defect, std::abs(ef.cross(i, j) - (i == j ? 1.0 : 0.0)));
    return defect;
}

RieszBounds gram_riesz_bounds(const SystemDefinition& system) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const GramBlock& block : system.gram.blocks) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(block.G, Eigen::EigenvaluesOnly);
        lo = std::min(lo, eig.eigenvalues().minCoeff());
        hi = std::max(hi, eig.eigenvalues().maxCoeff());
    }
    return RieszBounds(lo, hi);
}

}  // namespace rsiss
