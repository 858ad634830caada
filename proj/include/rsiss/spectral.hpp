#pragma once

#include <optional>
#include <vector>

#include "rsiss/types.hpp"

namespace rsiss {

/// Truncated list of simple eigenvalues, with an optional bound on
/// sup Re(lambda) over the modes that were not listed.
struct Spectrum {
    Eigen::VectorXcd eigenvalues;
    std::optional<double> declared_tail_bound;

    Eigen::Index size() const { return eigenvalues.size(); }
};

struct RieszBounds {
    double m_R = 1.0;
    double M_R = 1.0;

    RieszBounds() = default;
    RieszBounds(double lower, double upper);

    /// sqrt(M_R / m_R), the recurring semigroup amplification factor.
    double condition() const;
};

struct ConstraintVerdict {
    double omega0 = 0.0;
    double kappa0 = 0.0;
    ExtendedReal zeta;
    bool passes = false;
};

/// sup Re(lambda) over the listed modes, merged with the tail bound.
double growth_bound(const Spectrum& spectrum);

/// sup |lambda| / |Re lambda|; infinite marker when some Re(lambda) == 0.
ExtendedReal parabolicity_ratio(const Spectrum& spectrum);

ConstraintVerdict check_constraints(const Spectrum& spectrum);

/// Throws DomainError when two listed eigenvalues coincide.
void require_simple(const Spectrum& spectrum);

struct RelaxedSum {
    double sum = 0.0;
    /// Contribution of the last decade of listed modes (positions in
    /// [size/10, size)). Small relative to `sum` indicates convergence.
    double last_decade_increment = 0.0;

    double relative_increment() const { return sum > 0.0 ? last_decade_increment / sum : 0.0; }
};

/// sum_n |lambda_n / Re lambda_n|^2 |b_n|^2 for a single input channel.
RelaxedSum relaxed_constraint_sum(const Spectrum& spectrum, const Eigen::VectorXcd& lifting_projection);

}  // namespace rsiss
