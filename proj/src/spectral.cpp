#include "rsiss/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace rsiss {

RieszBounds::RieszBounds(double lower, double upper) : m_R(lower), M_R(upper) {
    if (!(lower > 0.0) || !(upper >= lower) || !std::isfinite(upper))
        throw DomainError("Riesz bounds require 0 < m_R <= M_R");
}

double RieszBounds::condition() const { return std::sqrt(M_R / m_R); }

double growth_bound(const Spectrum& spectrum) {
    if (spectrum.size() == 0)
        throw DomainError("growth_bound: empty spectrum");
    double omega = spectrum.eigenvalues.real().maxCoeff();
    if (spectrum.declared_tail_bound)
        omega = std::max(omega, *spectrum.declared_tail_bound);
    return omega;
}

ExtendedReal parabolicity_ratio(const Spectrum& spectrum) {
    if (spectrum.size() == 0)
        throw DomainError("parabolicity_ratio: empty spectrum");
    double zeta = 0.0;
    for (const Complex& lambda : spectrum.eigenvalues) {
        if (lambda.real() == 0.0)
            return ExtendedReal::infinity();
        zeta = std::max(zeta, std::abs(lambda) / std::abs(lambda.real()));
    }
    return ExtendedReal(zeta);
}

ConstraintVerdict check_constraints(const Spectrum& spectrum) {
    ConstraintVerdict v;
    v.omega0 = growth_bound(spectrum);
    v.kappa0 = -v.omega0;
    v.zeta = parabolicity_ratio(spectrum);
    v.passes = v.omega0 < 0.0 && v.zeta.is_finite();
    return v;
}

void require_simple(const Spectrum& spectrum) {
    const auto& ev = spectrum.eigenvalues;
    std::vector<Complex> sorted(ev.begin(), ev.end());
    std::sort(sorted.begin(), sorted.end(), [](const Complex& a, const Complex& b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DomainError("spectrum has a repeated eigenvalue; simple eigenvalues are required");
}

RelaxedSum relaxed_constraint_sum(const Spectrum& spectrum, const Eigen::VectorXcd& lifting_projection) {
    if (lifting_projection.size() != spectrum.size())
        throw DomainError("relaxed_constraint_sum: projection length does not match spectrum");
    RelaxedSum out;
    const Eigen::Index n = spectrum.size();
    const Eigen::Index decade_start = n / 10;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Complex lambda = spectrum.eigenvalues[i];
        const double b2 = std::norm(lifting_projection[i]);
        if (b2 == 0.0)
            continue;
        if (lambda.real() == 0.0) {
            out.sum = std::numeric_limits<double>::infinity();
            out.last_decade_increment = out.sum;
            return out;
        }
        const double term = std::norm(lambda) / (lambda.real() * lambda.real()) * b2;
        out.sum += term;
        if (i >= decade_start)
            out.last_decade_increment += term;
    }
    return out;
}

}  // namespace rsiss
