#include "rsiss/certificates.hpp"

#include <algorithm>
#include <cmath>

#include "rsiss/beam.hpp"

namespace rsiss {

std::string to_string(CertificateMethod method) {
    switch (method) {
        case CertificateMethod::thm1: return "thm1";
        case CertificateMethod::thm2: return "thm2";
        case CertificateMethod::relaxed: return "relaxed";
        case CertificateMethod::beam_v1: return "beam-v1";
        case CertificateMethod::beam_v2: return "beam-v2";
        case CertificateMethod::beam_c2_tight: return "beam-c2-tight";
        case CertificateMethod::combined: return "combined";
    }
    return "unknown";
}

CertificateMethod method_from_string(const std::string& name) {
    for (auto m : {CertificateMethod::thm1, CertificateMethod::thm2, CertificateMethod::relaxed,
                   CertificateMethod::beam_v1, CertificateMethod::beam_v2, CertificateMethod::beam_c2_tight,
                   CertificateMethod::combined})
        if (to_string(m) == name)
            return m;
    throw InputError("unknown certificate method: " + name);
}

bool ISSCertificate::is_finite() const {
    return C0.is_finite() && C1.is_finite() && (!C2 || C2->is_finite());
}

namespace {

ConstraintVerdict require_verdict(const SystemDefinition& system, const char* method) {
    const ConstraintVerdict v = check_constraints(system.spectrum);
    if (!v.passes)
        throw CertificateUnavailable(std::string(method) +
                                     ": eigenvalue constraints fail (need omega0 < 0 and finite zeta); "
                                     "see certificate_relaxed");
    return v;
}

ISSCertificate base_certificate(const SystemDefinition& system, double kappa0, CertificateMethod method) {
    ISSCertificate c;
    c.method = method;
    c.kappa0 = kappa0;
    const double cond = system.riesz.condition();
    c.C0 = ExtendedReal(cond);
    c.C2 = ExtendedReal(cond / kappa0);
    return c;
}

// s = sqrt(alpha^2 - 1), alpha - s computed as 1 / (alpha + s)
double slow_rate(double alpha) { return 1.0 / (alpha + std::sqrt(alpha * alpha - 1.0)); }

}  // namespace

ISSCertificate certificate_thm1(const SystemDefinition& system) {
    const ConstraintVerdict v = require_verdict(system, "thm1");
    ISSCertificate c = base_certificate(system, v.kappa0, CertificateMethod::thm1);
    double lift_sq = 0.0;
    for (int k = 0; k < system.m; ++k)
        lift_sq += std::pow(lift_norm(system, k), 2);
    const double cond = system.riesz.condition();
    const double c1 = cond * (ab_operator_norm(system) / v.kappa0 +
                              v.zeta.value() * system.c_E * std::sqrt(system.m * lift_sq));
    c.C1 = ExtendedReal(c1);
    c.degenerate = !(c1 > 0.0);
    return c;
}

ISSCertificate certificate_thm2(const SystemDefinition& system) {
    const ConstraintVerdict v = require_verdict(system, "thm2");
    ISSCertificate c = base_certificate(system, v.kappa0, CertificateMethod::thm2);
    double energy = 0.0;
    for (int k = 0; k < system.m; ++k)
        energy += std::pow(stationary_norm(system, k), 2);
    const double cond = system.riesz.condition();
    const double c1 = v.zeta.value() * system.c_E * std::sqrt(system.m * cond * cond * energy);
    c.C1 = ExtendedReal(c1);
    c.degenerate = !(c1 > 0.0);
    return c;
}

ISSCertificate certificate_relaxed(const SystemDefinition& system, const RelaxedOptions& options) {
    const double omega0 = growth_bound(system.spectrum);
    if (!(omega0 < 0.0))
        throw CertificateUnavailable("relaxed: growth bound is not negative");
    const double kappa0 = -omega0;
    double total = 0.0;
    for (int k = 0; k < system.m; ++k) {
        const RelaxedSum s = relaxed_constraint_sum(system.spectrum, system.b.col(k));
        if (!std::isfinite(s.sum) || s.relative_increment() > options.convergence_threshold)
            throw CertificateUnavailable("relaxed: weighted lifting sum does not look convergent for channel " +
                                         std::to_string(k + 1));
        total += s.sum;
    }
    ISSCertificate c = base_certificate(system, kappa0, CertificateMethod::relaxed);
    const double cond = system.riesz.condition();
    const double c1 = cond * ab_operator_norm(system) / kappa0 +
                      system.c_E * std::sqrt(system.m * system.riesz.M_R * total);
    c.C1 = ExtendedReal(c1);
    c.degenerate = !(c1 > 0.0);
    return c;
}

ISSCertificate beam_certificates_v1(double alpha) {
    if (!(alpha > 0.0))
        throw DomainError("beam_certificates_v1: alpha must be positive");
    ISSCertificate c;
    c.method = CertificateMethod::beam_v1;
    const double pi2 = pi * pi;
    const double sqrt3 = std::sqrt(3.0);
    if (alpha == 1.0) {
        c.kappa0 = pi2;
        c.C0 = c.C1 = ExtendedReal::infinity();
        c.C2 = ExtendedReal::infinity();
        return c;
    }
    if (alpha < 1.0) {
        const double r = std::sqrt((1.0 + alpha) / (1.0 - alpha));
        c.kappa0 = alpha * pi2;
        c.C0 = ExtendedReal(r);
        c.C1 = ExtendedReal(2.0 / (alpha * sqrt3) * r);
        c.C2 = ExtendedReal(r / (alpha * pi2));
    } else {
        const double r = std::sqrt((alpha + 1.0) / (alpha - 1.0));
        c.kappa0 = slow_rate(alpha) * pi2;
        c.C0 = ExtendedReal(r);
        c.C1 = ExtendedReal(2.0 / sqrt3 * r);
        c.C2 = ExtendedReal(r / c.kappa0);
    }
    return c;
}

TightC2 beam_c2_tight(double alpha, int N) {
    if (!(alpha > 1.0))
        throw DomainError("beam_c2_tight: requires alpha > 1");
    if (N < 1)
        throw DomainError("beam_c2_tight: requires N >= 1");
    TightC2 out;
    double sum = 0.0;
    // sum from the high frequencies down keeps the small terms from being absorbed
    const auto ms = beam::modes(alpha, N);
    for (auto it = ms.rbegin(); it != ms.rend(); ++it) {
        const beam::SineProfile psi = it->psi();
        const double l2_sq = 0.5 * std::norm(psi.amp2);
        sum += l2_sq / std::pow(it->lambda.real(), 2);
    }
    out.series = std::sqrt(beam::riesz_bounds(alpha).M_R * sum);
    out.closed_form = 1.0 / (3.0 * std::sqrt(10.0)) * std::sqrt(alpha / (alpha - 1.0));
    return out;
}

ISSCertificate beam_certificates_v2(double alpha, double epsilon) {
    if (!(alpha > 0.0))
        throw DomainError("beam_certificates_v2: alpha must be positive");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw DomainError("beam_certificates_v2: epsilon must lie in (0, 1)");
    ISSCertificate c;
    c.method = CertificateMethod::beam_v2;
    c.epsilon = epsilon;
    const double pi2 = pi * pi;
    const double sqrt3 = std::sqrt(3.0);
    const double inv_e = std::exp(-1.0);
    if (alpha >= 1.0) {
        const double s = std::sqrt(alpha * alpha - 1.0);
        const double rate = slow_rate(alpha);
        c.kappa0 = (1.0 - epsilon) * rate * pi2;
        c.C0 = ExtendedReal(2.0 * std::max(1.0, inv_e * (alpha + 1.0) / (epsilon * rate)));
        c.C1 = ExtendedReal(4.0 * (alpha + 1.0) * (2.0 * alpha - s) / (sqrt3 * rate * rate));
    } else {
        c.kappa0 = (1.0 - epsilon) * alpha * pi2;
        c.C0 = ExtendedReal(2.0 * std::max(1.0, inv_e * (alpha + 1.0) / (epsilon * alpha)));
        c.C1 = ExtendedReal(8.0 * (alpha + 1.0) / (sqrt3 * alpha));
    }
    return c;
}

namespace {

ExtendedReal paired_c2(double alpha, std::string& source) {
    if (alpha > 1.0) {
        source = to_string(CertificateMethod::beam_c2_tight);
        return ExtendedReal(beam_c2_tight(alpha, 1).closed_form);
    }
    source = to_string(CertificateMethod::beam_v1);
    return *beam_certificates_v1(alpha).C2;
}

}  // namespace

ISSCertificate beam_v2_with_c2(double alpha, double epsilon) {
    ISSCertificate c = beam_certificates_v2(alpha, epsilon);
    c.C2 = paired_c2(alpha, c.c2_source);
    return c;
}

ISSCertificate beam_v1_with_tight_c2(double alpha) {
    ISSCertificate c = beam_certificates_v1(alpha);
    c.C2 = paired_c2(alpha, c.c2_source);
    return c;
}

ISSCertificate beam_combined(double alpha, double epsilon) {
    const ISSCertificate v1 = beam_certificates_v1(alpha);
    const ISSCertificate v2 = beam_certificates_v2(alpha, epsilon);
    ISSCertificate c = v1.C1 < v2.C1 ? v1 : v2;
    c.method = CertificateMethod::combined;
    c.C2 = paired_c2(alpha, c.c2_source);
    return c;
}

std::vector<CurvePoint> combined_c1_curve(const std::vector<double>& alpha_grid, double epsilon) {
    std::vector<CurvePoint> out;
    out.reserve(alpha_grid.size());
    for (double alpha : alpha_grid) {
        if (!(alpha > 0.0))
            throw DomainError("combined_c1_curve: alpha must be positive");
        CurvePoint p;
        p.alpha = alpha;
        p.C1_v1 = beam_certificates_v1(alpha).C1;
        const ISSCertificate v2 = beam_certificates_v2(alpha, epsilon);
        p.C1_v2 = v2.C1.value();
        p.C1_min = p.C1_v1 < v2.C1 ? p.C1_v1.value() : p.C1_v2;
        p.C0_v2 = v2.C0.value();
        p.C0_v2_best = p.C0_v2;
        for (int i = 1; i <= 9; ++i)
            p.C0_v2_best = std::min(p.C0_v2_best, beam_certificates_v2(alpha, 0.1 * i).C0.value());
        out.push_back(p);
    }
    return out;
}

std::pair<std::size_t, std::size_t> v2_better_range(const std::vector<CurvePoint>& curve) {
    std::optional<std::size_t> first, last;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const bool better = ExtendedReal(curve[i].C1_v2) < curve[i].C1_v1;
        if (better) {
            if (last && *last + 1 != i)
                throw DomainError("v2-better region is not a single interval");
            if (!first)
                first = i;
            last = i;
        }
    }
    if (!first)
        throw DomainError("v2 never beats v1 on this grid");
    return {*first, *last};
}

std::pair<double, double> c1_crossover_points(double tolerance) {
    auto gap = [](double alpha) {
        return beam_certificates_v1(alpha).C1.value() - beam_certificates_v2(alpha).C1.value();
    };
    auto bisect = [&](double lo, double hi) {
        double glo = gap(lo);
        while (hi - lo > tolerance) {
            const double mid = 0.5 * (lo + hi);
            const double gmid = gap(mid);
            if ((gmid < 0.0) == (glo < 0.0)) {
                lo = mid;
                glo = gmid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };
    // v1 wins at 0.5 and 2, v2 wins arbitrarily close to 1
    return {bisect(0.5, 1.0 - 1e-9), bisect(1.0 + 1e-9, 2.0)};
}

}  // namespace rsiss
