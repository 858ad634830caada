#include "rsiss/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rsiss/beam.hpp"

namespace rsiss {

VerificationReport iss_report(const SystemDefinition& system, const ISSCertificate& certificate,
                              const Trajectory& trajectory, const DisturbanceSignal& dist,
                              std::optional<double> epsilon) {
    if (!certificate.is_finite())
        throw DomainError("certificate has infinite constants and bounds nothing");
    if (!(certificate.kappa0 > 0.0))
        throw DomainError("certificate decay rate must be positive");
    if (certificate.kappa0 > -growth_bound(system.spectrum) * (1.0 + 1e-12))
        throw DomainError("certificate decay rate exceeds the system's -omega0; certificate belongs to another system");
    if (epsilon && !(*epsilon >= 0.0 && *epsilon < 1.0))
        throw DomainError("fading-memory epsilon must lie in [0, 1)");
    if (dist.has_load() && !certificate.C2)
        throw DomainError("distributed disturbance present but the certificate has no C2");
    if (trajectory.times.empty())
        throw InputError("empty trajectory");

    const double eps = epsilon.value_or(0.0);
    const double rate = eps * certificate.kappa0;
    const double scale = 1.0 / (1.0 - eps);

    VerificationReport r;
    r.times = trajectory.times;
    r.epsilon = epsilon;
    r.lhs = trajectory.norms;
    r.x0_norm = trajectory.norms[0];
    r.sup_d = running_sup_d(dist, r.times, rate);
    r.sup_U = running_sup_U(dist, r.times, rate);

    const double C0 = certificate.C0.value();
    const double C1 = certificate.C1.value();
    const double C2 = certificate.C2 ? certificate.C2->value() : 0.0;
    const auto n = static_cast<Eigen::Index>(r.times.size());
    r.rhs.resize(n);
    const double t0 = r.times.front();
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto s = static_cast<std::size_t>(i);
        r.rhs[i] = C0 * std::exp(-certificate.kappa0 * (r.times[s] - t0)) * r.x0_norm +
                   scale * (C1 * r.sup_d[s] + C2 * r.sup_U[s]);
    }
    r.margins = r.rhs - r.lhs;
    r.min_margin = r.margins.minCoeff();
    r.rhs_scale = r.rhs.maxCoeff();
    const double allowance = violation_tolerance * std::max(r.rhs_scale, std::numeric_limits<double>::min());
    r.n_violations = static_cast<int>((r.margins.array() < -allowance).count());
    return r;
}

VerificationReport verify_iss(const SystemDefinition& system, const ISSCertificate& certificate,
                              const ModalVector& X0, const DisturbanceSignal& dist,
                              const std::vector<double>& times, const IntegratorOptions& options) {
    return iss_report(system, certificate, integrate_modes(system, X0, dist, times, options), dist);
}

VerificationReport verify_fading_memory(const SystemDefinition& system, const ISSCertificate& certificate,
                                        const ModalVector& X0, const DisturbanceSignal& dist,
                                        const std::vector<double>& times, double epsilon,
                                        const IntegratorOptions& options) {
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw DomainError("fading-memory epsilon must lie in [0, 1)");
    return iss_report(system, certificate, integrate_modes(system, X0, dist, times, options), dist, epsilon);
}

CompatibilityShift enforce_compatibility(const SystemDefinition& system, const ModalVector& X0,
                                         const BoundaryVector& declared, const DisturbanceSignal& dist) {
    if (X0.size() != system.modes())
        throw DomainError("initial coefficients do not match the system");
    CompatibilityShift out;
    out.shift = lift_projection(system, dist.d(0.0) - declared);
    out.X0 = X0 + out.shift;
    out.shift_norm = state_norm(system, out.shift);
    return out;
}

int CampaignResult::total_violations() const {
    int total = 0;
    for (const auto& c : cases)
        total += c.n_violations;
    return total;
}

double CampaignResult::min_margin() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& c : cases)
        m = std::min(m, c.min_margin);
    return m;
}

std::vector<CertificateCase> default_certificate_cases(const SystemDefinition& system,
                                                       const std::optional<BeamContext>& beam,
                                                       const std::vector<double>& fading_epsilons) {
    std::vector<CertificateCase> cases;
    const bool constraints = check_constraints(system.spectrum).passes;
    if (constraints) {
        cases.push_back({"thm1", certificate_thm1(system), std::nullopt});
        cases.push_back({"thm2", certificate_thm2(system), std::nullopt});
    }
    try {
        cases.push_back({"relaxed", certificate_relaxed(system), std::nullopt});
    } catch (const CertificateUnavailable&) {
        // the relaxed sum does not settle at this truncation
    }
    if (beam) {
        cases.push_back({"beam-v1", beam_certificates_v1(beam->alpha), std::nullopt});
        cases.push_back({"beam-v2+c2", beam_v2_with_c2(beam->alpha), std::nullopt});
    }
    if (constraints)
        for (double eps : fading_epsilons) {
            const std::string suffix = "/fading eps=" + std::to_string(eps).substr(0, 4);
            cases.push_back({"thm1" + suffix, certificate_thm1(system), eps});
            cases.push_back({"thm2" + suffix, certificate_thm2(system), eps});
        }
    return cases;
}

namespace {

// Real initial state in the (psi_n, psi_n^d) basis, smooth enough to lie in D(A0).
ModalVector beam_initial_state(const BeamContext& beam, std::mt19937_64& rng, double amplitude) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ModalVector block(2 * beam.N);
    for (int n = 1; n <= beam.N; ++n) {
        const double w = amplitude / (static_cast<double>(n) * n * n);
        block[2 * (n - 1)] = w * u(rng);
        block[2 * (n - 1) + 1] = w * u(rng);
    }
    return beam::modal_from_block(beam.alpha, beam.N, block);
}

ModalVector generic_initial_state(const SystemDefinition& system, std::mt19937_64& rng, double amplitude) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ModalVector c(system.modes());
    for (Eigen::Index i = 0; i < c.size(); ++i)
        c[i] = amplitude * u(rng) / (1.0 + std::abs(system.spectrum.eigenvalues[i]));
    return c;
}

void record(CaseResult& cr, VerificationReport&& report) {
    const double rel = report.rhs_scale > 0.0 ? report.min_margin / report.rhs_scale : report.min_margin;
    cr.min_margin = cr.runs == 0 ? report.min_margin : std::min(cr.min_margin, report.min_margin);
    if (cr.runs == 0 || rel < cr.min_relative_margin) {
        cr.min_relative_margin = rel;
        cr.worst = std::move(report);
    }
    ++cr.runs;
}

}  // namespace

CampaignResult run_campaign(const SystemDefinition& system, const std::vector<CertificateCase>& cases,
                            const CampaignConfig& config, const std::optional<BeamContext>& beam) {
    if (config.runs < 0 || !(config.t_final > 0.0) || !(config.dt > 0.0) || !(config.amplitude > 0.0))
        throw InputError("campaign needs runs >= 0, t_final > 0, dt > 0, amplitude > 0");
    if (config.kinds.empty())
        throw InputError("campaign needs at least one disturbance kind");
    if (beam && system.modes() != 2 * beam->N)
        throw DomainError("beam context does not match the system");

    const std::vector<double> times = uniform_grid(config.t_final, config.dt);
    CampaignResult result;
    result.cases.resize(cases.size());
    for (std::size_t c = 0; c < cases.size(); ++c)
        result.cases[c].label = cases[c].label;

    auto check_all = [&](const Trajectory& traj, const DisturbanceSignal& dist) {
        for (std::size_t c = 0; c < cases.size(); ++c) {
            VerificationReport rep = iss_report(system, cases[c].certificate, traj, dist, cases[c].fading_epsilon);
            result.cases[c].n_violations += rep.n_violations;
            record(result.cases[c], std::move(rep));
        }
        ++result.runs;
    };

    DisturbanceOptions dopt;
    dopt.horizon = config.t_final;
    for (int run = 0; run < config.runs; ++run) {
        const std::uint64_t seed = config.seed * 1000003ULL + static_cast<std::uint64_t>(run);
        std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
        const DisturbanceKind kind = config.kinds[static_cast<std::size_t>(run) % config.kinds.size()];
        DisturbanceSignal dist = make_disturbance(kind, seed, config.amplitude, system.m, dopt);
        if (config.with_load && beam)
            attach_beam_load(dist, make_beam_load(seed + 7, config.amplitude, 3), beam->alpha, beam->N);
        const ModalVector tilde =
            beam ? beam_initial_state(*beam, rng, config.amplitude) : generic_initial_state(system, rng, config.amplitude);
        // tilde carries zero boundary value; shift it onto d(0)
        const CompatibilityShift X0 =
            enforce_compatibility(system, tilde, BoundaryVector::Zero(system.m), dist);
        check_all(integrate_modes(system, X0.X0, dist, times, config.integrator), dist);
    }
    if (config.stationary_probes)
        for (int k = 0; k < system.m; ++k) {
            const BoundaryVector e = config.amplitude * BoundaryVector::Unit(system.m, k);
            const DisturbanceSignal dist = constant_disturbance(e);
            check_all(integrate_modes(system, stationary_coeffs(system, e), dist, times, config.integrator), dist);
        }
    return result;
}

}  // namespace rsiss
