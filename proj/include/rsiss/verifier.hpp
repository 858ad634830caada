#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsiss/certificates.hpp"
#include "rsiss/disturbance.hpp"
#include "rsiss/simulator.hpp"

namespace rsiss {

struct VerificationReport {
    std::vector<double> times;
    Eigen::VectorXd lhs;  // ||X(t)||_H
    Eigen::VectorXd rhs;  // certificate bound
    Eigen::VectorXd margins;
    double min_margin = 0.0;
    double rhs_scale = 0.0;  // max rhs, the scale of the roundoff allowance
    int n_violations = 0;
    /// Running (possibly faded) sups of ||d|| and ||U|| entering rhs.
    std::vector<double> sup_d, sup_U;
    std::optional<double> epsilon;  // set for the fading-memory bound
    double x0_norm = 0.0;

    bool passed() const { return n_violations == 0; }
};

/// A margin counts as a violation below -violation_tolerance * rhs_scale.
inline constexpr double violation_tolerance = 1e-9;

/// Compares a computed trajectory with the bound of `certificate`:
///   C0 e^{-kappa0 t} ||X0|| + C1 ||d||_{C0([0,t])} + C2 ||U||_{C0([0,t])},
/// or with epsilon the fading-memory form
///   C0 e^{-kappa0 t} ||X0|| + C1/(1-eps) sup e^{-eps kappa0 (t-tau)} ||d(tau)|| + (same for U).
VerificationReport iss_report(const SystemDefinition& system, const ISSCertificate& certificate,
                              const Trajectory& trajectory, const DisturbanceSignal& dist,
                              std::optional<double> epsilon = std::nullopt);

VerificationReport verify_iss(const SystemDefinition& system, const ISSCertificate& certificate,
                              const ModalVector& X0, const DisturbanceSignal& dist,
                              const std::vector<double>& times, const IntegratorOptions& options = {});

VerificationReport verify_fading_memory(const SystemDefinition& system, const ISSCertificate& certificate,
                                        const ModalVector& X0, const DisturbanceSignal& dist,
                                        const std::vector<double>& times, double epsilon,
                                        const IntegratorOptions& options = {});

struct CompatibilityShift {
    ModalVector X0;     // shifted initial coefficients
    ModalVector shift;  // b(d(0) - declared)
    double shift_norm = 0.0;
};

/// Makes X0 compatible with d(0) in modal form: X0 is taken to carry the
/// boundary value `declared`, and is shifted by b(d(0) - declared).
CompatibilityShift enforce_compatibility(const SystemDefinition& system, const ModalVector& X0,
                                         const BoundaryVector& declared, const DisturbanceSignal& dist);

/// Beam-specific context for a campaign: initial states drawn as real states
/// in the (psi_n, psi_n^d) basis and distributed loads of the form (0, u).
struct BeamContext {
    double alpha = 2.0;
    int N = 64;
};

struct CertificateCase {
    std::string label;
    ISSCertificate certificate;
    std::optional<double> fading_epsilon;
};

struct CampaignConfig {
    int runs = 200;
    std::uint64_t seed = 1;
    double t_final = 5.0;
    double dt = 0.01;  // sample grid; the integrator substeps by `integrator.max_step`
    double amplitude = 1.0;
    std::vector<DisturbanceKind> kinds{DisturbanceKind::trig_poly, DisturbanceKind::spline_C2};
    bool with_load = true;
    bool stationary_probes = true;
    IntegratorOptions integrator;
};

struct CaseResult {
    std::string label;
    double min_margin = 0.0;
    /// min over runs of margin / rhs_scale
    double min_relative_margin = 0.0;
    int n_violations = 0;
    int runs = 0;
    VerificationReport worst;
};

struct CampaignResult {
    std::vector<CaseResult> cases;
    int runs = 0;

    int total_violations() const;
    double min_margin() const;
};

/// thm1, thm2, relaxed (when available) and, for the beam, v1, v2 with a
/// paired C2; fading-memory variants of thm1 and thm2 for each epsilon.
std::vector<CertificateCase> default_certificate_cases(const SystemDefinition& system,
                                                       const std::optional<BeamContext>& beam,
                                                       const std::vector<double>& fading_epsilons = {0.0, 0.5});

/// Seeded draws of (X0, d, U), each simulated once and checked against every
/// case, plus one stationary run per channel (d = e_k, X0 = X_{e,k}).
CampaignResult run_campaign(const SystemDefinition& system, const std::vector<CertificateCase>& cases,
                            const CampaignConfig& config, const std::optional<BeamContext>& beam = std::nullopt);

struct ApproximationRun {
    int level = 0;
    double h = 0.0;             // mollifier scale
    ModalVector X0;             // X0_n = (X0 - B d(0)) + B d_n(0)
    double compatibility_defect = 0.0;
    double sup_to_limit = 0.0;  // sup_t ||X_n(t) - X(t)||
    double sup_to_previous = 0.0;
    double cauchy_bound = 0.0;  // C0 ||X0_n - X0_{n-1}|| + C1 ||d_n - d_{n-1}|| + C2 ||U_n - U_{n-1}||
};

struct WeakOptions {
    int levels = 4;
    double h0 = 0.2;
    double horizon = 5.0;  // constant extension of d beyond this time
    IntegratorOptions integrator;
};

struct WeakSolutionResult {
    /// Variation-of-constants formula evaluated with the original (C0) data.
    Trajectory limit;
    std::vector<Trajectory> levels;
    std::vector<ApproximationRun> runs;
    bool converged = false;  // consecutive sup-distances strictly decrease
    bool cauchy_ok = false;  // each within its certificate-derived bound
    std::string failure;
    VerificationReport limit_report;
};

/// Weak solution as the limit of classical solutions driven by mollified
/// disturbances d_n (scales h0, h0/2, ...) with compatible initial states.
WeakSolutionResult weak_solution_by_approximation(const SystemDefinition& system, const ISSCertificate& certificate,
                                                  const ModalVector& X0, const DisturbanceSignal& dist,
                                                  const std::vector<double>& times, const WeakOptions& options = {});

}  // namespace rsiss
