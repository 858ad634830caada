#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rsiss/system.hpp"

namespace rsiss {

enum class CertificateMethod { thm1, thm2, relaxed, beam_v1, beam_v2, beam_c2_tight, combined };

std::string to_string(CertificateMethod method);
CertificateMethod method_from_string(const std::string& name);

/// Constants of the exponential ISS estimate
///   ||X(t)|| <= C0 e^{-kappa0 t} ||X0|| + C1 ||d||_{C0([0,t])} + C2 ||U||_{C0([0,t])}.
struct ISSCertificate {
    CertificateMethod method = CertificateMethod::thm1;
    double kappa0 = 0.0;
    ExtendedReal C0;
    ExtendedReal C1;
    std::optional<ExtendedReal> C2;  // not every method produces one
    std::optional<double> epsilon;
    /// C1 came out as zero: reported rather than clamped to a positive value.
    bool degenerate = false;
    /// Origin of C2 when it was paired in from another method.
    std::string c2_source;

    bool is_finite() const;
};

ISSCertificate certificate_thm1(const SystemDefinition& system);

/// C1 from the energy of the stationary states X_{e,k}.
ISSCertificate certificate_thm2(const SystemDefinition& system);

struct RelaxedOptions {
    /// Largest accepted last-decade increment relative to the whole sum.
    double convergence_threshold = 0.1;
};

ISSCertificate certificate_relaxed(const SystemDefinition& system, const RelaxedOptions& options = {});

/// Closed forms for the beam from the modal decomposition. At alpha = 1 the
/// constants are returned with the infinite marker.
ISSCertificate beam_certificates_v1(double alpha);

struct TightC2 {
    double series = 0.0;       // truncated at N frequencies
    double closed_form = 0.0;  // (1/(3 sqrt 10)) sqrt(alpha / (alpha - 1))
};

/// C2 for distributed loads of the form U = (0, u), alpha > 1.
TightC2 beam_c2_tight(double alpha, int N);

/// Constants from the coupled 2x2 decomposition; finite at alpha = 1.
/// No C2 is produced.
ISSCertificate beam_certificates_v2(double alpha, double epsilon = 0.5);

/// The v2 certificate with a C2 paired in: the tight series closed form for
/// alpha > 1, the v1 value for alpha < 1 (infinite at alpha = 1).
ISSCertificate beam_v2_with_c2(double alpha, double epsilon = 0.5);

/// The v1 certificate with the tight C2 (alpha > 1) in place of its own.
ISSCertificate beam_v1_with_tight_c2(double alpha);

/// min(v1, v2) in C1, with the matching C0 and kappa0, paired with a C2 as in
/// beam_v2_with_c2.
ISSCertificate beam_combined(double alpha, double epsilon = 0.5);

struct CurvePoint {
    double alpha = 0.0;
    ExtendedReal C1_v1;
    double C1_v2 = 0.0;
    double C1_min = 0.0;
    double C0_v2 = 0.0;       // at the requested epsilon
    double C0_v2_best = 0.0;  // min over epsilon in {0.1, ..., 0.9}
};

std::vector<CurvePoint> combined_c1_curve(const std::vector<double>& alpha_grid, double epsilon = 0.5);

/// Grid points where v2 beats v1, as the index range [first, last] of a
/// single interval. Throws DomainError if the region is empty or split.
std::pair<std::size_t, std::size_t> v2_better_range(const std::vector<CurvePoint>& curve);

/// Crossover points of the two C1 curves around alpha = 1, by bisection.
std::pair<double, double> c1_crossover_points(double tolerance = 1e-13);

}  // namespace rsiss
