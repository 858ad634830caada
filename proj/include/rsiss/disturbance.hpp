#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rsiss/system.hpp"

namespace rsiss {

enum class Smoothness { C0, C1, C2 };
enum class Representation { closed_form, trig_poly, piecewise_linear, spline };

std::string to_string(Smoothness s);
std::string to_string(Representation r);

using VectorSignal = std::function<BoundaryVector(double)>;
using ModalSignal = std::function<ModalVector(double)>;
using ScalarSignal = std::function<double(double)>;

/// Boundary disturbance d(t) in K^m and, optionally, a distributed
/// disturbance U(t) given by its modal coefficients <U(t), psi_n>.
struct DisturbanceSignal {
    int m = 1;
    Smoothness smoothness = Smoothness::C2;
    Representation representation = Representation::closed_form;

    VectorSignal d;
    VectorSignal d_dot;   // required for C1 and C2
    VectorSignal d_ddot;  // required for C2

    /// Times where d is not smooth (piecewise-linear knots, extension points).
    std::vector<double> breakpoints;

    ModalSignal U_modal;  // empty when U = 0
    ScalarSignal U_norm;  // ||U(t)||_H
    /// Beam loads only: coefficients w_j(t) of U = (0, sum_j w_j sin(j pi x)).
    std::function<Eigen::VectorXd(double)> U_sine;

    bool has_load() const { return static_cast<bool>(U_modal); }
    bool has_derivative() const { return static_cast<bool>(d_dot); }

    /// d'(t); UnsupportedOperation for C0 signals.
    BoundaryVector derivative(double t) const;

    /// Throws InputError when the evaluators disagree with the smoothness tag.
    void validate() const;
};

enum class DisturbanceKind { trig_poly, spline_C2, piecewise_linear_C0, constant };

DisturbanceKind disturbance_kind_from_string(const std::string& name);
std::string to_string(DisturbanceKind kind);

struct DisturbanceOptions {
    /// Knot range of the spline (period) and piecewise-linear kinds.
    double horizon = 5.0;
    int knots = 10;
    int trig_terms = 3;
    double max_frequency = 6.0;
};

/// Seeded real-valued boundary disturbance whose channel values are of size
/// `amplitude` (exactly bounded by it except for spline overshoot).
DisturbanceSignal make_disturbance(DisturbanceKind kind, std::uint64_t seed, double amplitude, int m,
                                   const DisturbanceOptions& options = {});

/// Constant disturbance d(t) = e.
DisturbanceSignal constant_disturbance(const BoundaryVector& e);

DisturbanceSignal zero_disturbance(int m);

/// Beam load U = (0, sum_j amp_j cos(freq_j t + phase_j) sin(j pi x)).
struct BeamLoad {
    Eigen::VectorXd amp, freq, phase;

    Eigen::VectorXd sine_coeffs(double t) const;
};

BeamLoad make_beam_load(std::uint64_t seed, double amplitude, int terms);

/// Attaches a beam load to `signal`, with modal projections for the beam
/// with damping alpha and N frequencies.
void attach_beam_load(DisturbanceSignal& signal, const BeamLoad& load, double alpha, int N);

/// Attaches a distributed disturbance given directly by modal coefficients.
/// The norm is the exact norm in the span of the listed eigenvectors.
void attach_modal_load(DisturbanceSignal& signal, const SystemDefinition& system, ModalSignal u);

/// Running sups over a sample grid:
///   out[i] = sup_{tau in [times[0], times[i]]} e^{-rate (times[i] - tau)} f(tau).
/// Each interval is oversampled (breakpoints included) and interior maxima are
/// refined by golden-section search. With rate = 0 and `piecewise_convex`, the
/// sup of each piece is taken at its ends.
std::vector<double> running_sup(const ScalarSignal& f, const std::vector<double>& times,
                                const std::vector<double>& breakpoints, double rate = 0.0,
                                bool piecewise_convex = false, int oversample = 16);

std::vector<double> running_sup_d(const DisturbanceSignal& signal, const std::vector<double>& times,
                                  double rate = 0.0);
std::vector<double> running_sup_U(const DisturbanceSignal& signal, const std::vector<double>& times,
                                  double rate = 0.0);

/// Smooth approximation of a (possibly C0) disturbance at scale h: convolution
/// with the bump exp(-1/(1 - s^2)) on (-1, 1), d extended by constants outside
/// [0, horizon]. The result carries exact first and second derivatives.
DisturbanceSignal mollify(const DisturbanceSignal& signal, double h, double horizon);

}  // namespace rsiss
