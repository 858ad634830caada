#include "rsiss/disturbance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "rsiss/beam.hpp"
#include "rsiss/quadrature.hpp"

namespace rsiss {

std::string to_string(Smoothness s) {
    switch (s) {
        case Smoothness::C0: return "C0";
        case Smoothness::C1: return "C1";
        case Smoothness::C2: return "C2";
    }
    return "?";
}

std::string to_string(Representation r) {
    switch (r) {
        case Representation::closed_form: return "closed_form";
        case Representation::trig_poly: return "trig_poly";
        case Representation::piecewise_linear: return "piecewise_linear";
        case Representation::spline: return "spline";
    }
    return "?";
}

std::string to_string(DisturbanceKind kind) {
    switch (kind) {
        case DisturbanceKind::trig_poly: return "trig";
        case DisturbanceKind::spline_C2: return "spline";
        case DisturbanceKind::piecewise_linear_C0: return "pwl";
        case DisturbanceKind::constant: return "const";
    }
    return "?";
}

DisturbanceKind disturbance_kind_from_string(const std::string& name) {
    for (auto k : {DisturbanceKind::trig_poly, DisturbanceKind::spline_C2, DisturbanceKind::piecewise_linear_C0,
                   DisturbanceKind::constant})
        if (to_string(k) == name)
            return k;
    throw InputError("unknown disturbance kind: " + name + " (expected trig, spline, pwl or const)");
}

BoundaryVector DisturbanceSignal::derivative(double t) const {
    if (smoothness == Smoothness::C0 || !d_dot)
        throw UnsupportedOperation("disturbance is tagged C0 and has no derivative");
    return d_dot(t);
}

void DisturbanceSignal::validate() const {
    if (m < 1 || !d)
        throw InputError("disturbance needs a boundary signal of positive dimension");
    if (smoothness == Smoothness::C0 && (d_dot || d_ddot))
        throw InputError("C0 disturbance must not carry derivative evaluators");
    if (smoothness != Smoothness::C0 && !d_dot)
        throw InputError("C1/C2 disturbance needs an exact derivative");
    if (smoothness == Smoothness::C2 && !d_ddot)
        throw InputError("C2 disturbance needs an exact second derivative");
    if (representation == Representation::piecewise_linear && smoothness != Smoothness::C0)
        throw InputError("piecewise-linear disturbances are C0 only");
    if (static_cast<bool>(U_modal) != static_cast<bool>(U_norm))
        throw InputError("distributed disturbance needs both coefficients and norm");
}

DisturbanceSignal constant_disturbance(const BoundaryVector& e) {
    DisturbanceSignal s;
    s.m = static_cast<int>(e.size());
    s.smoothness = Smoothness::C2;
    s.representation = Representation::closed_form;
    s.d = [e](double) { return e; };
    const BoundaryVector zero = BoundaryVector::Zero(e.size());
    s.d_dot = [zero](double) { return zero; };
    s.d_ddot = s.d_dot;
    return s;
}

DisturbanceSignal zero_disturbance(int m) { return constant_disturbance(BoundaryVector::Zero(m)); }

namespace {

struct TrigPoly {
    Eigen::MatrixXd cos_c, sin_c;  // m x J
    Eigen::VectorXd offset;        // m
    Eigen::VectorXd omega;         // J

    BoundaryVector eval(double t, int order) const {
        Eigen::VectorXd out = order == 0 ? offset : Eigen::VectorXd::Zero(offset.size());
        for (Eigen::Index j = 0; j < omega.size(); ++j) {
            const double w = omega[j];
            const double c = std::cos(w * t), s = std::sin(w * t);
            // derivatives of cos: -w sin, -w^2 cos; of sin: w cos, -w^2 sin
            double fc = c, fs = s;
            if (order == 1) {
                fc = -w * s;
                fs = w * c;
            } else if (order == 2) {
                fc = -w * w * c;
                fs = -w * w * s;
            }
            out += cos_c.col(j) * fc + sin_c.col(j) * fs;
        }
        return out.cast<Complex>();
    }
};

// Periodic cubic spline through equally spaced knots, one per channel.
struct PeriodicSpline {
    double period = 1.0;
    Eigen::MatrixXd y;  // m x K
    Eigen::MatrixXd M;  // second derivatives at the knots

    PeriodicSpline(double p, Eigen::MatrixXd values) : period(p), y(std::move(values)) {
        const Eigen::Index K = y.cols();
        const double h = period / static_cast<double>(K);
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(K, K);
        for (Eigen::Index i = 0; i < K; ++i) {
            T(i, i) += 4.0;
            T(i, (i + 1) % K) += 1.0;
            T(i, (i + K - 1) % K) += 1.0;
        }
        Eigen::MatrixXd rhs(K, y.rows());
        for (Eigen::Index i = 0; i < K; ++i)
            rhs.row(i) = 6.0 / (h * h) * (y.col((i + K - 1) % K) - 2.0 * y.col(i) + y.col((i + 1) % K)).transpose();
        M = T.partialPivLu().solve(rhs).transpose();
    }

    BoundaryVector eval(double t, int order) const {
        const Eigen::Index K = y.cols();
        const double h = period / static_cast<double>(K);
        double tau = std::fmod(t, period);
        if (tau < 0.0)
            tau += period;
        auto i = static_cast<Eigen::Index>(std::floor(tau / h));
        i = std::clamp<Eigen::Index>(i, 0, K - 1);
        const Eigen::Index j = (i + 1) % K;
        const double u = tau / h - static_cast<double>(i);
        const double v = 1.0 - u;
        Eigen::VectorXd out;
        if (order == 0)
            out = v * y.col(i) + u * y.col(j) +
                  h * h / 6.0 * ((v * v * v - v) * M.col(i) + (u * u * u - u) * M.col(j));
        else if (order == 1)
            out = (y.col(j) - y.col(i)) / h + h / 6.0 * ((1.0 - 3.0 * v * v) * M.col(i) + (3.0 * u * u - 1.0) * M.col(j));
        else
            out = v * M.col(i) + u * M.col(j);
        return out.cast<Complex>();
    }
};

struct PiecewiseLinear {
    std::vector<double> knots;
    Eigen::MatrixXd values;  // m x knots

    BoundaryVector eval(double t) const {
        if (t <= knots.front())
            return values.col(0).cast<Complex>();
        if (t >= knots.back())
            return values.col(values.cols() - 1).cast<Complex>();
        const auto it = std::upper_bound(knots.begin(), knots.end(), t);
        const auto i = static_cast<Eigen::Index>(it - knots.begin()) - 1;
        const double u = (t - knots[static_cast<std::size_t>(i)]) /
                         (knots[static_cast<std::size_t>(i) + 1] - knots[static_cast<std::size_t>(i)]);
        return ((1.0 - u) * values.col(i) + u * values.col(i + 1)).cast<Complex>();
    }
};

Eigen::MatrixXd uniform_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Eigen::MatrixXd out(rows, cols);
    // column-major fill keeps the draw order independent of Eigen internals
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
            out(r, c) = dist(rng);
    return out;
}

}  // namespace

DisturbanceSignal make_disturbance(DisturbanceKind kind, std::uint64_t seed, double amplitude, int m,
                                   const DisturbanceOptions& options) {
    if (!(amplitude > 0.0))
        throw InputError("disturbance amplitude must be positive");
    if (m < 1)
        throw InputError("disturbance dimension must be positive");
    std::mt19937_64 rng(seed);
    DisturbanceSignal s;
    s.m = m;
    switch (kind) {
        case DisturbanceKind::constant: {
            const BoundaryVector e = (amplitude * uniform_matrix(rng, m, 1, -1.0, 1.0)).col(0).cast<Complex>();
            return constant_disturbance(e);
        }
        case DisturbanceKind::trig_poly: {
            auto p = std::make_shared<TrigPoly>();
            const int J = std::max(1, options.trig_terms);
            p->omega = uniform_matrix(rng, J, 1, 0.2, options.max_frequency).col(0);
            p->cos_c = uniform_matrix(rng, m, J, -1.0, 1.0);
            p->sin_c = uniform_matrix(rng, m, J, -1.0, 1.0);
            p->offset = uniform_matrix(rng, m, 1, -1.0, 1.0).col(0);
            // scale each channel so that sum of |coefficients| = amplitude
            for (int k = 0; k < m; ++k) {
                const double total = p->cos_c.row(k).cwiseAbs().sum() + p->sin_c.row(k).cwiseAbs().sum() +
                                     std::abs(p->offset[k]);
                const double scale = amplitude / total;
                p->cos_c.row(k) *= scale;
                p->sin_c.row(k) *= scale;
                p->offset[k] *= scale;
            }
            s.smoothness = Smoothness::C2;
            s.representation = Representation::trig_poly;
            s.d = [p](double t) { return p->eval(t, 0); };
            s.d_dot = [p](double t) { return p->eval(t, 1); };
            s.d_ddot = [p](double t) { return p->eval(t, 2); };
            return s;
        }
        case DisturbanceKind::spline_C2: {
            const int K = std::max(3, options.knots);
            auto p = std::make_shared<PeriodicSpline>(options.horizon, uniform_matrix(rng, m, K, -amplitude, amplitude));
            s.smoothness = Smoothness::C2;
            s.representation = Representation::spline;
            s.d = [p](double t) { return p->eval(t, 0); };
            s.d_dot = [p](double t) { return p->eval(t, 1); };
            s.d_ddot = [p](double t) { return p->eval(t, 2); };
            return s;
        }
        case DisturbanceKind::piecewise_linear_C0: {
            const int K = std::max(1, options.knots);
            auto p = std::make_shared<PiecewiseLinear>();
            for (int i = 0; i <= K; ++i)
                p->knots.push_back(options.horizon * i / K);
            p->values = uniform_matrix(rng, m, K + 1, -amplitude, amplitude);
            s.smoothness = Smoothness::C0;
            s.representation = Representation::piecewise_linear;
            s.breakpoints = p->knots;
            s.d = [p](double t) { return p->eval(t); };
            return s;
        }
    }
    throw InputError("unknown disturbance kind");
}

Eigen::VectorXd BeamLoad::sine_coeffs(double t) const {
    return amp.array() * (freq.array() * t + phase.array()).cos();
}

BeamLoad make_beam_load(std::uint64_t seed, double amplitude, int terms) {
    if (terms < 1)
        throw InputError("beam load needs at least one sine term");
    std::mt19937_64 rng(seed);
    BeamLoad load;
    load.amp = uniform_matrix(rng, terms, 1, -amplitude, amplitude).col(0);
    for (int j = 0; j < terms; ++j)
        load.amp[j] /= (j + 1);
    load.freq = uniform_matrix(rng, terms, 1, 0.2, 6.0).col(0);
    load.phase = uniform_matrix(rng, terms, 1, 0.0, 2.0 * pi).col(0);
    return load;
}

void attach_beam_load(DisturbanceSignal& signal, const BeamLoad& load, double alpha, int N) {
    const auto J = load.amp.size();
    // the projection is linear in the sine coefficients; tabulate it once
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(2 * N, J);
    for (Eigen::Index j = 0; j < J; ++j)
        P.col(j) = beam::load_modal_projection(alpha, N, Eigen::VectorXd::Unit(J, j));
    signal.U_sine = [load](double t) { return load.sine_coeffs(t); };
    signal.U_modal = [load, P](double t) -> ModalVector { return P * load.sine_coeffs(t).cast<Complex>(); };
    signal.U_norm = [load](double t) { return beam::load_norm(load.sine_coeffs(t)); };
}

void attach_modal_load(DisturbanceSignal& signal, const SystemDefinition& system, ModalSignal u) {
    auto sys = std::make_shared<SystemDefinition>(system);
    signal.U_sine = nullptr;
    signal.U_modal = u;
    signal.U_norm = [sys, u](double t) { return state_norm(*sys, u(t)); };
}

std::vector<double> running_sup(const ScalarSignal& f, const std::vector<double>& times,
                                const std::vector<double>& breakpoints, double rate, bool piecewise_convex,
                                int oversample) {
    std::vector<double> out(times.size(), 0.0);
    if (times.empty())
        return out;
    out[0] = f(times[0]);
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double a = times[i - 1], b = times[i];
        auto g = [&](double tau) { return std::exp(-rate * (b - tau)) * f(tau); };

        std::vector<double> pts{a, b};
        if (!(piecewise_convex && rate == 0.0))
            for (int j = 1; j < oversample; ++j)
                pts.push_back(a + (b - a) * j / oversample);
        for (double bp : breakpoints)
            if (bp > a && bp < b)
                pts.push_back(bp);
        std::sort(pts.begin(), pts.end());

        std::vector<double> vals(pts.size());
        std::size_t best = 0;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            vals[j] = g(pts[j]);
            if (vals[j] > vals[best])
                best = j;
        }
        double local = vals[best];
        if (!(piecewise_convex && rate == 0.0)) {
            // refine around every sampled local maximum, endpoints included
            const std::size_t last = pts.size() - 1;
            for (std::size_t j = 0; j <= last; ++j) {
                const std::size_t l = j == 0 ? 0 : j - 1, r = j == last ? last : j + 1;
                if (!(vals[j] >= vals[l] && vals[j] >= vals[r]))
                    continue;
                double lo = pts[l], hi = pts[r];
                double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
                double f1 = g(x1), f2 = g(x2);
                for (int it = 0; it < 60 && hi - lo > 1e-13 * (1.0 + std::abs(hi)); ++it) {
                    if (f1 < f2) {
                        lo = x1;
                        x1 = x2;
                        f1 = f2;
                        x2 = lo + golden * (hi - lo);
                        f2 = g(x2);
                    } else {
                        hi = x2;
                        x2 = x1;
                        f2 = f1;
                        x1 = hi - golden * (hi - lo);
                        f1 = g(x1);
                    }
                }
                local = std::max({local, f1, f2});
            }
        }
        out[i] = std::max(out[i - 1] * std::exp(-rate * (b - a)), local);
    }
    return out;
}

std::vector<double> running_sup_d(const DisturbanceSignal& signal, const std::vector<double>& times, double rate) {
    const bool convex = signal.representation == Representation::piecewise_linear;
    return running_sup([&](double t) { return signal.d(t).norm(); }, times, signal.breakpoints, rate, convex);
}

std::vector<double> running_sup_U(const DisturbanceSignal& signal, const std::vector<double>& times, double rate) {
    if (!signal.has_load())
        return std::vector<double>(times.size(), 0.0);
    return running_sup(signal.U_norm, times, {}, rate);
}

namespace {

struct Bump {
    double norm = 1.0;

    static double raw(double s) { return std::abs(s) < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0; }

    // rho and its first two derivatives, unnormalized
    static std::array<double, 3> with_derivatives(double s) {
        if (!(std::abs(s) < 1.0))
            return {0.0, 0.0, 0.0};
        const double q = 1.0 - s * s;
        const double r = std::exp(-1.0 / q);
        return {r, r * (-2.0 * s / (q * q)), r * (6.0 * s * s * s * s - 2.0) / (q * q * q * q)};
    }

    Bump() {
        CompositeGaussLegendre<double> quad(-1.0, 1.0, 64, 10);
        norm = quad.integrate([](double s) { return raw(s); });
    }
};

const Bump& bump() {
    static const Bump b;
    return b;
}

}  // namespace

DisturbanceSignal mollify(const DisturbanceSignal& signal, double h, double horizon) {
    if (!(h > 0.0) || !(horizon > 0.0))
        throw InputError("mollifier scale and horizon must be positive");
    signal.validate();
    std::vector<double> knots = signal.breakpoints;
    knots.push_back(0.0);
    knots.push_back(horizon);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    auto base = signal.d;
    const int m = signal.m;
    // int rho^(order)(s) dbar(t - h s) ds, split where t - h s crosses a knot
    auto convolve = [base, knots, h, horizon, m](double t, int order) -> BoundaryVector {
        std::vector<double> cuts{-1.0, 1.0};
        for (double k : knots) {
            const double s = (t - k) / h;
            if (s > -1.0 && s < 1.0)
                cuts.push_back(s);
        }
        std::sort(cuts.begin(), cuts.end());
        static const GaussLegendreRule<double> rule(10);
        BoundaryVector acc = BoundaryVector::Zero(m);
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            const double lo = cuts[c], hi = cuts[c + 1];
            const int panels = std::max(2, static_cast<int>(std::ceil((hi - lo) * 12.0)));
            const double width = (hi - lo) / panels;
            for (int p = 0; p < panels; ++p) {
                const double a = lo + p * width;
                for (int q = 0; q < rule.order(); ++q) {
                    const double s = a + 0.5 * width * (rule.nodes[q] + 1.0);
                    const double w = 0.5 * width * rule.weights[q];
                    const double tau = std::clamp(t - h * s, 0.0, horizon);
                    acc += (w * Bump::with_derivatives(s)[static_cast<std::size_t>(order)]) * base(tau);
                }
            }
        }
        return acc / (bump().norm * std::pow(h, order));
    };

    DisturbanceSignal out;
    out.m = m;
    out.smoothness = Smoothness::C2;
    out.representation = Representation::closed_form;
    out.d = [convolve](double t) { return convolve(t, 0); };
    out.d_dot = [convolve](double t) { return convolve(t, 1); };
    out.d_ddot = [convolve](double t) { return convolve(t, 2); };
    out.U_modal = signal.U_modal;
    out.U_norm = signal.U_norm;
    out.U_sine = signal.U_sine;
    return out;
}

}  // namespace rsiss
