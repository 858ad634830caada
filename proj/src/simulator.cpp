#include "rsiss/simulator.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>

#include "rsiss/phi_functions.hpp"

namespace rsiss {

namespace {

void require_finite(const ModalVector& v, double s) {
    if (!v.allFinite())
        throw InputError("non-finite disturbance sample at t = " + std::to_string(s));
}

void require_grid(const std::vector<double>& times) {
    if (times.empty())
        throw InputError("time grid is empty");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw InputError("time grid must be strictly increasing");
}

}  // namespace

Eigen::MatrixXcd propagate_modes(const Eigen::VectorXcd& lambda, const ModalVector& c0, const ModalForcing& g,
                                 const std::vector<double>& times, const IntegratorOptions& options) {
    require_grid(times);
    if (c0.size() != lambda.size())
        throw DomainError("initial coefficients do not match the spectrum");
    if (!(options.max_step > 0.0))
        throw InputError("integrator step must be positive");
    const Eigen::Index n = lambda.size();

    struct Weights {
        Eigen::VectorXcd decay, w0, wm, w1;
    };
    // uniform grids reuse one set of weights
    std::map<double, Weights> cache;
    auto weights_for = [&](double h) -> const Weights& {
        auto it = cache.find(h);
        if (it != cache.end())
            return it->second;
        Weights w{Eigen::VectorXcd(n), Eigen::VectorXcd(n), Eigen::VectorXcd(n), Eigen::VectorXcd(n)};
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto q = exponential_quadrature_weights<Complex>(lambda[i], h);
            w.decay[i] = std::exp(lambda[i] * h);
            w.w0[i] = q[0];
            w.wm[i] = q[1];
            w.w1[i] = q[2];
        }
        if (cache.size() > 64)
            cache.clear();
        return cache.emplace(h, std::move(w)).first->second;
    };

    Eigen::MatrixXcd out(n, static_cast<Eigen::Index>(times.size()));
    ModalVector c = c0;
    out.col(0) = c;
    ModalVector g0 = g(times[0]);
    require_finite(g0, times[0]);
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double a = times[i - 1], b = times[i];
        const int steps = std::max(1, static_cast<int>(std::ceil((b - a) / options.max_step - 1e-9)));
        const double h = (b - a) / steps;
        const Weights& w = weights_for(h);
        for (int s = 0; s < steps; ++s) {
            const double s0 = a + s * h;
            const double s1 = s + 1 == steps ? b : a + (s + 1) * h;
            const ModalVector gm = g(s0 + 0.5 * h);
            const ModalVector g1 = g(s1);
            require_finite(gm, s0 + 0.5 * h);
            require_finite(g1, s1);
            c = w.decay.cwiseProduct(c) + w.w0.cwiseProduct(g0) + w.wm.cwiseProduct(gm) + w.w1.cwiseProduct(g1);
            g0 = g1;
        }
        out.col(static_cast<Eigen::Index>(i)) = c;
    }
    return out;
}

namespace {

Eigen::VectorXd norms_of(const SystemDefinition& system, const Eigen::MatrixXcd& coeffs) {
    Eigen::VectorXd norms(coeffs.cols());
    for (Eigen::Index i = 0; i < coeffs.cols(); ++i)
        norms[i] = state_norm(system, coeffs.col(i));
    return norms;
}

void check_inputs(const SystemDefinition& system, const ModalVector& X0, const DisturbanceSignal& dist) {
    dist.validate();
    if (dist.m != system.m)
        throw DomainError("disturbance dimension does not match the system");
    if (X0.size() != system.modes())
        throw DomainError("initial coefficients do not match the system");
}

}  // namespace

Trajectory integrate_modes(const SystemDefinition& system, const ModalVector& X0, const DisturbanceSignal& dist,
                           const std::vector<double>& times, const IntegratorOptions& options) {
    check_inputs(system, X0, dist);
    const Eigen::VectorXcd& lambda = system.spectrum.eigenvalues;
    // -lambda_n b_n + a_n, applied to d(s)
    const Eigen::MatrixXcd K = system.a - lambda.asDiagonal() * system.b;
    ModalForcing g = [&](double s) -> ModalVector {
        ModalVector out = K * dist.d(s);
        if (dist.has_load())
            out += dist.U_modal(s);
        return out;
    };
    Trajectory traj;
    traj.times = times;
    traj.coeffs = propagate_modes(lambda, X0, g, times, options);
    traj.norms = norms_of(system, traj.coeffs);
    return traj;
}

Trajectory mild_trajectory(const SystemDefinition& system, const ModalVector& X0, const DisturbanceSignal& dist,
                           const std::vector<double>& times, const IntegratorOptions& options) {
    check_inputs(system, X0, dist);
    if (dist.smoothness == Smoothness::C0 || !dist.has_derivative())
        throw InputError("mild solution formula needs the exact derivative of d (C1 or C2 disturbance)");
    const Eigen::VectorXcd& lambda = system.spectrum.eigenvalues;
    ModalForcing g = [&](double s) -> ModalVector {
        ModalVector out = system.a * dist.d(s) - system.b * dist.d_dot(s);
        if (dist.has_load())
            out += dist.U_modal(s);
        return out;
    };
    const ModalVector shifted = X0 - system.b * dist.d(times.front());
    Trajectory traj;
    traj.times = times;
    traj.coeffs = propagate_modes(lambda, shifted, g, times, options);
    for (std::size_t i = 0; i < times.size(); ++i)
        traj.coeffs.col(static_cast<Eigen::Index>(i)) += system.b * dist.d(times[i]);
    traj.norms = norms_of(system, traj.coeffs);
    return traj;
}

ModalVector mild_solution(const SystemDefinition& system, const ModalVector& X0, const DisturbanceSignal& dist,
                          double t, const IntegratorOptions& options) {
    if (!(t >= 0.0))
        throw InputError("mild_solution: t must be nonnegative");
    if (t == 0.0) {
        check_inputs(system, X0, dist);
        return X0;
    }
    return mild_trajectory(system, X0, dist, {0.0, t}, options).at(1);
}

std::vector<double> uniform_grid(double t_final, double dt, double t0) {
    if (!(dt > 0.0) || !(t_final > t0))
        throw InputError("time grid needs dt > 0 and t_final > t0");
    const auto n = static_cast<long>(std::ceil((t_final - t0) / dt - 1e-9));
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(n + 1));
    for (long i = 0; i < n; ++i)
        times.push_back(t0 + static_cast<double>(i) * dt);
    times.push_back(t_final);
    return times;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out, bool with_coeffs) {
    out << "t,norm_H";
    if (with_coeffs)
        for (Eigen::Index k = 0; k < traj.coeffs.rows(); ++k)
            out << ",re_c_" << k + 1 << ",im_c_" << k + 1;
    out << '\n' << std::setprecision(17);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto col = static_cast<Eigen::Index>(i);
        out << traj.times[i] << ',' << traj.norms[col];
        if (with_coeffs)
            for (Eigen::Index k = 0; k < traj.coeffs.rows(); ++k)
                out << ',' << traj.coeffs(k, col).real() << ',' << traj.coeffs(k, col).imag();
        out << '\n';
    }
}

void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path, bool with_coeffs) {
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write " + path.string());
    write_trajectory_csv(traj, out, with_coeffs);
}

}  // namespace rsiss
