#include <algorithm>

#include "rsiss/verifier.hpp"

namespace rsiss {

WeakSolutionResult weak_solution_by_approximation(const SystemDefinition& system, const ISSCertificate& certificate,
                                                  const ModalVector& X0, const DisturbanceSignal& dist,
                                                  const std::vector<double>& times, const WeakOptions& options) {
    if (options.levels < 2)
        throw InputError("weak solution needs at least two approximation levels");
    if (!(options.h0 > 0.0))
        throw InputError("mollifier scale must be positive");
    if (!certificate.is_finite())
        throw DomainError("certificate has infinite constants");
    dist.validate();

    WeakSolutionResult out;
    out.limit = integrate_modes(system, X0, dist, times, options.integrator);
    out.limit_report = iss_report(system, certificate, out.limit, dist);

    const BoundaryVector d0 = dist.d(0.0);
    const ModalVector tilde = X0 - lift_projection(system, d0);  // approximates X0 - B d(0), here exactly
    const double C0 = certificate.C0.value();
    const double C1 = certificate.C1.value();

    std::vector<DisturbanceSignal> approximants;
    double h = options.h0;
    for (int level = 0; level < options.levels; ++level, h *= 0.5) {
        approximants.push_back(mollify(dist, h, options.horizon));
        const DisturbanceSignal& dn = approximants.back();
        ApproximationRun run;
        run.level = level;
        run.h = h;
        run.X0 = tilde + lift_projection(system, dn.d(0.0));
        // B X0_n = d_n(0) in modal form: X0_n - B d_n(0) is the approximant of X0 - B d(0)
        run.compatibility_defect = (run.X0 - lift_projection(system, dn.d(0.0)) - tilde).norm();
        out.levels.push_back(integrate_modes(system, run.X0, dn, times, options.integrator));
        const Trajectory& traj = out.levels.back();
        for (Eigen::Index i = 0; i < traj.coeffs.cols(); ++i)
            run.sup_to_limit =
                std::max(run.sup_to_limit, state_norm(system, traj.coeffs.col(i) - out.limit.coeffs.col(i)));
        if (level > 0) {
            const Trajectory& prev = out.levels[out.levels.size() - 2];
            for (Eigen::Index i = 0; i < traj.coeffs.cols(); ++i)
                run.sup_to_previous =
                    std::max(run.sup_to_previous, state_norm(system, traj.coeffs.col(i) - prev.coeffs.col(i)));
            const DisturbanceSignal& dp = approximants[approximants.size() - 2];
            const auto d_gap = running_sup([&](double t) { return (dn.d(t) - dp.d(t)).norm(); }, times, {});
            const double x0_gap = state_norm(system, run.X0 - out.runs.back().X0);
            // U is not mollified, so its term vanishes
            run.cauchy_bound = C0 * x0_gap + C1 * d_gap.back();
        }
        out.runs.push_back(std::move(run));
    }

    out.converged = true;
    out.cauchy_ok = true;
    for (std::size_t i = 1; i < out.runs.size(); ++i) {
        if (out.runs[i].sup_to_previous > out.runs[i].cauchy_bound)
            out.cauchy_ok = false;
        if (i >= 2 && !(out.runs[i].sup_to_previous < out.runs[i - 1].sup_to_previous))
            out.converged = false;
    }
    if (!out.converged)
        out.failure = "sup-distance between consecutive levels did not decrease";
    else if (!out.cauchy_ok)
        out.failure = "a level exceeded its certificate-derived Cauchy bound";
    return out;
}

}  // namespace rsiss
