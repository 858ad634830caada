#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "rsiss/beam.hpp"
#include "rsiss/beam_blocks.hpp"
#include "rsiss/certificates.hpp"
#include "rsiss/report_io.hpp"
#include "rsiss/system_io.hpp"
#include "rsiss/verifier.hpp"
#include "svg_plot.hpp"

namespace rsiss::cli {

using nlohmann::json;

json config_json(const RunConfig& c) {
    json j{{"command", c.command}, {"modes", c.modes}, {"seed", c.seed}, {"amplitude", c.amplitude}};
    if (c.alpha)
        j["alpha"] = *c.alpha;
    if (!c.system_path.empty())
        j["system"] = c.system_path;
    if (c.command == "simulate" || c.command == "verify") {
        j["t_final"] = c.t_final;
        j["dt"] = c.dt;
        j["max_step"] = c.max_step;
        j["dist"] = c.dist.value_or(c.command == "verify" && !c.weak ? "trig,spline" : (c.weak ? "pwl" : "trig"));
    }
    if (c.method)
        j["method"] = *c.method;
    if (c.epsilon)
        j["epsilon"] = *c.epsilon;
    if (c.command == "verify") {
        j["runs"] = c.runs;
        j["weak"] = c.weak;
        j["c1_scale"] = c.c1_scale;
    }
    if (c.command == "curve") {
        j["alpha_min"] = c.alpha_min;
        j["alpha_max"] = c.alpha_max;
        j["points"] = c.points;
    }
    if (c.command == "simulate") {
        j["ic"] = c.ic;
        j["blocks"] = c.blocks;
        j["load"] = c.load;
    }
    return j;
}

namespace {

void require_source(const RunConfig& c) {
    if (c.alpha.has_value() == !c.system_path.empty())
        throw InputError("give exactly one of --alpha and --system");
    if (c.alpha && !(*c.alpha > 0.0))
        throw InputError("--alpha must be positive");
    if (c.modes < 1)
        throw InputError("--modes must be at least 1");
}

SystemDefinition resolve_system(const RunConfig& c) {
    if (!c.system_path.empty())
        return load_system(c.system_path);
    if (*c.alpha == 1.0)
        throw InputError("alpha = 1: the beam is not Riesz-spectral there; use `constants` or `simulate --blocks`");
    return beam::beam_system(*c.alpha, c.modes);
}

std::optional<BeamContext> beam_context(const RunConfig& c) {
    if (c.alpha)
        return BeamContext{*c.alpha, c.modes};
    return std::nullopt;
}

std::string fmt(const ExtendedReal& x) {
    if (x.is_infinite())
        return "inf";
    std::ostringstream ss;
    ss << std::setprecision(10) << x.value();
    return ss.str();
}

std::string fmt(double x) { return fmt(ExtendedReal(x)); }

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f)
        throw InputError("cannot write " + path);
    return f;
}

ISSCertificate method_certificate(const std::string& method, const SystemDefinition& system,
                                  const std::optional<BeamContext>& beam, double epsilon) {
    const CertificateMethod m = method_from_string(method);
    switch (m) {
        case CertificateMethod::thm1: return certificate_thm1(system);
        case CertificateMethod::thm2: return certificate_thm2(system);
        case CertificateMethod::relaxed: return certificate_relaxed(system);
        default: break;
    }
    if (!beam)
        throw InputError("method " + method + " needs --alpha (beam only)");
    switch (m) {
        case CertificateMethod::beam_v1: return beam_certificates_v1(beam->alpha);
        case CertificateMethod::beam_v2: return beam_v2_with_c2(beam->alpha, epsilon);
        case CertificateMethod::combined: return beam_combined(beam->alpha, epsilon);
        default: throw InputError("method " + method + " is not selectable here");
    }
}

}  // namespace

int cmd_constants(const RunConfig& c, std::ostream& out) {
    require_source(c);
    const double eps = c.epsilon.value_or(0.5);
    struct Row {
        std::string label;
        std::optional<ISSCertificate> cert;
        std::string note;
    };
    std::vector<Row> rows;
    auto attempt = [&](const std::string& label, auto&& make) {
        try {
            rows.push_back({label, make(), ""});
        } catch (const CertificateUnavailable& e) {
            rows.push_back({label, std::nullopt, e.what()});
        } catch (const DomainError& e) {
            rows.push_back({label, std::nullopt, e.what()});
        }
    };

    std::optional<SystemDefinition> system;
    if (!c.system_path.empty() || *c.alpha != 1.0)
        system = resolve_system(c);
    if (system) {
        attempt("thm1", [&] { return certificate_thm1(*system); });
        attempt("thm2", [&] { return certificate_thm2(*system); });
        attempt("relaxed", [&] { return certificate_relaxed(*system); });
    } else {
        for (const char* label : {"thm1", "thm2", "relaxed"})
            rows.push_back({label, std::nullopt, "alpha = 1: the beam is not Riesz-spectral"});
    }
    json tight = nullptr;
    if (c.alpha) {
        const double a = *c.alpha;
        attempt("beam-v1", [&] { return beam_certificates_v1(a); });
        attempt("beam-v2", [&] { return beam_certificates_v2(a, eps); });
        attempt("beam-v2+c2", [&] { return beam_v2_with_c2(a, eps); });
        attempt("combined", [&] { return beam_combined(a, eps); });
        if (a > 1.0) {
            const TightC2 t = beam_c2_tight(a, c.modes);
            tight = {{"series", t.series}, {"closed_form", t.closed_form}, {"N", c.modes}};
        }
    }

    out << std::left << std::setw(12) << "method" << std::setw(16) << "kappa0" << std::setw(16) << "C0"
        << std::setw(16) << "C1" << std::setw(16) << "C2" << "flags\n";
    json certs = json::array();
    for (const Row& r : rows) {
        if (!r.cert) {
            out << std::setw(12) << r.label << "unavailable: " << r.note << '\n';
            certs.push_back({{"label", r.label}, {"available", false}, {"reason", r.note}});
            continue;
        }
        const ISSCertificate& k = *r.cert;
        std::string flags;
        if (k.C0.is_infinite() || k.C1.is_infinite())
            flags += "infinite ";
        if (k.degenerate)
            flags += "degenerate ";
        if (!k.c2_source.empty())
            flags += "C2 from " + k.c2_source;
        out << std::setw(12) << r.label << std::setw(16) << fmt(k.kappa0) << std::setw(16) << fmt(k.C0)
            << std::setw(16) << fmt(k.C1) << std::setw(16) << (k.C2 ? fmt(*k.C2) : std::string("-")) << flags
            << '\n';
        json j = certificate_to_json(k);
        j["label"] = r.label;
        j["available"] = true;
        certs.push_back(std::move(j));
    }
    if (!tight.is_null())
        out << "C2 tight: closed form " << fmt(tight["closed_form"].get<double>()) << ", series (N=" << c.modes
            << ") " << fmt(tight["series"].get<double>()) << '\n';

    const json report{{"config", config_json(c)}, {"certificates", certs}, {"c2_tight", tight}};
    if (!c.out.empty())
        write_json(report, c.out);
    return exit_pass;
}

int cmd_curve(const RunConfig& c, std::ostream& out) {
    std::vector<double> grid;
    if (c.alpha) {
        grid.push_back(*c.alpha);
    } else {
        if (!(c.alpha_min > 0.0) || !(c.alpha_max >= c.alpha_min) || c.points < 1)
            throw InputError("curve needs 0 < alpha-min <= alpha-max and points >= 1");
        for (int i = 0; i < c.points; ++i)
            grid.push_back(c.points == 1 ? c.alpha_min
                                         : c.alpha_min + (c.alpha_max - c.alpha_min) * i / (c.points - 1));
        // alpha = 1 is where v1 blows up; always sample it when in range
        if (c.alpha_min <= 1.0 && 1.0 <= c.alpha_max) {
            auto near = std::find_if(grid.begin(), grid.end(), [](double a) { return std::abs(a - 1.0) < 1e-12; });
            if (near != grid.end()) {
                *near = 1.0;
            } else {
                grid.push_back(1.0);
                std::sort(grid.begin(), grid.end());
            }
        }
    }
    const double eps = c.epsilon.value_or(0.5);
    const std::vector<CurvePoint> curve = combined_c1_curve(grid, eps);

    std::ostringstream csv;
    csv << "# " << config_json(c).dump() << '\n';
    csv << "alpha,c1_v1,c1_v2,c1_min\n" << std::setprecision(17);
    for (const CurvePoint& p : curve)
        csv << p.alpha << ',' << (p.C1_v1.is_infinite() ? std::string("inf") : [&] {
            std::ostringstream s;
            s << std::setprecision(17) << p.C1_v1.value();
            return s.str();
        }()) << ',' << p.C1_v2 << ',' << p.C1_min << '\n';

    std::optional<std::pair<std::size_t, std::size_t>> region;
    try {
        region = v2_better_range(curve);
    } catch (const DomainError&) {
    }
    const auto roots = c1_crossover_points();

    if (c.out.empty()) {
        out << csv.str();
    } else {
        open_out(c.out) << csv.str();
        out << "wrote " << c.out << '\n';
    }
    std::string svg_path = c.svg;
    if (svg_path.empty() && !c.out.empty()) {
        std::filesystem::path p(c.out);
        svg_path = p.replace_extension(".svg").string();
    }
    if (!svg_path.empty()) {
        PlotSeries v1{"C1 (modal)", {}, {}, "#888888", 1.0, true};
        PlotSeries v2{"C1 (2x2 blocks)", {}, {}, "#aa4444", 1.0, true};
        PlotSeries best{"min", {}, {}, "#1f3a93", 2.2, false};
        for (const CurvePoint& p : curve) {
            v1.x.push_back(p.alpha);
            v1.y.push_back(p.C1_v1.as_double());
            v2.x.push_back(p.alpha);
            v2.y.push_back(p.C1_v2);
            best.x.push_back(p.alpha);
            best.y.push_back(p.C1_min);
        }
        PlotOptions opt;
        opt.title = "ISS constant C1 of the damped beam";
        opt.x_label = "alpha";
        opt.y_label = "C1";
        opt.log_y = true;
        opt.y_max = 1e4;
        if (region) {
            opt.band_lo = curve[region->first].alpha;
            opt.band_hi = curve[region->second].alpha;
        }
        open_out(svg_path) << render_svg({v1, v2, best}, opt);
        out << "wrote " << svg_path << '\n';
    }
    if (region)
        out << "v2 below v1 on grid points alpha in [" << curve[region->first].alpha << ", "
            << curve[region->second].alpha << "]\n";
    out << std::setprecision(10) << "crossovers: " << roots.first << ", " << roots.second << '\n';
    return exit_pass;
}

namespace {

DisturbanceSignal simulate_disturbance(const RunConfig& c, int m) {
    if (c.dist == "zero")
        return zero_disturbance(m);
    DisturbanceOptions dopt;
    dopt.horizon = c.t_final;
    return make_disturbance(disturbance_kind_from_string(c.dist.value_or("trig")), c.seed, c.amplitude, m, dopt);
}

}  // namespace

int cmd_simulate(const RunConfig& c, std::ostream& out) {
    require_source(c);
    if (c.ic != "zero" && c.ic != "random" && c.ic != "stationary")
        throw InputError("--ic must be zero, random or stationary");
    const std::vector<double> times = uniform_grid(c.t_final, c.dt);
    IntegratorOptions iopt;
    iopt.max_step = std::min(c.max_step, c.dt);

    Trajectory traj;
    if (c.blocks) {
        if (!c.alpha)
            throw InputError("--blocks needs --alpha");
        const double a = *c.alpha;
        DisturbanceSignal dist = c.ic == "stationary" ? constant_disturbance(c.amplitude * BoundaryVector::Unit(2, 0))
                                                      : simulate_disturbance(c, 2);
        if (c.load)
            throw InputError("--load is not supported together with --blocks");
        ModalVector Z0 = ModalVector::Zero(2 * c.modes);
        const BoundaryVector d0 = dist.d(0.0);
        if (c.ic == "random") {
            std::mt19937_64 rng(c.seed ^ 0x5bd1e995ULL);
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            for (int n = 1; n <= c.modes; ++n) {
                Z0[2 * (n - 1)] = c.amplitude * u(rng) / (static_cast<double>(n) * n * n);
                Z0[2 * (n - 1) + 1] = c.amplitude * u(rng) / (static_cast<double>(n) * n * n);
            }
        }
        if (c.ic != "zero")
            for (int n = 1; n <= c.modes; ++n)
                Z0.segment<2>(2 * (n - 1)) += beam::stationary_block_projection(n, 0).cast<Complex>() * d0[0] +
                                              beam::stationary_block_projection(n, 1).cast<Complex>() * d0[1];
        traj = beam::integrate_beam_blocks(a, c.modes, Z0, dist, times, iopt);
    } else {
        const SystemDefinition system = resolve_system(c);
        DisturbanceSignal dist;
        ModalVector X0 = ModalVector::Zero(system.modes());
        if (c.ic == "stationary") {
            const BoundaryVector e = c.amplitude * BoundaryVector::Unit(system.m, 0);
            dist = constant_disturbance(e);
            X0 = stationary_coeffs(system, e);
        } else {
            dist = simulate_disturbance(c, system.m);
            if (c.load) {
                if (!c.alpha)
                    throw InputError("--load needs --alpha");
                attach_beam_load(dist, make_beam_load(c.seed + 7, c.amplitude, 3), *c.alpha, c.modes);
            }
            if (c.ic == "random") {
                std::mt19937_64 rng(c.seed ^ 0x5bd1e995ULL);
                std::uniform_real_distribution<double> u(-1.0, 1.0);
                if (c.alpha) {
                    ModalVector block(2 * c.modes);
                    for (int n = 1; n <= c.modes; ++n) {
                        block[2 * (n - 1)] = c.amplitude * u(rng) / (static_cast<double>(n) * n * n);
                        block[2 * (n - 1) + 1] = c.amplitude * u(rng) / (static_cast<double>(n) * n * n);
                    }
                    X0 = beam::modal_from_block(*c.alpha, c.modes, block);
                } else {
                    for (Eigen::Index i = 0; i < X0.size(); ++i)
                        X0[i] = c.amplitude * u(rng) / (1.0 + std::abs(system.spectrum.eigenvalues[i]));
                }
            }
            if (c.ic != "zero")
                X0 = enforce_compatibility(system, X0, BoundaryVector::Zero(system.m), dist).X0;
        }
        traj = integrate_modes(system, X0, dist, times, iopt);
    }

    std::ostringstream csv;
    csv << "# " << config_json(c).dump() << '\n';
    write_trajectory_csv(traj, csv, c.coeffs);
    if (c.out.empty()) {
        out << csv.str();
    } else {
        open_out(c.out) << csv.str();
        out << "wrote " << c.out << " (" << traj.times.size() << " samples)\n";
    }
    return exit_pass;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
    require_source(c);
    if (c.runs < 0)
        throw InputError("--runs must be nonnegative");
    if (!(c.c1_scale > 0.0))
        throw InputError("--c1-scale must be positive");
    if (c.epsilon && !(*c.epsilon >= 0.0 && *c.epsilon < 1.0))
        throw InputError("--epsilon must lie in [0, 1)");
    const SystemDefinition system = resolve_system(c);
    const std::optional<BeamContext> beam = beam_context(c);

    std::vector<CertificateCase> cases;
    if (c.method) {
        const ISSCertificate cert = method_certificate(*c.method, system, beam, 0.5);
        cases.push_back({*c.method, cert, std::nullopt});
        if (c.epsilon)
            cases.push_back({*c.method + "/fading", cert, *c.epsilon});
    } else {
        cases = default_certificate_cases(system, beam,
                                          c.epsilon ? std::vector<double>{*c.epsilon} : std::vector<double>{0.0, 0.5});
    }
    if (cases.empty())
        throw InputError("no certificate family applies to this system");
    for (auto& k : cases)
        k.certificate.C1 = ExtendedReal(k.certificate.C1.value() * c.c1_scale);

    CampaignConfig cc;
    cc.runs = c.runs;
    cc.seed = c.seed;
    cc.t_final = c.t_final;
    cc.dt = c.dt;
    cc.amplitude = c.amplitude;
    cc.integrator.max_step = std::min(c.max_step, c.dt);
    if (c.dist)
        cc.kinds = {disturbance_kind_from_string(*c.dist)};
    const CampaignResult result = run_campaign(system, cases, cc, beam);

    int code = result.total_violations() == 0 ? exit_pass : exit_violation;
    for (const CaseResult& k : result.cases)
        out << std::left << std::setw(28) << k.label << " runs " << k.runs << "  min margin " << std::setprecision(6)
            << k.min_margin << "  violations " << k.n_violations << '\n';

    json report = campaign_to_json(result, config_json(c));
    if (c.weak) {
        DisturbanceOptions dopt;
        dopt.horizon = c.t_final;
        const DisturbanceSignal dist =
            make_disturbance(disturbance_kind_from_string(c.dist.value_or("pwl")), c.seed, c.amplitude, system.m, dopt);
        const ISSCertificate cert = c.method ? cases.front().certificate : cases.front().certificate;
        WeakOptions wopt;
        wopt.horizon = c.t_final;
        wopt.integrator = cc.integrator;
        ModalVector X0 = ModalVector::Zero(system.modes());
        if (beam) {
            std::mt19937_64 rng(c.seed ^ 0x5bd1e995ULL);
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            ModalVector block(2 * beam->N);
            for (int n = 1; n <= beam->N; ++n) {
                block[2 * (n - 1)] = c.amplitude * u(rng) / (static_cast<double>(n) * n * n);
                block[2 * (n - 1) + 1] = c.amplitude * u(rng) / (static_cast<double>(n) * n * n);
            }
            X0 = beam::modal_from_block(beam->alpha, beam->N, block);
        }
        const WeakSolutionResult weak =
            weak_solution_by_approximation(system, cert, X0, dist, uniform_grid(c.t_final, c.dt), wopt);
        report["weak"] = weak_to_json(weak);
        out << "weak solution (" << cases.front().label << "): ";
        for (const ApproximationRun& r : weak.runs)
            out << "h=" << r.h << " d=" << r.sup_to_previous << " bound=" << r.cauchy_bound << "; ";
        out << (weak.converged && weak.cauchy_ok ? "converged" : weak.failure) << '\n';
        if (!weak.converged || !weak.cauchy_ok || weak.limit_report.n_violations > 0)
            code = exit_violation;
    }
    if (!c.out.empty())
        write_json(report, c.out);
    out << (code == exit_pass ? "PASS" : "FAIL") << ": " << result.total_violations() << " violations over "
        << result.runs << " runs\n";
    return code;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Riesz-spectral boundary control systems: ISS certificates, simulation, verification"};
    app.require_subcommand(1);
    RunConfig c;

    auto source_opts = [&](CLI::App* sub) {
        sub->add_option("--alpha", c.alpha, "beam damping alpha > 0");
        sub->add_option("--system", c.system_path, "system JSON file")->check(CLI::ExistingFile);
        sub->add_option("--modes", c.modes, "frequencies N (2N modes)")->capture_default_str();
    };
    auto time_opts = [&](CLI::App* sub) {
        sub->add_option("--t-final", c.t_final)->capture_default_str();
        sub->add_option("--dt", c.dt, "sample spacing")->capture_default_str();
        sub->add_option("--max-step", c.max_step, "internal integrator step")->capture_default_str();
        sub->add_option("--dist", c.dist, "trig, spline, pwl, const (simulate also takes zero)");
        sub->add_option("--seed", c.seed)->capture_default_str();
        sub->add_option("--amplitude", c.amplitude)->capture_default_str();
    };

    auto* constants = app.add_subcommand("constants", "certificate table");
    source_opts(constants);
    constants->add_option("--epsilon", c.epsilon, "epsilon for the block certificate");
    constants->add_option("--out", c.out, "JSON output");

    auto* curve = app.add_subcommand("curve", "C1 against alpha");
    curve->add_option("--alpha", c.alpha, "single alpha");
    curve->add_option("--alpha-min", c.alpha_min)->capture_default_str();
    curve->add_option("--alpha-max", c.alpha_max)->capture_default_str();
    curve->add_option("--points", c.points)->capture_default_str();
    curve->add_option("--epsilon", c.epsilon);
    curve->add_option("--out", c.out, "CSV output (stdout when absent)");
    curve->add_option("--svg", c.svg, "SVG output (defaults next to --out)");

    auto* simulate = app.add_subcommand("simulate", "trajectory CSV");
    source_opts(simulate);
    time_opts(simulate);
    simulate->add_option("--ic", c.ic, "zero, random or stationary")->capture_default_str();
    simulate->add_flag("--coeffs", c.coeffs, "include modal coefficients");
    simulate->add_flag("--blocks", c.blocks, "use the 2x2 block integrator (beam, alpha = 1 allowed)");
    simulate->add_flag("--load", c.load, "add a distributed beam load");
    simulate->add_option("--out", c.out, "CSV output (stdout when absent)");

    auto* verify = app.add_subcommand("verify", "verification campaign");
    source_opts(verify);
    time_opts(verify);
    verify->add_option("--method", c.method, "thm1, thm2, relaxed, beam-v1, beam-v2 or combined");
    verify->add_option("--epsilon", c.epsilon, "fading-memory epsilon");
    verify->add_option("--runs", c.runs)->capture_default_str();
    verify->add_flag("--weak", c.weak, "also build the weak solution by mollification");
    verify->add_option("--c1-scale", c.c1_scale, "multiply every C1 (testing)")->capture_default_str();
    verify->add_option("--out", c.out, "JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_pass : exit_config;
    }

    try {
        if (constants->parsed()) {
            c.command = "constants";
            return cmd_constants(c, out);
        }
        if (curve->parsed()) {
            c.command = "curve";
            return cmd_curve(c, out);
        }
        if (simulate->parsed()) {
            c.command = "simulate";
            return cmd_simulate(c, out);
        }
        c.command = "verify";
        return cmd_verify(c, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const CertificateUnavailable& e) {
        err << "error: " << e.what() << '\n';
    } catch (const UnsupportedOperation& e) {
        err << "error: " << e.what() << '\n';
    }
    return exit_config;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"rsiss"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace rsiss::cli
