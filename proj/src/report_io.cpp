#include "rsiss/report_io.hpp"

#include <fstream>

namespace rsiss {

using nlohmann::json;

json extended_json(const ExtendedReal& x) {
    if (x.is_infinite())
        return "inf";
    return x.value();
}

json certificate_to_json(const ISSCertificate& c) {
    json j{{"method", to_string(c.method)},
           {"kappa0", c.kappa0},
           {"C0", extended_json(c.C0)},
           {"C1", extended_json(c.C1)},
           {"C2", c.C2 ? extended_json(*c.C2) : json(nullptr)},
           {"degenerate", c.degenerate}};
    if (c.epsilon)
        j["epsilon"] = *c.epsilon;
    if (!c.c2_source.empty())
        j["c2_source"] = c.c2_source;
    return j;
}

json report_to_json(const VerificationReport& r, const json& config) {
    json samples = json::array();
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        samples.push_back({{"t", r.times[i]}, {"lhs", r.lhs[k]}, {"rhs", r.rhs[k]}, {"margin", r.margins[k]}});
    }
    json j{{"config", config},
           {"min_margin", r.min_margin},
           {"n_violations", r.n_violations},
           {"rhs_scale", r.rhs_scale},
           {"samples", std::move(samples)}};
    if (r.epsilon)
        j["epsilon"] = *r.epsilon;
    return j;
}

json campaign_to_json(const CampaignResult& result, const json& config) {
    json cases = json::array();
    const CaseResult* worst = nullptr;
    for (const CaseResult& c : result.cases) {
        cases.push_back({{"label", c.label},
                         {"runs", c.runs},
                         {"min_margin", c.min_margin},
                         {"min_relative_margin", c.min_relative_margin},
                         {"n_violations", c.n_violations}});
        if (!worst || c.min_relative_margin < worst->min_relative_margin)
            worst = &c;
    }
    json j = worst ? report_to_json(worst->worst, config) : json{{"config", config}, {"samples", json::array()}};
    j["min_margin"] = result.cases.empty() ? 0.0 : result.min_margin();
    j["n_violations"] = result.total_violations();
    j["runs"] = result.runs;
    j["cases"] = std::move(cases);
    if (worst)
        j["samples_case"] = worst->label;
    return j;
}

json weak_to_json(const WeakSolutionResult& result) {
    json runs = json::array();
    for (const ApproximationRun& r : result.runs)
        runs.push_back({{"level", r.level},
                        {"h", r.h},
                        {"compatibility_defect", r.compatibility_defect},
                        {"sup_to_limit", r.sup_to_limit},
                        {"sup_to_previous", r.sup_to_previous},
                        {"cauchy_bound", r.cauchy_bound}});
    return {{"levels", std::move(runs)},
            {"converged", result.converged},
            {"cauchy_ok", result.cauchy_ok},
            {"failure", result.failure},
            {"limit_min_margin", result.limit_report.min_margin},
            {"limit_violations", result.limit_report.n_violations}};
}

void write_json(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

}  // namespace rsiss
