#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace rsiss::cli {

enum ExitCode : int { exit_pass = 0, exit_violation = 1, exit_config = 2 };

struct RunConfig {
    std::string command;
    std::optional<double> alpha;
    std::string system_path;
    int modes = 64;
    double t_final = 5.0;
    double dt = 0.01;
    double max_step = 1e-3;
    std::optional<std::string> dist;
    std::uint64_t seed = 1;
    double amplitude = 1.0;
    std::optional<std::string> method;
    std::optional<double> epsilon;
    int runs = 200;
    bool weak = false;
    std::string out;

    // curve
    double alpha_min = 0.2, alpha_max = 5.0;
    int points = 481;
    std::string svg;

    // simulate
    std::string ic = "random";
    bool coeffs = false;
    bool blocks = false;
    bool load = false;

    // verify
    double c1_scale = 1.0;
};

nlohmann::json config_json(const RunConfig& config);

/// argv[0] is the program name. Returns an ExitCode.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_constants(const RunConfig& config, std::ostream& out);
int cmd_curve(const RunConfig& config, std::ostream& out);
int cmd_simulate(const RunConfig& config, std::ostream& out);
int cmd_verify(const RunConfig& config, std::ostream& out);

}  // namespace rsiss::cli
