#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hbeam::cli {

enum ExitCode : int { ok = 0, numerical_failure = 1, config_error = 2 };

struct RunConfig {
    std::string subcommand;
    double alpha = 1.0;
    double beta = 1.0;
    double a = 0.5;
    std::vector<double> a_grid;
    std::string mode = "homogeneous";
    std::string solver = "closed-form";
    int n = 14;
    std::string output;
    std::string table;
    std::string data;
    unsigned workers = 0;
    // simulate
    int modes = 12;
    int pair = 0;
    double zeta_rel = 0.8;
    double z0_rel = 1e-4;
    double periods = 100.0;
    std::optional<double> dt;
    int record_every = 1;
};

// Runs the command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hbeam::cli
