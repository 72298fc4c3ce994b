#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hhfd {

/// Bad flags or flag values; the message names the offending flag.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string problem = "case1";  // case1 | case2 | case3 | custom
    std::string problem_file;       // required when problem == custom
    int d = 2;
    std::size_t N = 400;
    std::size_t N_b = 0;  // 0 = default max(2d, ceil(0.3 N))
    int K = 4;
    int repeats = 10;
    double c = 1.0;
    double beta = 0.0;
    double theta = 2.0;
    double kappa = 2.628;
    double tol = 1e-10;
    std::string solver = "bicgstab";  // bicgstab | sor
    double sor_omega = 1.5;
    std::uint64_t seed = 1;
    std::vector<std::size_t> sweep;  // optional N sweep, strictly increasing
    std::string output;              // empty = stdout
    std::string format = "csv";      // csv | json
    std::string dump_config;         // write the effective config here
    std::string dump_matrix;         // write the first assembled system here
    bool serial = false;             // serial stencil path

    bool operator==(const RunConfig&) const = default;
};

/// Parses flags (and an optional --config file; flags win). Unknown keys are
/// rejected. Throws UsageError.
RunConfig parse_config(const std::vector<std::string>& args);

/// Executes the configured experiment(s). Returns 0 on all-success, 2 if any
/// run failed, 1 on configuration errors.
int run(const RunConfig& config);

/// Entry point used by the CLI binary.
int cli_main(int argc, char** argv);

}  // namespace hhfd
