#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hhfd/problems.hpp"

namespace hhfd {

enum class SolverKind { Bicgstab, Sor };

struct ExperimentConfig {
    int d = 2;
    std::size_t N = 400;
    std::size_t N_b = 0;  // 0 = default max(2d, ceil(0.3 N))
    int K = 4;
    double c = 1.0;
    double beta = 0.0;
    double theta = 2.0;
    double kappa = 2.628;
    double ridge = 1e-10;
    Normalization norm = Normalization::Orthonormal;
    SolverKind solver = SolverKind::Bicgstab;
    double sor_omega = 1.5;
    double tol = 1e-10;
    int max_iter = 0;  // 0 = 10 N
    int repeats = 10;
    std::uint64_t base_seed = 1;
    bool parallel = true;

    std::size_t boundary_count() const;
};

struct RunRecord {
    int run_id = 0;
    std::uint64_t seed = 0;
    std::string problem;
    int d = 0;
    std::size_t N = 0;
    std::size_t N_b = 0;
    int K = 0;
    double c = 0.0, beta = 0.0, theta = 0.0, lambda = 0.0;
    int M = 0;
    double arep_percent = 0.0;
    std::string solver;
    int iterations = 0;
    double residual = 0.0;
    std::string status;  // "ok" or a failure cause
    double wall_ms = 0.0;

    bool ok() const { return status == "ok"; }
};

struct Summary {
    std::size_t N = 0;
    std::size_t runs = 0;
    std::size_t failed = 0;
    double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

struct ExperimentReport {
    std::vector<RunRecord> records;
    Summary summary;
};

/// Five-number summary with linear interpolation between order statistics.
Summary five_number_summary(std::vector<double> values);

/// Runs the full pipeline `repeats` times with seeds base_seed + r and
/// collects records plus the AREP quartile summary. Failed runs are recorded
/// with their cause and excluded from the quartiles.
ExperimentReport run_experiment(const DirichletProblem& problem,
                                const std::string& problem_name,
                                const ExperimentConfig& config);

std::string csv_header();
std::string csv_row(const RunRecord& r, bool include_wall = true);

}  // namespace hhfd
