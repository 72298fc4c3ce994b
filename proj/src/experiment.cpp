#include "hhfd/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hhfd {

std::size_t ExperimentConfig::boundary_count() const {
    if (N_b > 0) return N_b;
    return std::max<std::size_t>(2 * d, static_cast<std::size_t>(
                                            std::ceil(0.3 * N)));
}

Summary five_number_summary(std::vector<double> values) {
    Summary s;
    s.runs = values.size();
    if (values.empty()) return s;
    std::sort(values.begin(), values.end());
    auto quantile = [&](double p) {
        double pos = p * (values.size() - 1);
        std::size_t lo = static_cast<std::size_t>(pos);
        std::size_t hi = std::min(lo + 1, values.size() - 1);
        double frac = pos - lo;
        return values[lo] * (1.0 - frac) + values[hi] * frac;
    };
    s.min = values.front();
    s.q1 = quantile(0.25);
    s.median = quantile(0.5);
    s.q3 = quantile(0.75);
    s.max = values.back();
    return s;
}

ExperimentReport run_experiment(const DirichletProblem& problem,
                                const std::string& problem_name,
                                const ExperimentConfig& config) {
    using clock = std::chrono::steady_clock;

    IndexSet set = enumerate_index_set(config.d, config.c, config.K);
    const int M = static_cast<int>(set.size());
    if (M == 0)
        throw std::runtime_error("configuration error: empty index set");
    if (config.N < static_cast<std::size_t>(M))
        throw std::runtime_error(
            "configuration error: N must be at least M = " + std::to_string(M));

    const std::size_t n_b = config.boundary_count();
    const double measure = problem.domain.measure();
    const double lambda = select_lambda(config.theta, config.kappa, M,
                                        config.N, measure, config.d);
    const int max_iter =
        config.max_iter > 0 ? config.max_iter : static_cast<int>(10 * config.N);

    ExperimentReport report;
    std::vector<double> areps;
    for (int r = 0; r < config.repeats; ++r) {
        RunRecord rec;
        rec.run_id = r;
        rec.seed = config.base_seed + static_cast<std::uint64_t>(r);
        rec.problem = problem_name;
        rec.d = config.d;
        rec.N = config.N;
        rec.N_b = n_b;
        rec.K = config.K;
        rec.c = config.c;
        rec.beta = config.beta;
        rec.theta = config.theta;
        rec.lambda = lambda;
        rec.M = M;
        rec.solver = config.solver == SolverKind::Bicgstab ? "bicgstab" : "sor";

        auto t0 = clock::now();
        try {
            NodeSet nodes = make_node_set(problem.domain, config.N, n_b, rec.seed);
            BasisSpec spec = BasisSpec::create(set, lambda, config.beta,
                                               config.norm);
            MethodParams params;
            params.kappa = config.kappa;
            params.theta = config.theta;
            params.lambda = lambda;
            params.ridge = config.ridge;
            params.min_neighbors = M;

            auto stencils =
                build_all_stencils(nodes, spec, params, config.parallel);
            SparseSystem sys = assemble(stencils, nodes, problem.source,
                                        problem.boundary_value);
            SolveReport solve =
                config.solver == SolverKind::Bicgstab
                    ? bicgstab(sys, config.tol, max_iter, Precond::Ilu)
                    : sor(sys, config.sor_omega, config.tol, max_iter);
            rec.iterations = solve.iterations;
            rec.residual = solve.final_residual;
            if (!solve.converged) {
                rec.status = "solver-nonconvergence";
            } else {
                ArepResult a = arep(solve.solution, problem, nodes);
                rec.arep_percent = a.percent;
                rec.status = "ok";
            }
        } catch (const std::exception& e) {
            rec.status = std::string("failed: ") + e.what();
        }
        rec.wall_ms = std::chrono::duration<double, std::milli>(clock::now() -
                                                                t0)
                          .count();
        if (rec.ok()) areps.push_back(rec.arep_percent);
        report.records.push_back(std::move(rec));
    }

    report.summary = five_number_summary(std::move(areps));
    report.summary.N = config.N;
    report.summary.failed = report.records.size() - report.summary.runs;
    return report;
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::string csv_header() {
    return "run_id,seed,problem,d,N,N_b,K,c,beta,theta,lambda,M,arep_percent,"
           "solver,iterations,residual,status,wall_ms";
}

std::string csv_row(const RunRecord& r, bool include_wall) {
    std::ostringstream os;
    os << r.run_id << "," << r.seed << "," << r.problem << "," << r.d << ","
       << r.N << "," << r.N_b << "," << r.K << "," << fmt(r.c) << ","
       << fmt(r.beta) << "," << fmt(r.theta) << "," << fmt(r.lambda) << ","
       << r.M << "," << fmt(r.arep_percent) << "," << r.solver << ","
       << r.iterations << "," << fmt(r.residual) << ",";
    for (char ch : r.status) os << (ch == ',' ? ';' : ch);
    if (include_wall) os << "," << fmt(r.wall_ms);
    return os.str();
}

}  // namespace hhfd
