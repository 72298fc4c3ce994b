#include "hhfd/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>

#include "hhfd/experiment.hpp"

namespace hhfd {

namespace {

void attach_options(CLI::App& app, RunConfig& cfg) {
    app.option_defaults()->always_capture_default();
    app.set_config("--config")->configurable(false);
    app.allow_config_extras(false);

    app.add_option("--problem", cfg.problem, "Test problem")
        ->check(CLI::IsMember({"case1", "case2", "case3", "custom"}));
    app.add_option("--problem-file", cfg.problem_file,
                   "Problem definition file (problem = custom)");
    app.add_option("--d", cfg.d, "Dimension")->check(CLI::PositiveNumber);
    app.add_option("--N", cfg.N, "Interior node count")
        ->check(CLI::PositiveNumber);
    app.add_option("--N_b", cfg.N_b, "Boundary node count (0 = default)");
    app.add_option("--K", cfg.K, "Truncation order")->check(CLI::PositiveNumber);
    app.add_option("--repeats", cfg.repeats, "Independent repetitions")
        ->check(CLI::PositiveNumber);
    app.add_option("--c", cfg.c, "Order-number shift")
        ->check(CLI::Range(1.0, 1e9));
    app.add_option("--beta", cfg.beta, "Smoothing factor")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--theta", cfg.theta, "Oversampling factor")
        ->check(CLI::Validator(
            [](std::string& s) {
                double v = std::stod(s);
                return v > 1.0 ? std::string()
                               : std::string("theta must exceed 1");
            },
            "THETA>1"));
    app.add_option("--kappa", cfg.kappa, "Stencil radius constant")
        ->check(CLI::PositiveNumber);
    app.add_option("--tol", cfg.tol, "Solver tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--solver", cfg.solver, "Linear solver")
        ->check(CLI::IsMember({"bicgstab", "sor"}));
    app.add_option("--omega", cfg.sor_omega, "SOR relaxation")
        ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(2.0, 0.0)));
    app.add_option("--seed", cfg.seed, "Base RNG seed");
    app.add_option("--sweep", cfg.sweep,
                   "Node-count sweep (overrides --N; strictly increasing)");
    app.add_option("--output", cfg.output, "Output path (default stdout)");
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--dump-config", cfg.dump_config,
                   "Write the effective configuration to this path");
    app.add_option("--dump-matrix", cfg.dump_matrix,
                   "Write the first assembled system to this path");
    app.add_flag("--serial", cfg.serial, "Use the serial stencil kernel");
}

void validate(const RunConfig& cfg) {
    for (std::size_t i = 1; i < cfg.sweep.size(); ++i)
        if (cfg.sweep[i] <= cfg.sweep[i - 1])
            throw UsageError("--sweep entries must be strictly increasing");
    if (cfg.problem == "custom" && cfg.problem_file.empty())
        throw UsageError("--problem custom requires --problem-file");
}

DirichletProblem make_problem(const RunConfig& cfg) {
    if (cfg.problem == "case1") return case1(cfg.d);
    if (cfg.problem == "case2") return case2(cfg.d);
    if (cfg.problem == "case3") return case3(cfg.d);
    return custom_from_file(cfg.problem_file);
}

void write_csv(std::ostream& os, const std::vector<RunRecord>& records,
               const std::vector<Summary>& summaries) {
    os << csv_header() << "\n";
    for (auto& r : records) os << csv_row(r) << "\n";
    os << "# summary: N,runs,failed,min,q1,median,q3,max\n";
    os.precision(17);
    for (auto& s : summaries)
        os << "# " << s.N << "," << s.runs << "," << s.failed << "," << s.min
           << "," << s.q1 << "," << s.median << "," << s.q3 << "," << s.max
           << "\n";
}

void write_json(std::ostream& os, const std::vector<RunRecord>& records,
                const std::vector<Summary>& summaries) {
    nlohmann::json doc;
    doc["records"] = nlohmann::json::array();
    for (auto& r : records)
        doc["records"].push_back({{"run_id", r.run_id},
                                  {"seed", r.seed},
                                  {"problem", r.problem},
                                  {"d", r.d},
                                  {"N", r.N},
                                  {"N_b", r.N_b},
                                  {"K", r.K},
                                  {"c", r.c},
                                  {"beta", r.beta},
                                  {"theta", r.theta},
                                  {"lambda", r.lambda},
                                  {"M", r.M},
                                  {"arep_percent", r.arep_percent},
                                  {"solver", r.solver},
                                  {"iterations", r.iterations},
                                  {"residual", r.residual},
                                  {"status", r.status},
                                  {"wall_ms", r.wall_ms}});
    doc["summaries"] = nlohmann::json::array();
    for (auto& s : summaries)
        doc["summaries"].push_back({{"N", s.N},
                                    {"runs", s.runs},
                                    {"failed", s.failed},
                                    {"min", s.min},
                                    {"q1", s.q1},
                                    {"median", s.median},
                                    {"q3", s.q3},
                                    {"max", s.max}});
    os << doc.dump(2) << "\n";
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
    RunConfig cfg;
    CLI::App app{"Meshless Hermite-HDMR finite difference solver"};
    attach_options(app, cfg);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    validate(cfg);

    if (!cfg.dump_config.empty()) {
        std::ofstream out(cfg.dump_config);
        if (!out)
            throw UsageError("cannot write config to " + cfg.dump_config);
        out << app.config_to_str(false, false);
    }
    return cfg;
}

int run(const RunConfig& cfg) {
    try {
        DirichletProblem problem = make_problem(cfg);

        ExperimentConfig ec;
        ec.d = problem.domain.dim;
        ec.N_b = cfg.N_b;
        ec.K = cfg.K;
        ec.c = cfg.c;
        ec.beta = cfg.beta;
        ec.theta = cfg.theta;
        ec.kappa = cfg.kappa;
        ec.tol = cfg.tol;
        ec.solver =
            cfg.solver == "sor" ? SolverKind::Sor : SolverKind::Bicgstab;
        ec.sor_omega = cfg.sor_omega;
        ec.repeats = cfg.repeats;
        ec.base_seed = cfg.seed;
        ec.parallel = !cfg.serial;

        if (!cfg.dump_matrix.empty()) {
            ec.N = cfg.sweep.empty() ? cfg.N : cfg.sweep.front();
            NodeSet nodes = make_node_set(problem.domain, ec.N,
                                          ec.boundary_count(), ec.base_seed);
            IndexSet set = enumerate_index_set(ec.d, ec.c, ec.K);
            double lambda =
                select_lambda(ec.theta, ec.kappa, static_cast<int>(set.size()),
                              ec.N, problem.domain.measure(), ec.d);
            BasisSpec spec = BasisSpec::create(set, lambda, ec.beta, ec.norm);
            MethodParams params;
            params.kappa = ec.kappa;
            params.theta = ec.theta;
            params.lambda = lambda;
            params.ridge = ec.ridge;
            params.min_neighbors = spec.size();
            auto stencils =
                build_all_stencils(nodes, spec, params, ec.parallel);
            SparseSystem sys = assemble(stencils, nodes, problem.source,
                                        problem.boundary_value);
            std::ofstream mout(cfg.dump_matrix);
            if (!mout) {
                std::cerr << "error: cannot write " << cfg.dump_matrix << "\n";
                return 1;
            }
            sys.dump(mout);
        }

        std::vector<std::size_t> sweep =
            cfg.sweep.empty() ? std::vector<std::size_t>{cfg.N} : cfg.sweep;
        std::vector<RunRecord> records;
        std::vector<Summary> summaries;
        bool any_failed = false;
        for (std::size_t n : sweep) {
            ec.N = n;
            ExperimentReport rep = run_experiment(problem, cfg.problem, ec);
            for (auto& r : rep.records) any_failed |= !r.ok();
            records.insert(records.end(), rep.records.begin(),
                           rep.records.end());
            summaries.push_back(rep.summary);
        }

        std::ofstream fout;
        std::ostream* os = &std::cout;
        if (!cfg.output.empty()) {
            fout.open(cfg.output);
            if (!fout) {
                std::cerr << "error: cannot write " << cfg.output << "\n";
                return 1;
            }
            os = &fout;
        }
        if (cfg.format == "json")
            write_json(*os, records, summaries);
        else
            write_csv(*os, records, summaries);
        return any_failed ? 2 : 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (std::find(args.begin(), args.end(), "--help") != args.end() ||
        std::find(args.begin(), args.end(), "-h") != args.end()) {
        RunConfig cfg;
        CLI::App app{"Meshless Hermite-HDMR finite difference solver"};
        attach_options(app, cfg);
        std::cout << app.help();
        return 0;
    }
    try {
        RunConfig cfg = parse_config(args);
        return run(cfg);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace hhfd
