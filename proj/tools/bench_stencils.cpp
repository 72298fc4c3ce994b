// Compares the serial reference stencil kernel against the OpenMP one and
// checks that both produce identical rows.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>

#include "hhfd/experiment.hpp"

using namespace hhfd;

namespace {

double time_build(const NodeSet& nodes, const BasisSpec& spec,
                  const MethodParams& params, bool parallel,
                  std::vector<Stencil>& out) {
    auto t0 = std::chrono::steady_clock::now();
    out = build_all_stencils(nodes, spec, params, parallel);
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

int main(int argc, char** argv) {
    int d = argc > 1 ? std::atoi(argv[1]) : 10;
    std::size_t n = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 2000;
    int K = argc > 3 ? std::atoi(argv[3]) : 4;

    DirichletProblem problem = case1(d);
    IndexSet set = enumerate_index_set(d, 1.0, K);
    const int M = static_cast<int>(set.size());
    std::size_t n_b = std::max<std::size_t>(2 * d, n * 3 / 10);
    NodeSet nodes = make_node_set(problem.domain, n, n_b, 42);
    double lambda =
        select_lambda(2.0, 2.628, M, n, problem.domain.measure(), d);
    BasisSpec spec = BasisSpec::create(set, lambda);
    MethodParams params;
    params.lambda = lambda;
    params.min_neighbors = M;

    std::cout << "d=" << d << " N=" << n << " N_b=" << n_b << " K=" << K
              << " M=" << M << " lambda=" << lambda << "\n";

    std::vector<Stencil> serial, omp;
    double t_serial = time_build(nodes, spec, params, false, serial);
    double t_omp = time_build(nodes, spec, params, true, omp);

    double max_diff = 0.0;
    for (std::size_t i = 0; i < serial.size(); ++i) {
        if (serial[i].neighbors != omp[i].neighbors) {
            std::cerr << "neighbor mismatch at row " << i << "\n";
            return 1;
        }
        for (std::size_t j = 0; j < serial[i].weights.size(); ++j)
            max_diff = std::max(max_diff, std::abs(serial[i].weights[j] -
                                                   omp[i].weights[j]));
    }

    std::cout << "serial: " << t_serial << " ms\n"
              << "openmp: " << t_omp << " ms\n"
              << "speedup: " << t_serial / t_omp << "x\n"
              << "max weight diff: " << max_diff << "\n";
    return max_diff == 0.0 ? 0 : 1;
}
