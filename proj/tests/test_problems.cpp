#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "hhfd/experiment.hpp"

using namespace hhfd;

namespace {

// FD Laplacian oracle: (1/2) Lap u at x by central differences.
double half_lap_fd(const ScalarField& u, const std::vector<double>& x,
                   double h) {
    const int d = static_cast<int>(x.size());
    double center = u(x.data());
    double s = 0.0;
    std::vector<double> y = x;
    for (int j = 0; j < d; ++j) {
        y[j] = x[j] + h;
        double up = u(y.data());
        y[j] = x[j] - h;
        double um = u(y.data());
        y[j] = x[j];
        s += up - 2.0 * center + um;
    }
    return 0.5 * s / (h * h);
}

void check_source_consistency(const DirichletProblem& p, std::uint64_t seed) {
    auto pts = sample_interior(p.domain, 100, seed);
    const int d = p.domain.dim;
    for (int i = 0; i < 100; ++i) {
        std::vector<double> x(pts.begin() + i * d, pts.begin() + (i + 1) * d);
        double fd = half_lap_fd(*p.exact, x, 1e-4);
        double phi = p.source(x.data());
        double scale = std::max(1.0, std::abs(phi));
        CHECK(std::abs(fd - phi) / scale < 1e-4);
    }
}

}  // namespace

TEST_CASE("case1 values") {
    auto p = case1(30);
    std::vector<double> origin(30, 0.0);
    CHECK((*p.exact)(origin.data()) == doctest::Approx(1.0 / 30.0));
    CHECK(p.source(origin.data()) == doctest::Approx(-1.0));

    // boundary match on the sphere
    auto bpts = sample_boundary(p.domain, 20, 3);
    for (int i = 0; i < 20; ++i) {
        const double* x = bpts.data() + 30 * i;
        CHECK(p.boundary_value(x) == doctest::Approx((*p.exact)(x)));
        double s = 0.0;
        for (int j = 0; j < 30; ++j) s += x[j];
        CHECK(p.boundary_value(x) == doctest::Approx(s).epsilon(1e-9));
    }
    check_source_consistency(case1(5), 42);
}

TEST_CASE("case2 values") {
    auto p = case2(20);
    std::vector<double> e1(20, 0.0);
    e1[0] = 1.0;
    CHECK((*p.exact)(e1.data()) == doctest::Approx(1.0 / 6.0));
    CHECK(p.source(e1.data()) == doctest::Approx(1.0));
    std::vector<double> origin(20, 0.0);
    CHECK(p.source(origin.data()) == doctest::Approx(0.0));
    check_source_consistency(case2(4), 43);
}

TEST_CASE("case3 values") {
    auto p = case3(3);
    std::vector<double> origin(3, 0.0);
    CHECK((*p.exact)(origin.data()) == doctest::Approx(1.0));

    // first source term alone at a point with sum x = 0
    std::vector<double> x{1.0, -0.5, -0.5};
    double r2 = 1.5;
    CHECK(p.source(x.data()) ==
          doctest::Approx((2.0 * r2 - 3.0) * std::exp(-r2)));
    check_source_consistency(case3(3), 44);
    check_source_consistency(case3(2), 45);
}

TEST_CASE("custom problem from file") {
    const char* path = "custom_problem_test.txt";
    {
        std::ofstream out(path);
        out << "# quadratic on a ball\n"
            << "domain = ball\n"
            << "center = 0 0\n"
            << "radius = 1.5\n"
            << "term = 1.0 2 0\n"
            << "term = -0.5 0 1\n";
    }
    auto p = custom_from_file(path);
    CHECK(p.domain.dim == 2);
    std::vector<double> x{0.5, 2.0};
    CHECK((*p.exact)(x.data()) == doctest::Approx(0.25 - 1.0));
    CHECK(p.source(x.data()) == doctest::Approx(1.0));  // (1/2)*2
    check_source_consistency(p, 46);
    std::remove(path);

    {
        std::ofstream out("bad_problem_test.txt");
        out << "domain = ball\ncenter = 0\nradius = 1\nbogus = 3\n";
    }
    CHECK_THROWS(custom_from_file("bad_problem_test.txt"));
    std::remove("bad_problem_test.txt");
}

TEST_CASE("arep") {
    auto p = case1(2);
    NodeSet nodes = make_node_set(p.domain, 100, 30, 8);
    std::vector<double> exact_u(100);
    for (int i = 0; i < 100; ++i)
        exact_u[i] = (*p.exact)(nodes.interior_at(i));

    auto r0 = arep(exact_u, p, nodes);
    CHECK(r0.percent == doctest::Approx(0.0));
    CHECK(r0.kept + r0.excluded == 100);

    std::vector<double> scaled = exact_u;
    for (auto& v : scaled) v *= 1.01;
    auto r1 = arep(scaled, p, nodes);
    CHECK(r1.percent == doctest::Approx(1.0).epsilon(1e-9));

    // mixed {0%, 2%} averages to 1%
    std::vector<double> mixed = exact_u;
    for (std::size_t i = 0; i < mixed.size(); i += 2) mixed[i] *= 1.02;
    auto rm = arep(mixed, p, nodes);
    CHECK(rm.percent == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("five number summary") {
    auto s = five_number_summary({5.0, 1.0, 3.0, 2.0, 4.0});
    CHECK(s.min == 1.0);
    CHECK(s.q1 == 2.0);
    CHECK(s.median == 3.0);
    CHECK(s.q3 == 4.0);
    CHECK(s.max == 5.0);
}

TEST_CASE("assembled system is exact on an in-span solution") {
    // case1 in d=2: u is quadratic + linear, inside the K=4 span
    auto p = case1(2);
    NodeSet nodes = make_node_set(p.domain, 150, 45, 13);
    IndexSet set = enumerate_index_set(2, 1.0, 4);
    double lambda = select_lambda(2.0, 2.628, static_cast<int>(set.size()),
                                  150, p.domain.measure(), 2);
    BasisSpec spec = BasisSpec::create(set, lambda);
    MethodParams params;
    params.lambda = lambda;
    params.min_neighbors = spec.size();
    auto stencils = build_all_stencils(nodes, spec, params, false);
    SparseSystem sys = assemble(stencils, nodes, p.source, p.boundary_value);

    std::vector<double> u_exact(nodes.n_interior);
    for (std::size_t i = 0; i < nodes.n_interior; ++i)
        u_exact[i] = (*p.exact)(nodes.interior_at(i));
    // A u_exact - rhs vanishes because the scheme reproduces the span
    CHECK(sys.residual_norm(u_exact) < 1e-7);

    // homogeneous boundary data leaves rhs = source values
    SparseSystem hom = assemble(stencils, nodes, p.source,
                                [](const double*) { return 0.0; });
    for (std::size_t i = 0; i < nodes.n_interior; ++i)
        CHECK(hom.rhs[i] == doctest::Approx(-1.0));
}

TEST_CASE("run_experiment: in-span exactness and record keeping") {
    auto p = case1(5);
    ExperimentConfig cfg;
    cfg.d = 5;
    cfg.N = 400;
    cfg.K = 4;
    cfg.repeats = 2;
    cfg.base_seed = 100;
    auto rep = run_experiment(p, "case1", cfg);
    REQUIRE(rep.records.size() == 2);
    for (auto& r : rep.records) {
        CHECK(r.ok());
        CHECK(r.arep_percent <= 1e-5);
        CHECK(r.M == 11);
        CHECK(r.lambda > 0.0);
    }
    CHECK(rep.summary.failed == 0);

    // configuration error: N below M
    ExperimentConfig bad = cfg;
    bad.N = 5;
    CHECK_THROWS(run_experiment(p, "case1", bad));
}
