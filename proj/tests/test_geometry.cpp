#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "hhfd/geometry.hpp"

using namespace hhfd;

TEST_CASE("domain measures") {
    CHECK(Domain::unit_ball(2).measure() == doctest::Approx(M_PI));
    CHECK(Domain::unit_ball(30).measure() ==
          doctest::Approx(2.191e-5).epsilon(1e-3));
    CHECK(Domain::cube(20, -1.0, 1.0).measure() == doctest::Approx(1048576.0));
    CHECK(domain_measure(Domain::ball({0.0, 0.0, 0.0}, 2.0)) ==
          doctest::Approx(4.0 / 3.0 * M_PI * 8.0));
}

TEST_CASE("interior sampling: containment and moments") {
    Domain ball = Domain::unit_ball(2);
    auto pts = sample_interior(ball, 1000, 7);
    double mean_r2 = 0.0;
    for (int i = 0; i < 1000; ++i) {
        double r2 = pts[2 * i] * pts[2 * i] + pts[2 * i + 1] * pts[2 * i + 1];
        CHECK(r2 < 1.0);
        mean_r2 += r2;
    }
    mean_r2 /= 1000.0;
    CHECK(std::abs(mean_r2 - 0.5) < 0.03);  // E||x||^2 = d/(d+2)

    Domain box = Domain::cube(2, -1.0, 1.0);
    auto bpts = sample_interior(box, 1000, 7);
    for (int j = 0; j < 2; ++j) {
        double mean = 0.0;
        for (int i = 0; i < 1000; ++i) {
            CHECK(bpts[2 * i + j] > -1.0);
            CHECK(bpts[2 * i + j] < 1.0);
            mean += bpts[2 * i + j];
        }
        CHECK(std::abs(mean / 1000.0) < 0.05);
    }
}

TEST_CASE("boundary sampling") {
    auto sphere = sample_boundary(Domain::unit_ball(3), 500, 3);
    for (int i = 0; i < 500; ++i) {
        double r = std::sqrt(sphere[3 * i] * sphere[3 * i] +
                             sphere[3 * i + 1] * sphere[3 * i + 1] +
                             sphere[3 * i + 2] * sphere[3 * i + 2]);
        CHECK(std::abs(r - 1.0) < 1e-12);
    }

    // each edge of the unit square gets roughly a quarter of the points
    auto edges = sample_boundary(Domain::cube(2, 0.0, 1.0), 400, 5);
    int counts[4] = {0, 0, 0, 0};
    for (int i = 0; i < 400; ++i) {
        double x = edges[2 * i], y = edges[2 * i + 1];
        if (x == 0.0) ++counts[0];
        else if (x == 1.0) ++counts[1];
        else if (y == 0.0) ++counts[2];
        else if (y == 1.0) ++counts[3];
        else CHECK(false);
    }
    for (int e = 0; e < 4; ++e) {
        CHECK(counts[e] >= 60);
        CHECK(counts[e] <= 140);
    }

    // sphere symmetry in high dimension
    auto high = sample_boundary(Domain::unit_ball(30), 1000, 11);
    double mean_x1 = 0.0;
    for (int i = 0; i < 1000; ++i) mean_x1 += high[30 * i];
    CHECK(std::abs(mean_x1 / 1000.0) < 0.03);
}

TEST_CASE("determinism and seed sensitivity") {
    Domain dom = Domain::unit_ball(4);
    auto a = sample_interior(dom, 50, 123);
    auto b = sample_interior(dom, 50, 123);
    CHECK(a == b);  // bitwise

    auto c = sample_interior(dom, 50, 124);
    CHECK(a != c);

    auto n1 = make_node_set(dom, 100, 30, 9);
    auto n2 = make_node_set(dom, 100, 30, 9);
    CHECK(n1.interior == n2.interior);
    CHECK(n1.boundary == n2.boundary);

    auto single = sample_interior(dom, 1, 77);
    auto single2 = sample_interior(dom, 1, 77);
    CHECK(single == single2);
}

TEST_CASE("node set invariants") {
    Domain dom = Domain::cube(3, -2.0, 2.0);
    NodeSet nodes = make_node_set(dom, 200, 60, 31);
    CHECK(nodes.total() == 260);
    for (std::size_t i = 0; i < nodes.n_interior; ++i)
        CHECK(dom.contains_interior(nodes.interior_at(i)));
    for (std::size_t i = 0; i < nodes.n_boundary; ++i) {
        const double* p = nodes.boundary_at(i);
        bool on_face = false;
        for (int j = 0; j < 3; ++j)
            if (std::abs(p[j] - dom.lo[j]) < 1e-12 ||
                std::abs(p[j] - dom.hi[j]) < 1e-12)
                on_face = true;
        CHECK(on_face);
    }
    // pairwise distinct
    for (std::size_t i = 0; i < nodes.total(); ++i)
        for (std::size_t j = i + 1; j < nodes.total(); ++j) {
            double r2 = 0.0;
            for (int k = 0; k < 3; ++k) {
                double t = nodes.node(i)[k] - nodes.node(j)[k];
                r2 += t * t;
            }
            CHECK(r2 > 1e-24);
        }
}
