#pragma once

#include <cstdint>
#include <vector>

namespace hhfd {

/// Computational domain: a d-ball or an axis-aligned box.
struct Domain {
    enum class Kind { Ball, Box };

    Kind kind = Kind::Ball;
    int dim = 0;
    std::vector<double> center;  // ball
    double radius = 1.0;
    std::vector<double> lo, hi;  // box

    static Domain ball(std::vector<double> center, double radius);
    static Domain unit_ball(int d);
    static Domain box(std::vector<double> lo, std::vector<double> hi);
    static Domain cube(int d, double lo, double hi);

    bool contains_interior(const double* x) const;
    double measure() const;
};

/// Scattered interior and boundary nodes. The global node order used by
/// stencils and assembly is interior first, then boundary.
struct NodeSet {
    int dim = 0;
    std::size_t n_interior = 0;
    std::size_t n_boundary = 0;
    std::vector<double> interior;  // flat, n_interior x dim
    std::vector<double> boundary;  // flat, n_boundary x dim
    std::uint64_t seed = 0;

    std::size_t total() const { return n_interior + n_boundary; }

    const double* interior_at(std::size_t i) const {
        return interior.data() + i * dim;
    }
    const double* boundary_at(std::size_t i) const {
        return boundary.data() + i * dim;
    }
    const double* node(std::size_t g) const {
        return g < n_interior ? interior_at(g) : boundary_at(g - n_interior);
    }
};

/// N i.i.d. uniform points strictly inside the domain, deterministic in seed.
std::vector<double> sample_interior(const Domain& domain, std::size_t N,
                                    std::uint64_t seed);

/// N_b points uniform on the boundary (sphere, or faces weighted by measure).
std::vector<double> sample_boundary(const Domain& domain, std::size_t N_b,
                                    std::uint64_t seed);

/// Full node set with duplicate draws (pairwise distance <= 1e-12 across the
/// whole set) rejected and resampled.
NodeSet make_node_set(const Domain& domain, std::size_t N, std::size_t N_b,
                      std::uint64_t seed);

double domain_measure(const Domain& domain);

}  // namespace hhfd
