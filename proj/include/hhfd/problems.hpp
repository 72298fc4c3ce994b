#pragma once

#include <optional>
#include <string>

#include "hhfd/geometry.hpp"
#include "hhfd/sparse.hpp"

namespace hhfd {

/// Dirichlet problem (1/2) Lap u = source on the domain, u = boundary_value
/// on its boundary. The exact solution, when known, drives error reporting.
struct DirichletProblem {
    Domain domain;
    ScalarField source;
    ScalarField boundary_value;
    std::optional<ScalarField> exact;
};

/// Constant source, linear boundary data on the unit d-ball;
/// u = (1/d)(1 - ||x||^2) + sum x_i.
DirichletProblem case1(int d);

/// Quartic solution u = (1/6) sum x_i^4 on [-1,1]^d; source sum x_i^2.
DirichletProblem case2(int d);

/// Transcendental solution u = arctan(sum x_i / 2) + exp(-||x||^2)
/// on [-3,3]^d.
DirichletProblem case3(int d);

/// Manufactured polynomial problem from a key = value file:
///   domain = ball | box
///   center = c1 ... cd / radius = r      (ball)
///   lo = l1 ... ld / hi = h1 ... hd      (box)
///   term = coeff e1 ... ed               (one monomial of u, repeatable)
/// The source and boundary data are derived from the polynomial solution.
DirichletProblem custom_from_file(const std::string& path);

struct ArepResult {
    double percent = 0.0;
    std::size_t kept = 0;
    std::size_t excluded = 0;  // nodes with |u| < 1e-12
};

/// Average relative error percentage over the interior nodes; near-zero
/// exact values are excluded and counted. Throws if every node is excluded
/// or the problem has no exact solution.
ArepResult arep(const std::vector<double>& U, const DirichletProblem& problem,
                const NodeSet& nodes);

}  // namespace hhfd
