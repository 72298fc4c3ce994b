#pragma once

#include <vector>

#include "hhfd/index_set.hpp"

namespace hhfd {

struct PhiTriple {
    double value;
    double d1;
    double d2;
};

/// Hermite polynomial phi_j(t) = e^(t^2) d^j/dt^j e^(-t^2) with its first
/// two derivatives, via the recurrence phi_{j+1} = -2t phi_j - 2j phi_{j-1}.
/// Note phi_j = (-1)^j H_j with H_j the physicists' polynomial.
PhiTriple hermite_phi_triple(int j, double t);

enum class Normalization {
    Paper,       // sqrt(lambda^d / (pi^d prod (2 m_i)!!))
    Orthonormal  // unit norm under the weight e^(-lambda^2 ||x-a||^2)
};

double normalization_constant(const MultiIndex& m, double lambda,
                              Normalization mode);

/// Basis family: the members of an index set with a fixed Gaussian scale
/// lambda and smoothing exponent beta. Immutable after construction.
struct BasisSpec {
    IndexSet set;
    double lambda = 1.0;
    double beta = 0.0;
    Normalization mode = Normalization::Orthonormal;
    std::vector<double> norm;  // normalization constant per member, in set order

    static BasisSpec create(IndexSet set, double lambda, double beta = 0.0,
                            Normalization mode = Normalization::Orthonormal);

    int size() const { return static_cast<int>(set.members.size()); }
};

struct BasisEval {
    std::vector<double> values;
    std::vector<double> laplacians;
};

/// Evaluates all basis values and Laplacians at x relative to center a.
/// Holds per-coordinate recurrence tables; create one per thread.
class BasisEvaluator {
public:
    explicit BasisEvaluator(const BasisSpec& spec);

    /// values/laplacians must have room for spec.size() entries.
    void eval(const double* x, const double* a, double* values,
              double* laplacians);

private:
    const BasisSpec* spec_;
    int dim_;
    int degrees_;                // max_degree + 1 table columns
    std::vector<double> val_;    // dim x degrees, phi_e(lambda (x_j - a_j))
    std::vector<double> d2_;     // same layout, second derivatives
};

/// Convenience wrapper for one-off evaluations.
BasisEval basis_eval(const BasisSpec& spec, const std::vector<double>& x,
                     const std::vector<double>& a);

}  // namespace hhfd
