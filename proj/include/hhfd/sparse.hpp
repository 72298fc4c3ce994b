#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "hhfd/geometry.hpp"
#include "hhfd/stencil.hpp"

namespace hhfd {

/// A scalar field evaluated at a node (the dimension is captured).
using ScalarField = std::function<double(const double*)>;

/// Row-compressed sparse system A U = Phi' on the interior unknowns.
struct SparseSystem {
    std::size_t n = 0;
    std::vector<int> row_ptr;   // n + 1 offsets
    std::vector<int> cols;      // strictly increasing per row
    std::vector<double> vals;
    std::vector<double> rhs;

    std::size_t nnz() const { return cols.size(); }
    void matvec(const double* x, double* y) const;
    double residual_norm(const std::vector<double>& u) const;  // ||A u - rhs||_2
    /// "rows cols nnz" header then "i j value" triplets, 17 significant digits.
    void dump(std::ostream& os) const;
};

/// Folds boundary values into the right-hand side and keeps interior-neighbor
/// weights as matrix entries; one stencil per interior node, in order.
SparseSystem assemble(const std::vector<Stencil>& stencils,
                      const NodeSet& nodes, const ScalarField& source,
                      const ScalarField& boundary_value);

struct SolveReport {
    std::vector<double> solution;
    int iterations = 0;
    double final_residual = 0.0;  // relative to ||rhs||
    bool converged = false;
    std::string method;
};

enum class Precond { None, Jacobi, Ilu };

/// BiCGSTAB with right preconditioning (none by default), stopping at
/// ||r|| <= tol ||rhs||. Breakdown or divergence restarts from the best
/// iterate seen with a fresh shadow vector.
SolveReport bicgstab(const SparseSystem& system, double tol, int max_iter,
                     Precond precond = Precond::None);

/// SOR sweeps with relaxation omega in (0,2), same stopping rule.
SolveReport sor(const SparseSystem& system, double omega, double tol,
                int max_iter);

}  // namespace hhfd
