#pragma once

#include <cstddef>
#include <vector>

#include "hhfd/geometry.hpp"
#include "hhfd/hermite.hpp"

namespace hhfd {

/// Tuning knobs of the finite-difference operator. rho = kappa / lambda is
/// the nominal stencil radius used to pick lambda; the neighbor search
/// reaches further (tail_factor / lambda, where the Gaussian weight falls to
/// exp(-tail_factor^2) ~ 1e-7) because the weakly weighted tail keeps
/// degenerate local fits well posed.
struct MethodParams {
    double kappa = 2.628;
    double theta = 2.0;    // oversampling factor, > 1
    double lambda = 0.0;   // Gaussian scale, set via select_lambda or by hand
    double ridge = 1e-10;  // regularization scale relative to tr(G)/M
    double tail_factor = 4.0;
    int min_neighbors = 0; // at least M; set from the basis size

    double rho() const { return kappa / lambda; }
    double search_radius() const {
        return (tail_factor > kappa ? tail_factor : kappa) / lambda;
    }
};

/// Gaussian scale from node density:
/// lambda = kappa sqrt(pi) (N / (theta M Gamma(d/2+1) |Omega|))^(1/d).
double select_lambda(double theta, double kappa, int M, std::size_t N,
                     double domain_measure, int d);

/// Indices (into the interior-then-boundary global order) of all nodes within
/// distance rho of the reference point. If fewer than min_neighbors are
/// found, the radius grows by 1.1x, up to 50 expansions; expansions_used
/// reports how many were needed. Throws on exhaustion.
std::vector<int> find_neighbors(const NodeSet& nodes, const double* reference,
                                double rho, int min_neighbors,
                                int* expansions_used = nullptr);

/// Per-reference-node difference row: w . u(neighbors) ~ (1/2) Lap u(ref).
struct Stencil {
    int reference = 0;
    std::vector<int> neighbors;   // global node indices, includes reference
    std::vector<double> weights;  // same length
    double cond_estimate = 0.0;   // of the regularized Gram matrix
    int expansions = 0;           // radius expansions used
};

/// The smoothing damping k_m^(-beta) applied to basis column m.
double smooth_coefficient_scale(const MultiIndex& m, double c, double beta);

/// Builds one Laplacian weight row by a Gaussian-weighted least-squares fit
/// of the local Hermite expansion over the neighbors. The workspace evaluator
/// must belong to the same spec; pass one per thread.
Stencil build_laplacian_row(const NodeSet& nodes, int reference_index,
                            const BasisSpec& spec, const MethodParams& params,
                            BasisEvaluator& work);

/// All interior rows, ordered by reference index. The parallel path runs the
/// per-node builds under OpenMP; the serial path is the reference
/// implementation and produces identical output.
std::vector<Stencil> build_all_stencils(const NodeSet& nodes,
                                        const BasisSpec& spec,
                                        const MethodParams& params,
                                        bool parallel = true);

}  // namespace hhfd
