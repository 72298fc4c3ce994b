#include "hhfd/stencil.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hhfd {

double select_lambda(double theta, double kappa, int M, std::size_t N,
                     double domain_measure, int d) {
    if (!(theta > 1.0)) throw std::invalid_argument("theta must exceed 1");
    if (kappa <= 0.0 || M <= 0 || N == 0 || domain_measure <= 0.0 || d < 1)
        throw std::invalid_argument("select_lambda: inputs must be positive");
    // log-space: log lambda = log(kappa sqrt(pi)) + (1/d) log(N / (theta M Gamma(d/2+1) |Omega|))
    double log_ratio = std::log(static_cast<double>(N)) - std::log(theta) -
                       std::log(static_cast<double>(M)) -
                       std::lgamma(0.5 * d + 1.0) - std::log(domain_measure);
    return kappa * std::sqrt(M_PI) * std::exp(log_ratio / d);
}

std::vector<int> find_neighbors(const NodeSet& nodes, const double* reference,
                                double rho, int min_neighbors,
                                int* expansions_used) {
    const int d = nodes.dim;
    const std::size_t total = nodes.total();
    std::vector<double> dist2(total);
    for (std::size_t g = 0; g < total; ++g) {
        const double* p = nodes.node(g);
        double r2 = 0.0;
        for (int j = 0; j < d; ++j) {
            double t = p[j] - reference[j];
            r2 += t * t;
        }
        dist2[g] = r2;
    }

    std::vector<int> found;
    double r = rho;
    for (int expansion = 0; expansion <= 50; ++expansion) {
        found.clear();
        const double r2max = r * r;
        for (std::size_t g = 0; g < total; ++g)
            if (dist2[g] <= r2max) found.push_back(static_cast<int>(g));
        if (static_cast<int>(found.size()) >= min_neighbors) {
            if (expansions_used) *expansions_used = expansion;
            return found;
        }
        r *= 1.1;
    }
    throw std::runtime_error(
        "find_neighbors: fewer than M nodes within radius after 50 "
        "expansions; node set too small for this K");
}

double smooth_coefficient_scale(const MultiIndex& m, double c, double beta) {
    return std::pow(order_number(m, c), -beta);
}

Stencil build_laplacian_row(const NodeSet& nodes, int reference_index,
                            const BasisSpec& spec, const MethodParams& params,
                            BasisEvaluator& work) {
    const int d = nodes.dim;
    const int M = spec.size();
    const double* ref = nodes.interior_at(reference_index);

    Stencil st;
    st.reference = reference_index;
    int min_nb = params.min_neighbors > 0 ? params.min_neighbors : M;
    st.neighbors = find_neighbors(nodes, ref, params.search_radius(), min_nb,
                                  &st.expansions);
    const int q = static_cast<int>(st.neighbors.size());

    // column damping k^(-beta)
    Eigen::VectorXd damp(M);
    for (int j = 0; j < M; ++j)
        damp[j] = std::pow(spec.set.members[j].k, -spec.beta);

    const double lam2 = spec.lambda * spec.lambda;
    Eigen::MatrixXd B(q, M);
    Eigen::VectorXd w_sqrtless(q);  // Gaussian weights, not square-rooted
    std::vector<double> vals(M), laps(M);
    for (int r = 0; r < q; ++r) {
        const double* p = nodes.node(st.neighbors[r]);
        work.eval(p, ref, vals.data(), laps.data());
        for (int j = 0; j < M; ++j) B(r, j) = vals[j] * damp[j];
        double r2 = 0.0;
        for (int k = 0; k < d; ++k) {
            double t = p[k] - ref[k];
            r2 += t * t;
        }
        w_sqrtless[r] = std::exp(-lam2 * r2);
    }

    // D[j] = (1/2) Lap H^(j)(0) / k_j^beta; the 1/2 folds the PDE's factor in.
    work.eval(ref, ref, vals.data(), laps.data());
    Eigen::VectorXd D(M);
    for (int j = 0; j < M; ++j) D[j] = 0.5 * laps[j] * damp[j];

    // Solve G y = D with G = B^T W B through a pivoted QR of sqrt(W) B;
    // the normal equations square the conditioning and their ridge shift
    // wrecks in-span exactness for the thin near-boundary fits.
    Eigen::MatrixXd S = w_sqrtless.cwiseSqrt().asDiagonal() * B;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(S);
    Eigen::VectorXd rdiag = qr.matrixR().diagonal().head(M).cwiseAbs();
    double rmin = rdiag.minCoeff();
    double cond_s = rmin > 0.0 ? rdiag.maxCoeff() / rmin
                               : std::numeric_limits<double>::infinity();
    st.cond_estimate = cond_s * cond_s;

    Eigen::VectorXd w(q);
    if (st.cond_estimate < 1e14) {
        // with S P = Q R,  W B G^-1 D  collapses to  sqrt(W) Q R^-T P^T D,
        // which needs only one triangular solve and never squares cond(S)
        Eigen::VectorXd v = qr.colsPermutation().transpose() * D;
        Eigen::MatrixXd R = qr.matrixR().topLeftCorner(M, M);
        Eigen::VectorXd z =
            R.triangularView<Eigen::Upper>().transpose().solve(v);
        Eigen::VectorXd qz = Eigen::VectorXd::Zero(q);
        qz.head(M) = z;
        qz.applyOnTheLeft(qr.householderQ());
        w = w_sqrtless.cwiseSqrt().asDiagonal() * qz;
    } else {
        // degenerate fit: fall back to ridge-regularized normal equations
        Eigen::MatrixXd G = S.transpose() * S;
        G.diagonal().array() += params.ridge * G.trace() / M;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
        Eigen::VectorXd dv = ldlt.vectorD().cwiseAbs();
        double dmin = dv.minCoeff();
        st.cond_estimate = dmin > 0.0
                               ? dv.maxCoeff() / dmin
                               : std::numeric_limits<double>::infinity();
        if (!(st.cond_estimate < 1e14))
            throw std::runtime_error(
                "build_laplacian_row: local Gram matrix numerically singular "
                "(condition estimate above 1e14)");
        w = w_sqrtless.asDiagonal() * B * ldlt.solve(D).eval();
    }
    st.weights.assign(w.data(), w.data() + q);
    for (double v : st.weights)
        if (!std::isfinite(v))
            throw std::runtime_error("build_laplacian_row: non-finite weight");
    return st;
}

std::vector<Stencil> build_all_stencils(const NodeSet& nodes,
                                        const BasisSpec& spec,
                                        const MethodParams& params,
                                        bool parallel) {
    const int n = static_cast<int>(nodes.n_interior);
    std::vector<Stencil> rows(n);
    if (parallel) {
        std::exception_ptr err;
#pragma omp parallel
        {
            BasisEvaluator work(spec);
#pragma omp for schedule(dynamic, 16)
            for (int i = 0; i < n; ++i) {
                try {
                    rows[i] = build_laplacian_row(nodes, i, spec, params, work);
                } catch (...) {
#pragma omp critical
                    if (!err) err = std::current_exception();
                }
            }
        }
        if (err) std::rethrow_exception(err);
    } else {
        BasisEvaluator work(spec);
        for (int i = 0; i < n; ++i)
            rows[i] = build_laplacian_row(nodes, i, spec, params, work);
    }
    return rows;
}

}  // namespace hhfd
