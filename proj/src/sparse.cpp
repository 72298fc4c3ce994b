#include "hhfd/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <queue>
#include <random>
#include <stdexcept>

namespace hhfd {

void SparseSystem::matvec(const double* x, double* y) const {
    const int rows = static_cast<int>(n);
    // Row-partitioned: each entry of y is summed by exactly one thread in a
    // fixed order, so the result is bitwise reproducible.
#pragma omp parallel for schedule(static)
    for (int i = 0; i < rows; ++i) {
        double s = 0.0;
        for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p)
            s += vals[p] * x[cols[p]];
        y[i] = s;
    }
}

double SparseSystem::residual_norm(const std::vector<double>& u) const {
    std::vector<double> au(n);
    matvec(u.data(), au.data());
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = au[i] - rhs[i];
        s += r * r;
    }
    return std::sqrt(s);
}

void SparseSystem::dump(std::ostream& os) const {
    os.precision(17);
    os << n << " " << n << " " << nnz() << "\n";
    for (std::size_t i = 0; i < n; ++i)
        for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p)
            os << i << " " << cols[p] << " " << vals[p] << "\n";
}

SparseSystem assemble(const std::vector<Stencil>& stencils,
                      const NodeSet& nodes, const ScalarField& source,
                      const ScalarField& boundary_value) {
    const std::size_t n = nodes.n_interior;
    if (stencils.size() != n)
        throw std::invalid_argument("assemble: one stencil per interior node");

    SparseSystem sys;
    sys.n = n;
    sys.row_ptr.resize(n + 1, 0);
    sys.rhs.resize(n);

    std::vector<std::pair<int, double>> row;
    for (std::size_t i = 0; i < n; ++i) {
        const Stencil& st = stencils[i];
        if (static_cast<std::size_t>(st.reference) != i)
            throw std::invalid_argument("assemble: stencils out of order");
        double b = source(nodes.interior_at(i));
        row.clear();
        for (std::size_t r = 0; r < st.neighbors.size(); ++r) {
            int g = st.neighbors[r];
            double w = st.weights[r];
            if (g < static_cast<int>(n)) {
                if (w != 0.0) row.emplace_back(g, w);
            } else {
                b -= w * boundary_value(nodes.node(g));
            }
        }
        std::sort(row.begin(), row.end());
        for (auto& [c, v] : row) {
            sys.cols.push_back(c);
            sys.vals.push_back(v);
        }
        sys.row_ptr[i + 1] = static_cast<int>(sys.cols.size());
        sys.rhs[i] = b;
    }
    return sys;
}

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// ILUT (threshold incomplete LU, Saad): row-wise elimination keeping at most
// fill_factor times the original row count of entries per triangular part,
// dropping entries below droptol relative to the row norm. Factorization
// fails (returns false) on a zero pivot; the caller then falls back to no
// preconditioning.
struct Ilut {
    int n = 0;
    std::vector<std::vector<std::pair<int, double>>> lower, upper;
    std::vector<double> udiag;

    bool factor(const SparseSystem& A, double droptol, double fill_factor) {
        n = static_cast<int>(A.n);
        lower.assign(n, {});
        upper.assign(n, {});
        udiag.assign(n, 0.0);
        std::vector<double> w(n, 0.0);
        std::vector<char> nz(n, 0);
        std::vector<int> idx;

        for (int i = 0; i < n; ++i) {
            idx.clear();
            double rownorm = 0.0;
            int row_nnz = A.row_ptr[i + 1] - A.row_ptr[i];
            for (int p = A.row_ptr[i]; p < A.row_ptr[i + 1]; ++p) {
                int j = A.cols[p];
                w[j] = A.vals[p];
                nz[j] = 1;
                idx.push_back(j);
                rownorm += A.vals[p] * A.vals[p];
            }
            rownorm = std::sqrt(rownorm);
            const double tau = droptol * rownorm;

            std::priority_queue<int, std::vector<int>, std::greater<int>> heap;
            for (int j : idx)
                if (j < i) heap.push(j);
            while (!heap.empty()) {
                int k = heap.top();
                heap.pop();
                while (!heap.empty() && heap.top() == k) heap.pop();
                double wk = w[k] / udiag[k];
                if (std::abs(wk) < tau) {
                    w[k] = 0.0;
                    continue;
                }
                w[k] = wk;
                for (auto& [j, uv] : upper[k]) {
                    if (!nz[j]) {
                        nz[j] = 1;
                        idx.push_back(j);
                        if (j < i) heap.push(j);
                    }
                    w[j] -= wk * uv;
                }
            }

            std::vector<std::pair<int, double>> lpart, upart;
            for (int j : idx) {
                if (j == i || w[j] == 0.0) continue;
                if (std::abs(w[j]) >= tau)
                    (j < i ? lpart : upart).emplace_back(j, w[j]);
            }
            auto cap = [&](std::vector<std::pair<int, double>>& part) {
                std::size_t keep = static_cast<std::size_t>(
                    fill_factor * row_nnz);
                if (part.size() > keep) {
                    std::partial_sort(
                        part.begin(), part.begin() + keep, part.end(),
                        [](auto& a, auto& b) {
                            return std::abs(a.second) > std::abs(b.second);
                        });
                    part.resize(keep);
                }
                std::sort(part.begin(), part.end());
            };
            cap(lpart);
            cap(upart);

            if (w[i] == 0.0) return false;
            udiag[i] = w[i];
            lower[i] = std::move(lpart);
            upper[i] = std::move(upart);
            for (int j : idx) {
                w[j] = 0.0;
                nz[j] = 0;
            }
        }
        return true;
    }

    void apply(const std::vector<double>& v, std::vector<double>& out) const {
        out = v;
        for (int i = 0; i < n; ++i)
            for (auto& [j, lv] : lower[i]) out[i] -= lv * out[j];
        for (int i = n; i-- > 0;) {
            for (auto& [j, uv] : upper[i]) out[i] -= uv * out[j];
            out[i] /= udiag[i];
        }
    }
};

}  // namespace

SolveReport bicgstab(const SparseSystem& system, double tol, int max_iter,
                     Precond precond_kind) {
    if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
    const std::size_t n = system.n;
    SolveReport rep;
    rep.method = "bicgstab";
    rep.solution.assign(n, 0.0);

    const double bnorm = norm2(system.rhs);
    if (bnorm == 0.0) {
        rep.converged = true;
        return rep;
    }

    // iterate on the row-equilibrated system (same solution, much better
    // Krylov geometry when row scales span orders of magnitude); convergence
    // is still tested in the original norm
    SparseSystem scaled = system;
    std::vector<double> rscale(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        double m = 0.0;
        for (int p = scaled.row_ptr[i]; p < scaled.row_ptr[i + 1]; ++p)
            m = std::max(m, std::abs(scaled.vals[p]));
        if (m > 0.0) {
            rscale[i] = m;
            for (int p = scaled.row_ptr[i]; p < scaled.row_ptr[i + 1]; ++p)
                scaled.vals[p] /= m;
            scaled.rhs[i] /= m;
        }
    }
    auto unorm = [&](const std::vector<double>& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double y = rscale[i] * x[i];
            s += y * y;
        }
        return std::sqrt(s);
    };

    std::vector<double> diag_inv;
    if (precond_kind == Precond::Jacobi) {
        diag_inv.assign(n, 1.0);
        for (std::size_t i = 0; i < n; ++i)
            for (int p = scaled.row_ptr[i]; p < scaled.row_ptr[i + 1]; ++p)
                if (scaled.cols[p] == static_cast<int>(i) &&
                    scaled.vals[p] != 0.0)
                    diag_inv[i] = 1.0 / scaled.vals[p];
    }
    Ilut ilu;
    if (precond_kind == Precond::Ilu && !ilu.factor(scaled, 1e-10, 10.0))
        precond_kind = Precond::None;
    auto precond = [&](const std::vector<double>& v, std::vector<double>& out) {
        if (precond_kind == Precond::Jacobi)
            for (std::size_t i = 0; i < n; ++i) out[i] = diag_inv[i] * v[i];
        else if (precond_kind == Precond::Ilu)
            ilu.apply(v, out);
        else
            out = v;
    };

    std::vector<double> r(n), r0(n), p(n, 0.0), v(n, 0.0), s(n), t(n);
    std::vector<double> phat(n), shat(n), tmp(n);
    std::vector<double> best(n, 0.0);
    double best_rnorm = bnorm;
    std::mt19937_64 shadow_rng(0x5deece66dull);

    // restart from the best iterate seen, with a fresh shadow direction so a
    // repeated breakdown does not hit the same unlucky orthogonality
    auto restart = [&](bool randomize) {
        rep.solution = best;
        scaled.matvec(rep.solution.data(), tmp.data());
        for (std::size_t i = 0; i < n; ++i) r[i] = scaled.rhs[i] - tmp[i];
        if (randomize) {
            std::uniform_real_distribution<double> unif(-1.0, 1.0);
            for (std::size_t i = 0; i < n; ++i) r0[i] = unif(shadow_rng);
        } else {
            r0 = r;
        }
        std::fill(p.begin(), p.end(), 0.0);
        std::fill(v.begin(), v.end(), 0.0);
    };

    constexpr double kBreakdown = 1e-30;
    restart(false);
    double rho = 1.0, alpha = 1.0, omega = 1.0;
    int restarts = 0;
    const int max_restarts = 20;
    for (int it = 0; it < max_iter; ++it) {
        double rho_new = dot(r0, r);
        double rnorm_now = unorm(r);
        bool diverged = !(rnorm_now < 1e4 * best_rnorm) ||
                        !std::isfinite(rnorm_now);
        if (std::abs(rho_new) < kBreakdown || std::abs(omega) < kBreakdown ||
            diverged) {
            if (++restarts > max_restarts) break;
            restart(true);
            rho = alpha = omega = 1.0;
            rho_new = dot(r0, r);
            if (std::abs(rho_new) < kBreakdown) break;
        }
        double beta = (rho_new / rho) * (alpha / omega);
        rho = rho_new;
        for (std::size_t i = 0; i < n; ++i)
            p[i] = r[i] + beta * (p[i] - omega * v[i]);
        precond(p, phat);
        scaled.matvec(phat.data(), v.data());
        alpha = rho / dot(r0, v);
        for (std::size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
        if (unorm(s) <= tol * bnorm) {
            for (std::size_t i = 0; i < n; ++i)
                rep.solution[i] += alpha * phat[i];
            rep.iterations = it + 1;
            break;
        }
        precond(s, shat);
        scaled.matvec(shat.data(), t.data());
        double tt = dot(t, t);
        omega = tt > 0.0 ? dot(t, s) / tt : 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            rep.solution[i] += alpha * phat[i] + omega * shat[i];
            r[i] = s[i] - omega * t[i];
        }
        rep.iterations = it + 1;
        double rnorm = unorm(r);
        if (std::isfinite(rnorm) && rnorm < best_rnorm) {
            best_rnorm = rnorm;
            best = rep.solution;
        }
        if (rnorm <= tol * bnorm) break;
    }

    double cur = system.residual_norm(rep.solution);
    if (!(cur <= best_rnorm)) rep.solution = best;
    rep.final_residual = system.residual_norm(rep.solution) / bnorm;
    rep.converged = rep.final_residual <= tol;
    return rep;
}

SolveReport sor(const SparseSystem& system, double omega, double tol,
                int max_iter) {
    if (!(omega > 0.0 && omega < 2.0))
        throw std::invalid_argument("SOR relaxation must lie in (0,2)");
    if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
    const std::size_t n = system.n;

    std::vector<double> diag(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (int p = system.row_ptr[i]; p < system.row_ptr[i + 1]; ++p)
            if (system.cols[p] == static_cast<int>(i)) diag[i] = system.vals[p];
    for (std::size_t i = 0; i < n; ++i)
        if (diag[i] == 0.0)
            throw std::runtime_error("sor: zero diagonal entry");

    SolveReport rep;
    rep.method = "sor";
    rep.solution.assign(n, 0.0);
    const double bnorm = norm2(system.rhs);
    if (bnorm == 0.0) {
        rep.converged = true;
        return rep;
    }

    std::vector<double>& u = rep.solution;
    for (int it = 0; it < max_iter; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = system.rhs[i];
            for (int p = system.row_ptr[i]; p < system.row_ptr[i + 1]; ++p)
                if (system.cols[p] != static_cast<int>(i))
                    s -= system.vals[p] * u[system.cols[p]];
            u[i] += omega * (s / diag[i] - u[i]);
        }
        rep.iterations = it + 1;
        if (system.residual_norm(u) <= tol * bnorm) break;
    }

    rep.final_residual = system.residual_norm(u) / bnorm;
    rep.converged = rep.final_residual <= tol;
    return rep;
}

}  // namespace hhfd
