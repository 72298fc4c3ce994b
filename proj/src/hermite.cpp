#include "hhfd/hermite.hpp"

#include <cmath>
#include <stdexcept>

namespace hhfd {

PhiTriple hermite_phi_triple(int j, double t) {
    if (j < 0) throw std::invalid_argument("degree must be nonnegative");
    if (j == 0) return {1.0, 0.0, 0.0};
    double prev2 = 0.0;  // phi_{j-2}
    double prev = 1.0;   // phi_{j-1}
    double cur = -2.0 * t;
    for (int n = 1; n < j; ++n) {
        double next = -2.0 * t * cur - 2.0 * n * prev;
        prev2 = prev;
        prev = cur;
        cur = next;
    }
    // phi_j' = -2j phi_{j-1}, phi_j'' = 4j(j-1) phi_{j-2}
    return {cur, -2.0 * j * prev, 4.0 * j * (j - 1.0) * prev2};
}

double normalization_constant(const MultiIndex& m, double lambda,
                              Normalization mode) {
    const int d = m.dim;
    // prod (2 m_i)!! = prod 2^{m_i} m_i!, in log space
    double log_fact = 0.0;
    for (auto& [j, e] : m.support)
        log_fact += e * std::log(2.0) + std::lgamma(e + 1.0);
    const double log_pi = std::log(M_PI);
    double log_n2;  // log of the squared constant
    if (mode == Normalization::Paper)
        log_n2 = d * std::log(lambda) - d * log_pi - log_fact;
    else
        log_n2 = d * std::log(lambda) - 0.5 * d * log_pi - log_fact;
    return std::exp(0.5 * log_n2);
}

BasisSpec BasisSpec::create(IndexSet set, double lambda, double beta,
                            Normalization mode) {
    if (lambda <= 0.0) throw std::invalid_argument("lambda must be positive");
    if (beta < 0.0) throw std::invalid_argument("beta must be nonnegative");
    BasisSpec spec;
    spec.lambda = lambda;
    spec.beta = beta;
    spec.mode = mode;
    spec.norm.reserve(set.members.size());
    for (auto& mem : set.members)
        spec.norm.push_back(normalization_constant(mem.index, lambda, mode));
    spec.set = std::move(set);
    return spec;
}

BasisEvaluator::BasisEvaluator(const BasisSpec& spec)
    : spec_(&spec),
      dim_(spec.set.dim),
      degrees_(spec.set.max_degree + 1),
      val_(static_cast<std::size_t>(dim_) * degrees_),
      d2_(static_cast<std::size_t>(dim_) * degrees_) {}

void BasisEvaluator::eval(const double* x, const double* a, double* values,
                          double* laplacians) {
    const double lambda = spec_->lambda;
    // Per-coordinate recurrence tables up to the max occurring degree.
    for (int i = 0; i < dim_; ++i) {
        const double t = lambda * (x[i] - a[i]);
        double* v = val_.data() + static_cast<std::size_t>(i) * degrees_;
        double* s = d2_.data() + static_cast<std::size_t>(i) * degrees_;
        v[0] = 1.0;
        s[0] = 0.0;
        if (degrees_ > 1) {
            v[1] = -2.0 * t;
            s[1] = 0.0;
        }
        for (int e = 2; e < degrees_; ++e) {
            v[e] = -2.0 * t * v[e - 1] - 2.0 * (e - 1) * v[e - 2];
            s[e] = 4.0 * e * (e - 1.0) * v[e - 2];
        }
    }

    const double lam2 = lambda * lambda;
    const auto& members = spec_->set.members;
    for (std::size_t j = 0; j < members.size(); ++j) {
        const auto& supp = members[j].index.support;
        double prod = 1.0;
        for (auto& [coord, e] : supp)
            prod *= val_[static_cast<std::size_t>(coord) * degrees_ + e];
        // Off-support coordinates contribute phi_0'' = 0 to the Laplacian.
        double lap = 0.0;
        for (auto& [coord, e] : supp) {
            double term = d2_[static_cast<std::size_t>(coord) * degrees_ + e];
            for (auto& [c2, e2] : supp)
                if (c2 != coord)
                    term *= val_[static_cast<std::size_t>(c2) * degrees_ + e2];
            lap += term;
        }
        values[j] = spec_->norm[j] * prod;
        laplacians[j] = spec_->norm[j] * lam2 * lap;
    }
}

BasisEval basis_eval(const BasisSpec& spec, const std::vector<double>& x,
                     const std::vector<double>& a) {
    if (static_cast<int>(x.size()) != spec.set.dim ||
        static_cast<int>(a.size()) != spec.set.dim)
        throw std::invalid_argument("point dimension mismatch");
    BasisEval out;
    out.values.resize(spec.set.members.size());
    out.laplacians.resize(spec.set.members.size());
    BasisEvaluator ev(spec);
    ev.eval(x.data(), a.data(), out.values.data(), out.laplacians.data());
    return out;
}

}  // namespace hhfd
