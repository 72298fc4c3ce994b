#include "hhfd/geometry.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace hhfd {

Domain Domain::ball(std::vector<double> center, double radius) {
    if (radius <= 0.0) throw std::invalid_argument("radius must be positive");
    Domain d;
    d.kind = Kind::Ball;
    d.dim = static_cast<int>(center.size());
    d.center = std::move(center);
    d.radius = radius;
    return d;
}

Domain Domain::unit_ball(int d) {
    return ball(std::vector<double>(d, 0.0), 1.0);
}

Domain Domain::box(std::vector<double> lo, std::vector<double> hi) {
    if (lo.size() != hi.size())
        throw std::invalid_argument("box corner dimension mismatch");
    for (std::size_t j = 0; j < lo.size(); ++j)
        if (!(hi[j] > lo[j]))
            throw std::invalid_argument("box requires hi > lo componentwise");
    Domain d;
    d.kind = Kind::Box;
    d.dim = static_cast<int>(lo.size());
    d.lo = std::move(lo);
    d.hi = std::move(hi);
    return d;
}

Domain Domain::cube(int d, double lo, double hi) {
    return box(std::vector<double>(d, lo), std::vector<double>(d, hi));
}

bool Domain::contains_interior(const double* x) const {
    if (kind == Kind::Ball) {
        double r2 = 0.0;
        for (int j = 0; j < dim; ++j) {
            double t = x[j] - center[j];
            r2 += t * t;
        }
        return r2 < radius * radius;
    }
    for (int j = 0; j < dim; ++j)
        if (!(x[j] > lo[j] && x[j] < hi[j])) return false;
    return true;
}

double Domain::measure() const {
    if (kind == Kind::Ball) {
        // pi^(d/2) r^d / Gamma(d/2 + 1), via log-gamma
        double lg = 0.5 * dim * std::log(M_PI) + dim * std::log(radius) -
                    std::lgamma(0.5 * dim + 1.0);
        return std::exp(lg);
    }
    double m = 1.0;
    for (int j = 0; j < dim; ++j) m *= hi[j] - lo[j];
    return m;
}

double domain_measure(const Domain& domain) { return domain.measure(); }

namespace {

constexpr double kDuplicateTol = 1e-12;

void draw_interior(const Domain& dom, std::mt19937_64& rng, double* out) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    if (dom.kind == Domain::Kind::Ball) {
        std::normal_distribution<double> gauss(0.0, 1.0);
        double norm2 = 0.0;
        for (int j = 0; j < dom.dim; ++j) {
            out[j] = gauss(rng);
            norm2 += out[j] * out[j];
        }
        double norm = std::sqrt(norm2);
        double r = dom.radius * std::pow(unif(rng), 1.0 / dom.dim);
        for (int j = 0; j < dom.dim; ++j)
            out[j] = dom.center[j] + r * out[j] / norm;
    } else {
        for (int j = 0; j < dom.dim; ++j)
            out[j] = dom.lo[j] + (dom.hi[j] - dom.lo[j]) * unif(rng);
    }
}

void draw_boundary(const Domain& dom, std::mt19937_64& rng, double* out) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    if (dom.kind == Domain::Kind::Ball) {
        std::normal_distribution<double> gauss(0.0, 1.0);
        double norm2 = 0.0;
        for (int j = 0; j < dom.dim; ++j) {
            out[j] = gauss(rng);
            norm2 += out[j] * out[j];
        }
        double norm = std::sqrt(norm2);
        for (int j = 0; j < dom.dim; ++j)
            out[j] = dom.center[j] + dom.radius * out[j] / norm;
    } else {
        // face weights: all faces normal to j share measure prod_{k!=j}(hi-lo)
        double vol = 1.0;
        for (int j = 0; j < dom.dim; ++j) vol *= dom.hi[j] - dom.lo[j];
        std::vector<double> w(dom.dim);
        double total = 0.0;
        for (int j = 0; j < dom.dim; ++j) {
            w[j] = 2.0 * vol / (dom.hi[j] - dom.lo[j]);
            total += w[j];
        }
        double pick = unif(rng) * total;
        int face = 0;
        while (face < dom.dim - 1 && pick >= w[face]) {
            pick -= w[face];
            ++face;
        }
        bool high = unif(rng) < 0.5;
        for (int j = 0; j < dom.dim; ++j)
            out[j] = dom.lo[j] + (dom.hi[j] - dom.lo[j]) * unif(rng);
        out[face] = high ? dom.hi[face] : dom.lo[face];
    }
}

bool duplicates_any(const double* p, const std::vector<double>& accepted,
                    int dim) {
    const std::size_t n = accepted.size() / dim;
    for (std::size_t i = 0; i < n; ++i) {
        const double* q = accepted.data() + i * dim;
        double r2 = 0.0;
        for (int j = 0; j < dim; ++j) {
            double t = p[j] - q[j];
            r2 += t * t;
        }
        if (r2 <= kDuplicateTol * kDuplicateTol) return true;
    }
    return false;
}

std::vector<double> sample_points(const Domain& dom, std::size_t n,
                                  std::mt19937_64& rng, bool boundary,
                                  const std::vector<double>* avoid) {
    std::vector<double> pts;
    pts.reserve(n * dom.dim);
    std::vector<double> cand(dom.dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (int attempt = 0;; ++attempt) {
            if (attempt > 1000)
                throw std::runtime_error("node sampling: too many duplicate draws");
            if (boundary)
                draw_boundary(dom, rng, cand.data());
            else
                draw_interior(dom, rng, cand.data());
            if (duplicates_any(cand.data(), pts, dom.dim)) continue;
            if (avoid && duplicates_any(cand.data(), *avoid, dom.dim)) continue;
            break;
        }
        pts.insert(pts.end(), cand.begin(), cand.end());
    }
    return pts;
}

}  // namespace

std::vector<double> sample_interior(const Domain& domain, std::size_t N,
                                    std::uint64_t seed) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    std::mt19937_64 rng(seed);
    return sample_points(domain, N, rng, false, nullptr);
}

std::vector<double> sample_boundary(const Domain& domain, std::size_t N_b,
                                    std::uint64_t seed) {
    if (N_b < 1) throw std::invalid_argument("N_b must be >= 1");
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    return sample_points(domain, N_b, rng, true, nullptr);
}

NodeSet make_node_set(const Domain& domain, std::size_t N, std::size_t N_b,
                      std::uint64_t seed) {
    NodeSet nodes;
    nodes.dim = domain.dim;
    nodes.seed = seed;
    nodes.n_interior = N;
    nodes.n_boundary = N_b;
    std::mt19937_64 rng_i(seed);
    nodes.interior = sample_points(domain, N, rng_i, false, nullptr);
    std::mt19937_64 rng_b(seed ^ 0x9e3779b97f4a7c15ull);
    nodes.boundary = sample_points(domain, N_b, rng_b, true, &nodes.interior);
    return nodes;
}

}  // namespace hhfd
