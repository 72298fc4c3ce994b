#include "hhfd/problems.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hhfd {

DirichletProblem case1(int d) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    auto u = [d](const double* x) {
        double r2 = 0.0, s = 0.0;
        for (int j = 0; j < d; ++j) {
            r2 += x[j] * x[j];
            s += x[j];
        }
        return (1.0 - r2) / d + s;
    };
    DirichletProblem p;
    p.domain = Domain::unit_ball(d);
    p.source = [](const double*) { return -1.0; };
    p.boundary_value = u;
    p.exact = ScalarField(u);
    return p;
}

DirichletProblem case2(int d) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    auto u = [d](const double* x) {
        double s = 0.0;
        for (int j = 0; j < d; ++j) {
            double x2 = x[j] * x[j];
            s += x2 * x2;
        }
        return s / 6.0;
    };
    DirichletProblem p;
    p.domain = Domain::cube(d, -1.0, 1.0);
    p.source = [d](const double* x) {
        double s = 0.0;
        for (int j = 0; j < d; ++j) s += x[j] * x[j];
        return s;
    };
    p.boundary_value = u;
    p.exact = ScalarField(u);
    return p;
}

DirichletProblem case3(int d) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    auto u = [d](const double* x) {
        double r2 = 0.0, s = 0.0;
        for (int j = 0; j < d; ++j) {
            r2 += x[j] * x[j];
            s += x[j];
        }
        return std::atan(0.5 * s) + std::exp(-r2);
    };
    DirichletProblem p;
    p.domain = Domain::cube(d, -3.0, 3.0);
    p.source = [d](const double* x) {
        double r2 = 0.0, s = 0.0;
        for (int j = 0; j < d; ++j) {
            r2 += x[j] * x[j];
            s += x[j];
        }
        double q = 4.0 + s * s;
        return (2.0 * r2 - d) * std::exp(-r2) - 2.0 * d * s / (q * q);
    };
    p.boundary_value = u;
    p.exact = ScalarField(u);
    return p;
}

namespace {

struct Monomial {
    double coeff;
    std::vector<int> exps;
};

std::vector<double> parse_numbers(const std::string& text) {
    std::istringstream is(text);
    std::vector<double> out;
    double v;
    while (is >> v) out.push_back(v);
    return out;
}

}  // namespace

DirichletProblem custom_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open problem file: " + path);

    std::string kind;
    std::vector<double> center, lo, hi;
    double radius = 0.0;
    std::vector<Monomial> terms;

    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t") + 1);
        if (key == "domain") {
            std::istringstream(val) >> kind;
        } else if (key == "center") {
            center = parse_numbers(val);
        } else if (key == "radius") {
            std::istringstream(val) >> radius;
        } else if (key == "lo") {
            lo = parse_numbers(val);
        } else if (key == "hi") {
            hi = parse_numbers(val);
        } else if (key == "term") {
            auto nums = parse_numbers(val);
            if (nums.size() < 2)
                throw std::runtime_error("term needs a coefficient and exponents");
            Monomial t;
            t.coeff = nums[0];
            for (std::size_t i = 1; i < nums.size(); ++i)
                t.exps.push_back(static_cast<int>(nums[i]));
            terms.push_back(std::move(t));
        } else if (!key.empty()) {
            throw std::runtime_error("unknown key in problem file: " + key);
        }
    }
    if (terms.empty())
        throw std::runtime_error("problem file defines no solution terms");

    DirichletProblem p;
    if (kind == "ball")
        p.domain = Domain::ball(center, radius);
    else if (kind == "box")
        p.domain = Domain::box(lo, hi);
    else
        throw std::runtime_error("problem file domain must be ball or box");

    const int d = p.domain.dim;
    for (auto& t : terms)
        if (static_cast<int>(t.exps.size()) != d)
            throw std::runtime_error("term exponent count must match dimension");

    auto u = [terms, d](const double* x) {
        double sum = 0.0;
        for (auto& t : terms) {
            double prod = t.coeff;
            for (int j = 0; j < d; ++j)
                for (int e = 0; e < t.exps[j]; ++e) prod *= x[j];
            sum += prod;
        }
        return sum;
    };
    // source = (1/2) Lap u, term by term
    auto src = [terms, d](const double* x) {
        double sum = 0.0;
        for (auto& t : terms)
            for (int j = 0; j < d; ++j) {
                int e = t.exps[j];
                if (e < 2) continue;
                double prod = 0.5 * t.coeff * e * (e - 1);
                for (int k = 0; k < d; ++k) {
                    int ek = k == j ? e - 2 : t.exps[k];
                    for (int i = 0; i < ek; ++i) prod *= x[k];
                }
                sum += prod;
            }
        return sum;
    };
    p.source = src;
    p.boundary_value = u;
    p.exact = ScalarField(u);
    return p;
}

ArepResult arep(const std::vector<double>& U, const DirichletProblem& problem,
                const NodeSet& nodes) {
    if (!problem.exact)
        throw std::runtime_error("arep requires a problem with an exact solution");
    if (U.size() != nodes.n_interior)
        throw std::invalid_argument("arep: solution size mismatch");
    const auto& exact = *problem.exact;
    ArepResult res;
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.n_interior; ++i) {
        double ue = exact(nodes.interior_at(i));
        if (std::abs(ue) < 1e-12) {
            ++res.excluded;
            continue;
        }
        sum += std::abs((U[i] - ue) / ue);
        ++res.kept;
    }
    if (res.kept == 0)
        throw std::runtime_error("arep: every node excluded (exact solution "
                                 "vanishes on the node set)");
    res.percent = 100.0 * sum / res.kept;
    return res;
}

}  // namespace hhfd
