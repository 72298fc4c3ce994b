#include "hhfd/index_set.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hhfd {

double order_number(const MultiIndex& m, double c) {
    double k = std::pow(c, static_cast<double>(m.dim - static_cast<int>(m.support.size())));
    for (auto& [j, e] : m.support) k *= (e + c);
    return k;
}

int max_hdmr_order(int K, double c) {
    int u = 0;
    // (1+c)^(u+1) > K, strict
    double p = 1.0 + c;
    while (!(p > static_cast<double>(K))) {
        ++u;
        p *= (1.0 + c);
    }
    return u;
}

double cardinality_bound(int K, int d) {
    return K * std::pow(1.0 + std::log(static_cast<double>(K)), d - 1);
}

namespace {

struct Enumerator {
    int d;
    double c;
    double K;
    std::size_t limit;
    double base;  // c^d, the order number of the zero index
    std::vector<std::pair<int, int>> current;
    std::vector<IndexMember>* out;

    void emit(double k) {
        if (out->size() >= limit)
            throw std::runtime_error("index set exceeds member limit of " +
                                     std::to_string(limit));
        MultiIndex m{d, current};
        out->push_back(IndexMember{std::move(m), k});
    }

    // current holds a partial support over coordinates < start; k is its
    // order number including the c factors of all remaining coordinates.
    void recurse(int start, double k) {
        emit(k);
        for (int j = start; j < d; ++j) {
            // raising coordinate j from exponent 0 replaces a factor c by (e+c)
            for (int e = 1; k / c * (e + c) < K; ++e) {
                current.emplace_back(j, e);
                recurse(j + 1, k / c * (e + c));
                current.pop_back();
            }
        }
    }
};

}  // namespace

IndexSet enumerate_index_set(int d, double c, int K, std::size_t member_limit) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    if (K < 1) throw std::invalid_argument("truncation order K must be >= 1");
    if (c < 1.0) throw std::invalid_argument("shift c must be >= 1");

    IndexSet set;
    set.dim = d;
    set.K = K;
    set.c = c;

    const double base = std::pow(c, d);
    if (base < static_cast<double>(K)) {
        Enumerator en{d, c, static_cast<double>(K), member_limit, base, {}, &set.members};
        en.recurse(0, base);
    }

    std::sort(set.members.begin(), set.members.end(),
              [](const IndexMember& a, const IndexMember& b) {
                  if (a.k != b.k) return a.k < b.k;
                  if (a.index.support.size() != b.index.support.size())
                      return a.index.support.size() < b.index.support.size();
                  return a.index.support < b.index.support;
              });

    for (auto& m : set.members) {
        set.max_support = std::max(set.max_support,
                                   static_cast<int>(m.index.support.size()));
        set.max_degree = std::max(set.max_degree, m.index.max_exponent());
    }
    return set;
}

}  // namespace hhfd
