#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "hhfd/index_set.hpp"

using namespace hhfd;

namespace {

// Independent oracle: scan the full lattice with every m_j < K.
std::set<std::vector<int>> brute_force_set(int d, double c, int K) {
    std::set<std::vector<int>> out;
    std::vector<int> m(d, 0);
    while (true) {
        double k = 1.0;
        for (int j = 0; j < d; ++j) k *= m[j] + c;
        if (k < K) out.insert(m);
        int j = 0;
        while (j < d) {
            if (++m[j] < K) break;
            m[j] = 0;
            ++j;
        }
        if (j == d) break;
    }
    return out;
}

std::vector<int> dense(const MultiIndex& m) {
    std::vector<int> v(m.dim, 0);
    for (auto& [j, e] : m.support) v[j] = e;
    return v;
}

std::set<std::vector<int>> as_set(const IndexSet& s) {
    std::set<std::vector<int>> out;
    for (auto& mem : s.members) out.insert(dense(mem.index));
    return out;
}

}  // namespace

TEST_CASE("order_number") {
    MultiIndex zero{10, {}};
    CHECK(order_number(zero, 1.0) == doctest::Approx(1.0));

    MultiIndex m{3, {{0, 2}, {2, 1}}};  // (2,0,1)
    CHECK(order_number(m, 1.0) == doctest::Approx(6.0));

    MultiIndex m2{2, {{0, 1}, {1, 1}}};
    CHECK(order_number(m2, 1.5) == doctest::Approx(6.25));
}

TEST_CASE("enumerate examples") {
    // strict inequality at K=1 leaves even the zero index out
    CHECK(enumerate_index_set(5, 1.0, 1).size() == 0);

    auto s = enumerate_index_set(2, 1.0, 4);
    CHECK(s.size() == 5);
    auto expect = brute_force_set(2, 1.0, 4);
    CHECK(as_set(s) == expect);

    // d=30, K=4: zero, 30 singletons of degree 1, 30 of degree 2
    auto big = enumerate_index_set(30, 1.0, 4);
    CHECK(big.size() == 61);
    CHECK(big.max_support == 1);
    int deg1 = 0, deg2 = 0;
    for (auto& mem : big.members) {
        if (mem.index.support.size() == 1) {
            if (mem.index.support[0].second == 1) ++deg1;
            if (mem.index.support[0].second == 2) ++deg2;
        }
    }
    CHECK(deg1 == 30);
    CHECK(deg2 == 30);
}

TEST_CASE("brute-force equivalence and bounds") {
    for (int d = 1; d <= 4; ++d)
        for (double c : {1.0, 1.5, 2.0})
            for (int K : {1, 2, 3, 5, 8, 13, 21, 30}) {
                auto s = enumerate_index_set(d, c, K);
                CHECK(as_set(s) == brute_force_set(d, c, K));
                CHECK(static_cast<double>(s.size()) < cardinality_bound(K, d));
                CHECK(s.max_support <= max_hdmr_order(K, c));
                for (auto& mem : s.members) {
                    CHECK(mem.k < K);
                    CHECK(mem.k ==
                          doctest::Approx(order_number(mem.index, c)));
                }
            }
}

TEST_CASE("deterministic ordering") {
    auto a = enumerate_index_set(4, 1.0, 12);
    auto b = enumerate_index_set(4, 1.0, 12);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.members[i].index == b.members[i].index);
        CHECK(a.members[i].k == b.members[i].k);
    }
    // k is non-decreasing along the order
    for (std::size_t i = 1; i < a.size(); ++i)
        CHECK(a.members[i - 1].k <= a.members[i].k);
}

TEST_CASE("monotonicity in K and c") {
    for (int K = 2; K <= 20; ++K) {
        auto small = as_set(enumerate_index_set(3, 1.0, K));
        auto large = as_set(enumerate_index_set(3, 1.0, K + 1));
        CHECK(std::includes(large.begin(), large.end(), small.begin(),
                            small.end()));
    }
    auto loose = as_set(enumerate_index_set(3, 1.0, 15));
    auto tight = as_set(enumerate_index_set(3, 2.0, 15));
    CHECK(std::includes(loose.begin(), loose.end(), tight.begin(),
                        tight.end()));
}

TEST_CASE("max_hdmr_order") {
    CHECK(max_hdmr_order(1, 1.0) == 0);
    CHECK(max_hdmr_order(4, 1.0) == 2);
    CHECK(max_hdmr_order(100, 1.0) == 6);
    // exhaustive check of the defining inequality
    for (int K = 1; K <= 200; ++K) {
        int u = max_hdmr_order(K, 1.0);
        CHECK(std::pow(2.0, u + 1) > K);
        if (u > 0) CHECK(!(std::pow(2.0, u) > K));
    }
}

TEST_CASE("cardinality_bound values") {
    CHECK(cardinality_bound(1, 7) == doctest::Approx(1.0));
    CHECK(cardinality_bound(4, 2) == doctest::Approx(4.0 * (1.0 + std::log(4.0))));
    CHECK(cardinality_bound(10, 3) ==
          doctest::Approx(10.0 * std::pow(1.0 + std::log(10.0), 2)));
}

TEST_CASE("capacity error") {
    CHECK_THROWS_AS(enumerate_index_set(4, 1.0, 30, 10), std::runtime_error);
}
