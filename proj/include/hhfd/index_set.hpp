#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace hhfd {

/// Sparse nonnegative multi-index in N_0^d: only coordinates with a
/// nonzero exponent are stored, sorted by coordinate.
struct MultiIndex {
    int dim = 0;
    std::vector<std::pair<int, int>> support;  // (coordinate in [0,dim), exponent >= 1)

    bool operator==(const MultiIndex&) const = default;

    int max_exponent() const {
        int m = 0;
        for (auto& [j, e] : support)
            if (e > m) m = e;
        return m;
    }
};

/// Order number k_m = prod_j (m_j + c), computed from the support alone.
double order_number(const MultiIndex& m, double c);

struct IndexMember {
    MultiIndex index;
    double k;  // order number under the set's shift c
};

/// The HDMR-structured Hermite index set { m : prod (m_j + c) < K },
/// in a deterministic total order.
struct IndexSet {
    int dim = 0;
    int K = 0;
    double c = 1.0;
    std::vector<IndexMember> members;
    int max_support = 0;  // largest support size occurring
    int max_degree = 0;   // largest single exponent occurring

    std::size_t size() const { return members.size(); }
};

/// Enumerates { m in N_0^d : prod (m_j + c) < K } support-subset by
/// support-subset, so cost scales with the result size and d.
/// Members are sorted by (k ascending, support size, lexicographic support).
/// Throws std::runtime_error if the set would exceed member_limit.
IndexSet enumerate_index_set(int d, double c, int K,
                             std::size_t member_limit = 10'000'000);

/// Smallest u >= 0 with (1+c)^(u+1) > K; bounds the support size of any
/// member of the index set.
int max_hdmr_order(int K, double c);

/// The bound K (1 + ln K)^(d-1) on the index-set cardinality.
double cardinality_bound(int K, int d);

}  // namespace hhfd
