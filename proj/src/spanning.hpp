#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "partition.hpp"

namespace fw {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

template <typename T>
inline T bareiss_step(const T& a, const T& b, const T& c, const T& d, const T& prev) {
    return (a * b - c * d) / prev;
}

// Products of two minors can overflow int64 even when the quotient fits,
// so widen through __int128. Entries stay exact minors of the input.
inline int64_t bareiss_step(int64_t a, int64_t b, int64_t c, int64_t d, int64_t prev) {
    __int128 t = static_cast<__int128>(a) * b - static_cast<__int128>(c) * d;
    return static_cast<int64_t>(t / prev);
}

} // namespace detail

// Exact determinant of a square integer matrix via fraction-free
// (Bareiss) elimination. All intermediate entries are minors of the
// input, so T = int64_t is safe whenever every minor fits in 63 bits.
template <typename T>
T bareiss_determinant(std::vector<std::vector<T>> m) {
    int n = static_cast<int>(m.size());
    if (n == 0) return T(1);
    T prev(1);
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            int pivot = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) { pivot = i; break; }
            if (pivot == -1) return T(0);
            std::swap(m[k], m[pivot]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                m[i][j] = detail::bareiss_step(m[i][j], m[k][k], m[i][k], m[k][j], prev);
            m[i][k] = T(0);
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : T(-m[n - 1][n - 1]);
}

// Spanning tree counts by the matrix-tree theorem. Disconnected inputs
// give 0; graphs with at most one vertex give 1.
BigInt count_spanning_trees(const Graph& g);
BigInt count_spanning_trees_in(const Graph& g, const std::vector<int>& vertices);

// log of the spanning tree count; -inf when disconnected. Throws
// numerical_failure if the Cholesky factorization of the reduced
// Laplacian breaks down on a connected input.
double log_count_spanning_trees(const Graph& g);
double log_count_spanning_trees_in(const Graph& g, const std::vector<int>& vertices);

// sum over parts of log T(P) + c log |P|; -inf when any part is
// disconnected.
double partition_log_weight(const Graph& g, const PartitionView& p, double c);

} // namespace fw
