#include "spanning.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <cmath>
#include <limits>

#include "error.hpp"

namespace fw {

namespace {

// Collects the induced edges as index pairs into `vertices`.
std::vector<std::pair<int, int>> induced_edge_pairs(const Graph& g,
                                                    const std::vector<int>& vertices) {
    std::vector<int> index_of(g.vertex_count(), -1);
    for (size_t i = 0; i < vertices.size(); ++i) {
        int v = vertices[i];
        if (v < 0 || v >= g.vertex_count()) fail(Errc::invalid_argument, "vertex out of range");
        if (index_of[v] != -1) fail(Errc::invalid_argument, "duplicate vertex");
        index_of[v] = static_cast<int>(i);
    }
    std::vector<std::pair<int, int>> pairs;
    for (size_t i = 0; i < vertices.size(); ++i) {
        for (const auto& inc : g.incident(vertices[i])) {
            int j = index_of[inc.neighbor];
            if (j > static_cast<int>(i)) pairs.emplace_back(static_cast<int>(i), j);
        }
    }
    return pairs;
}

template <typename T>
T reduced_laplacian_det(int n, const std::vector<std::pair<int, int>>& pairs) {
    int dim = n - 1;
    std::vector<std::vector<T>> lap(dim, std::vector<T>(dim, T(0)));
    for (auto [a, b] : pairs) {
        if (a > b) std::swap(a, b);
        if (a < dim) lap[a][a] += 1;
        if (b < dim) lap[b][b] += 1;
        if (b < dim) {
            lap[a][b] -= 1;
            lap[b][a] -= 1;
        }
    }
    return bareiss_determinant(std::move(lap));
}

} // namespace

BigInt count_spanning_trees_in(const Graph& g, const std::vector<int>& vertices) {
    int n = static_cast<int>(vertices.size());
    if (n <= 1) return 1;
    auto pairs = induced_edge_pairs(g, vertices);
    // Bareiss intermediates are minors of the reduced Laplacian, each
    // bounded by the forest count and hence by 2^m.
    if (pairs.size() <= 62)
        return reduced_laplacian_det<int64_t>(n, pairs);
    return reduced_laplacian_det<BigInt>(n, pairs);
}

BigInt count_spanning_trees(const Graph& g) {
    std::vector<int> all(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) all[v] = v;
    return count_spanning_trees_in(g, all);
}

double log_count_spanning_trees_in(const Graph& g, const std::vector<int>& vertices) {
    int n = static_cast<int>(vertices.size());
    if (n <= 1) return 0.0;
    if (!connected_subset(g, vertices))
        return -std::numeric_limits<double>::infinity();
    auto pairs = induced_edge_pairs(g, vertices);
    int dim = n - 1;
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(dim, dim);
    for (auto [a, b] : pairs) {
        if (a > b) std::swap(a, b);
        if (a < dim) lap(a, a) += 1.0;
        if (b < dim) lap(b, b) += 1.0;
        if (b < dim) {
            lap(a, b) -= 1.0;
            lap(b, a) -= 1.0;
        }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(lap);
    if (llt.info() != Eigen::Success)
        fail(Errc::numerical_failure, "Cholesky failed on connected reduced Laplacian");
    double log_det = 0.0;
    const Eigen::MatrixXd& factor = llt.matrixLLT();
    for (int i = 0; i < dim; ++i) {
        if (!(factor(i, i) > 0.0))
            fail(Errc::numerical_failure, "non-positive Cholesky pivot");
        log_det += 2.0 * std::log(factor(i, i));
    }
    return log_det;
}

double log_count_spanning_trees(const Graph& g) {
    std::vector<int> all(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) all[v] = v;
    return log_count_spanning_trees_in(g, all);
}

double partition_log_weight(const Graph& g, const PartitionView& p, double c) {
    if (p.vertex_count() != g.vertex_count())
        fail(Errc::invalid_argument, "partition does not match graph");
    double total = 0.0;
    for (const auto& part : p.parts()) {
        double lt = log_count_spanning_trees_in(g, part);
        if (std::isinf(lt)) return -std::numeric_limits<double>::infinity();
        total += lt + c * std::log(static_cast<double>(part.size()));
    }
    return total;
}

} // namespace fw
