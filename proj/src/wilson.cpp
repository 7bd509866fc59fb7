#include "wilson.hpp"

#include <algorithm>

#include "error.hpp"

namespace fw {

std::vector<int> sample_ust(const Graph& g, const std::vector<int>& subset, Pcg32& rng) {
    if (subset.empty()) fail(Errc::invalid_argument, "empty vertex subset");
    std::vector<int> verts = subset;
    std::sort(verts.begin(), verts.end());
    if (!connected_subset(g, verts))
        fail(Errc::no_spanning_tree, "induced subgraph is disconnected");
    int n = static_cast<int>(verts.size());
    std::vector<int> index_of(g.vertex_count(), -1);
    for (int i = 0; i < n; ++i) index_of[verts[i]] = i;

    struct Arc {
        int edge;
        int to;  // local index
    };
    std::vector<std::vector<Arc>> local(n);
    for (int i = 0; i < n; ++i)
        for (const auto& inc : g.incident(verts[i]))
            if (int j = index_of[inc.neighbor]; j != -1) local[i].push_back({inc.edge, j});

    std::vector<char> in_tree(n, 0);
    std::vector<int> next_vertex(n, -1);
    std::vector<int> next_edge(n, -1);
    in_tree[0] = 1;  // root = minimum vertex id
    std::vector<int> tree;
    tree.reserve(n - 1);
    for (int start = 1; start < n; ++start) {
        if (in_tree[start]) continue;
        int u = start;
        while (!in_tree[u]) {
            const Arc& a = local[u][rng.below(static_cast<uint32_t>(local[u].size()))];
            next_vertex[u] = a.to;
            next_edge[u] = a.edge;
            u = a.to;
        }
        u = start;
        while (!in_tree[u]) {
            in_tree[u] = 1;
            tree.push_back(next_edge[u]);
            u = next_vertex[u];
        }
    }
    std::sort(tree.begin(), tree.end());
    return tree;
}

} // namespace fw
