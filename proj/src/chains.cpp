#include "chains.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "error.hpp"
#include "wilson.hpp"

namespace fw {

namespace {

constexpr int kBisectionRetries = 10000;

// Per-edge side sizes of an explicit tree over `verts`, rooted at
// verts.front(); below = size of the side away from the root.
std::vector<EdgeSplit> tree_splits(const Graph& g, const std::vector<int>& verts,
                                   const std::vector<int>& tree) {
    int n = static_cast<int>(verts.size());
    assert(static_cast<int>(tree.size()) == n - 1);
    std::vector<int> index_of(g.vertex_count(), -1);
    for (int i = 0; i < n; ++i) index_of[verts[i]] = i;
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (host edge, local nb)
    for (int e : tree) {
        auto [u, v] = g.edge(e);
        int a = index_of[u], b = index_of[v];
        assert(a != -1 && b != -1);
        adj[a].push_back({e, b});
        adj[b].push_back({e, a});
    }
    std::vector<int> order;
    order.reserve(n);
    std::vector<int> parent_edge(n, -1);
    std::vector<int> parent(n, -1);
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        order.push_back(a);
        for (auto [e, b] : adj[a]) {
            if (!seen[b]) {
                seen[b] = 1;
                parent_edge[b] = e;
                parent[b] = a;
                stack.push_back(b);
            }
        }
    }
    assert(static_cast<int>(order.size()) == n);
    std::vector<int> sub(n, 1);
    std::vector<EdgeSplit> out;
    out.reserve(n - 1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int a = *it;
        if (a == 0) continue;
        sub[parent[a]] += sub[a];
        out.push_back({parent_edge[a], sub[a], n - sub[a]});
    }
    return out;
}

// Splits `verts` into the two sides of `tree` minus `cut`; first side
// contains the lower endpoint of the cut edge.
std::pair<std::vector<int>, std::vector<int>> tree_sides(const Graph& g,
                                                         const std::vector<int>& verts,
                                                         const std::vector<int>& tree, int cut) {
    std::vector<int> index_of(g.vertex_count(), -1);
    int n = static_cast<int>(verts.size());
    for (int i = 0; i < n; ++i) index_of[verts[i]] = i;
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (int e : tree) {
        if (e == cut) continue;
        auto [u, v] = g.edge(e);
        adj[index_of[u]].push_back({e, index_of[v]});
        adj[index_of[v]].push_back({e, index_of[u]});
    }
    auto [cu, cv] = g.edge(cut);
    int start = index_of[std::min(cu, cv)];
    std::vector<char> side(n, 0);
    std::vector<int> stack{start};
    side[start] = 1;
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        for (auto [e, b] : adj[a]) {
            if (!side[b]) {
                side[b] = 1;
                stack.push_back(b);
            }
        }
    }
    std::pair<std::vector<int>, std::vector<int>> out;
    for (int i = 0; i < n; ++i)
        (side[i] ? out.first : out.second).push_back(verts[i]);
    return out;
}

std::vector<int> sorted_component_sizes(const ForestState& s) {
    auto comp = s.component_assignment();
    std::vector<int> counts(s.component_count(), 0);
    for (int c : comp) ++counts[c];
    std::sort(counts.begin(), counts.end());
    return counts;
}

void bisect_region(const Graph& g, const std::vector<int>& region, int k, Pcg32& rng,
                   std::vector<int>& out) {
    if (k == 1) {
        auto tree = sample_ust(g, region, rng);
        out.insert(out.end(), tree.begin(), tree.end());
        return;
    }
    int total = static_cast<int>(region.size());
    int part = total / k;
    int k1 = k / 2;
    int target = k1 * part;
    for (int attempt = 0; attempt < kBisectionRetries; ++attempt) {
        auto tree = sample_ust(g, region, rng);
        std::vector<int> cands;
        for (const auto& sp : tree_splits(g, region, tree))
            if (sp.below == target || sp.above == target) cands.push_back(sp.edge);
        if (cands.empty()) continue;
        int cut = cands[rng.below(static_cast<uint32_t>(cands.size()))];
        auto [side_a, side_b] = tree_sides(g, region, tree, cut);
        if (static_cast<int>(side_a.size()) != target) std::swap(side_a, side_b);
        bisect_region(g, side_a, k1, rng, out);
        bisect_region(g, side_b, k - k1, rng, out);
        return;
    }
    fail(Errc::initialization_failure, "no balanced bisection found within retry budget");
}

} // namespace

ForestState initial_balanced_state(const Graph& g, int k, Pcg32& rng, ForestBackend backend) {
    if (k < 1) fail(Errc::invalid_argument, "k must be positive");
    if (g.vertex_count() % k != 0) fail(Errc::invalid_argument, "k must divide the vertex count");
    std::vector<int> all(g.vertex_count());
    std::iota(all.begin(), all.end(), 0);
    std::vector<int> edges;
    edges.reserve(g.vertex_count() - k);
    bisect_region(g, all, k, rng, edges);
    return ForestState::from_edges(g, edges, backend);
}

ForestState forest_from_partition(const Graph& g, const PartitionView& p, ForestBackend backend) {
    if (p.vertex_count() != g.vertex_count())
        fail(Errc::invalid_argument, "partition does not match graph");
    std::vector<int> part_of(g.vertex_count(), -1);
    for (int i = 0; i < p.part_count(); ++i)
        for (int v : p.part(i)) part_of[v] = i;
    std::vector<int> edges;
    std::vector<char> seen(g.vertex_count(), 0);
    for (const auto& part : p.parts()) {
        std::vector<int> queue{part.front()};
        seen[part.front()] = 1;
        size_t covered = 1;
        for (size_t head = 0; head < queue.size(); ++head) {
            int a = queue[head];
            for (const auto& inc : g.incident(a)) {
                if (part_of[inc.neighbor] == part_of[a] && !seen[inc.neighbor]) {
                    seen[inc.neighbor] = 1;
                    ++covered;
                    edges.push_back(inc.edge);
                    queue.push_back(inc.neighbor);
                }
            }
        }
        if (covered != part.size())
            fail(Errc::invalid_argument, "partition part induces a disconnected subgraph");
    }
    return ForestState::from_edges(g, edges, backend);
}

StepRecord recom_step(ForestState& s, const ChainParams& params, Pcg32& rng) {
    const Graph& g = s.graph();
    StepRecord rec;
    rec.variant = ChainVariant::Recom;

    std::vector<int> boundary;
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edge(e);
        if (!s.connected(u, v)) boundary.push_back(e);
    }
    if (boundary.empty()) fail(Errc::step_failure, "no edges between distinct components");
    int e = boundary[rng.below(static_cast<uint32_t>(boundary.size()))];
    rec.boundary_edge = e;
    auto [eu, ev] = g.edge(e);

    std::vector<int> merged = s.component_vertices(eu);
    {
        auto other = s.component_vertices(ev);
        merged.insert(merged.end(), other.begin(), other.end());
        std::sort(merged.begin(), merged.end());
    }
    int total = static_cast<int>(merged.size());
    if (total % 2 != 0)
        fail(Errc::step_failure, "merged region containing vertex " +
                                     std::to_string(merged.front()) +
                                     " has odd size; no balanced split exists");
    int half = total / 2;

    std::vector<char> in_merged(g.vertex_count(), 0);
    for (int v : merged) in_merged[v] = 1;
    std::vector<int> internal;
    for (int fe : s.forest_edges()) {
        auto [u, v] = g.edge(fe);
        if (in_merged[u] && in_merged[v]) internal.push_back(fe);
    }

    std::vector<int> working = internal;
    working.push_back(e);
    std::vector<int> candidates;
    for (const auto& sp : tree_splits(g, merged, working))
        if (sp.below == half && sp.edge != e) candidates.push_back(sp.edge);

    int resamples = 0;
    std::vector<int> fresh;
    while (candidates.empty()) {
        if (resamples >= params.resample_cap)
            fail(Errc::step_failure, "resample cap exhausted in merged region containing vertex " +
                                         std::to_string(merged.front()));
        ++resamples;
        fresh = sample_ust(g, merged, rng);
        for (const auto& sp : tree_splits(g, merged, fresh))
            if (sp.below == half) candidates.push_back(sp.edge);
    }
    int f = candidates[rng.below(static_cast<uint32_t>(candidates.size()))];
    rec.removed_edge = f;
    rec.resample_count = resamples;

    if (resamples == 0) {
        s.link(e);
        s.cut(f);
    } else {
        rec.resampled_tree = fresh;
        for (int ie : internal) s.cut(ie);
        for (int te : fresh)
            if (te != f) s.link(te);
    }
    rec.post_sizes = sorted_component_sizes(s);
    return rec;
}

StepRecord forest_walk_step(ForestState& s, const ChainParams& params, Pcg32& rng) {
    const Graph& g = s.graph();
    StepRecord rec;
    rec.variant = ChainVariant::ForestWalk;
    if (s.non_forest_edges().empty()) {
        // host graph is itself a forest and fully used; the walk is frozen
        rec.lazy = true;
        rec.post_sizes = sorted_component_sizes(s);
        return rec;
    }
    int x = s.non_forest_edges()[rng.below(static_cast<uint32_t>(s.non_forest_edges().size()))];
    rec.up_edge = x;
    auto [u, v] = g.edge(x);

    if (s.connected(u, v)) {
        // cycle case: removal candidates are the tree path plus x itself
        int cyc = s.tree_path_length(u, v);  // path edges + 1
        uint32_t j = rng.below(static_cast<uint32_t>(cyc));
        if (j == static_cast<uint32_t>(cyc - 1)) {
            rec.down_edge = x;
            rec.lazy = true;
        } else {
            int y = s.tree_path_edge(u, v, static_cast<int>(j));
            rec.down_edge = y;
            s.cut(y);
            s.link(x);
        }
    } else {
        rec.joins_components = true;
        s.link(x);
        int y;
        if (params.c == 0.0) {
            const auto& mem = s.forest_edges();
            y = mem[rng.below(static_cast<uint32_t>(mem.size()))];
        } else {
            auto comp = s.component_assignment();
            std::vector<int> root(s.component_count(), -1);
            for (int w = 0; w < g.vertex_count(); ++w)
                if (root[comp[w]] == -1) root[comp[w]] = w;
            std::vector<int> cand;
            std::vector<double> weight;
            cand.reserve(s.forest_edge_count());
            weight.reserve(s.forest_edge_count());
            for (int r : root) {
                for (const auto& sp : s.subtree_split_sizes(r)) {
                    double q = sp.below + sp.above;
                    cand.push_back(sp.edge);
                    weight.push_back(std::pow(sp.below * static_cast<double>(sp.above) / q, params.c));
                }
            }
            double total = std::accumulate(weight.begin(), weight.end(), 0.0);
            double tgt = rng.next_double() * total;
            size_t idx = 0;
            double acc = 0.0;
            for (; idx + 1 < weight.size(); ++idx) {
                acc += weight[idx];
                if (tgt < acc) break;
            }
            y = cand[idx];
        }
        rec.down_edge = y;
        if (y == x) rec.lazy = true;
        s.cut(y);
    }
    rec.post_sizes = sorted_component_sizes(s);
    return rec;
}

void apply_record(ForestState& s, const StepRecord& rec) {
    if (rec.variant == ChainVariant::ForestWalk) {
        if (rec.lazy) return;
        s.cut(rec.down_edge);
        s.link(rec.up_edge);
        return;
    }
    if (rec.resample_count == 0) {
        s.link(rec.boundary_edge);
        s.cut(rec.removed_edge);
        return;
    }
    auto [eu, ev] = s.graph().edge(rec.boundary_edge);
    std::vector<int> merged = s.component_vertices(eu);
    {
        auto other = s.component_vertices(ev);
        merged.insert(merged.end(), other.begin(), other.end());
    }
    std::vector<char> in_merged(s.graph().vertex_count(), 0);
    for (int v : merged) in_merged[v] = 1;
    std::vector<int> internal;
    for (int fe : s.forest_edges()) {
        auto [u, v] = s.graph().edge(fe);
        if (in_merged[u] && in_merged[v]) internal.push_back(fe);
    }
    for (int ie : internal) s.cut(ie);
    for (int te : rec.resampled_tree)
        if (te != rec.removed_edge) s.link(te);
}

ForestState run_chain(const ChainParams& params, ForestState initial, const ChainObserver& observer) {
    if (params.k < 2) fail(Errc::invalid_argument, "k must be at least 2");
    if (params.c < 0.0) fail(Errc::invalid_argument, "bias exponent must be nonnegative");
    if (params.steps < 0) fail(Errc::invalid_argument, "negative step budget");
    if (initial.component_count() != params.k)
        fail(Errc::invalid_argument, "initial state does not have k components");
    if (params.variant == ChainVariant::Recom) {
        if (initial.vertex_count() % params.k != 0)
            fail(Errc::invalid_argument, "ReCom requires k to divide the vertex count");
        if (!initial.partition().is_balanced())
            fail(Errc::invalid_argument, "ReCom requires a balanced initial state");
    }
    Pcg32 rng(params.seed);
    for (int64_t t = 0; t < params.steps; ++t) {
        StepRecord rec = params.variant == ChainVariant::Recom
                             ? recom_step(initial, params, rng)
                             : forest_walk_step(initial, params, rng);
        rec.step = t;
        if (observer) observer(initial, rec);
    }
    return initial;
}

} // namespace fw
