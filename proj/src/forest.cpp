#include "forest.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "error.hpp"

namespace fw {

ForestState::ForestState(const Graph& g, ForestBackend backend)
    : g_(&g),
      backend_(backend),
      k_(g.vertex_count()),
      in_forest_(g.edge_count(), 0),
      pos_(g.edge_count(), -1),
      adj_(g.vertex_count()) {
    non_members_.reserve(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        pos_[e] = static_cast<int>(non_members_.size());
        non_members_.push_back(e);
    }
    if (backend == ForestBackend::LinkCut) lct_.emplace(g.vertex_count());
}

ForestState ForestState::from_edges(const Graph& g, const std::vector<int>& edges,
                                    ForestBackend backend) {
    ForestState s(g, backend);
    for (int e : edges) {
        if (e < 0 || e >= g.edge_count()) fail(Errc::invalid_argument, "edge index out of range");
        if (s.in_forest_[e]) fail(Errc::invalid_argument, "duplicate edge index");
        auto [u, v] = g.edge(e);
        if (s.connected(u, v)) fail(Errc::invalid_forest, "edge set contains a cycle");
        s.link(e);
    }
    return s;
}

std::vector<int> ForestState::sorted_forest_edges() const {
    std::vector<int> out = members_;
    std::sort(out.begin(), out.end());
    return out;
}

void ForestState::pool_move(int e, std::vector<int>& from, std::vector<int>& to) {
    int i = pos_[e];
    int last = from.back();
    from[i] = last;
    pos_[last] = i;
    from.pop_back();
    pos_[e] = static_cast<int>(to.size());
    to.push_back(e);
}

void ForestState::link(int e) {
    if (e < 0 || e >= g_->edge_count()) fail(Errc::invalid_argument, "edge index out of range");
    if (in_forest_[e]) fail(Errc::cycle_edge, "edge already in forest");
    auto [u, v] = g_->edge(e);
    if (connected(u, v)) fail(Errc::cycle_edge, "endpoints already connected");
    in_forest_[e] = 1;
    pool_move(e, non_members_, members_);
    adj_[u].push_back({e, v});
    adj_[v].push_back({e, u});
    if (lct_) lct_->link(u, v);
    --k_;
}

void ForestState::cut(int e) {
    if (e < 0 || e >= g_->edge_count()) fail(Errc::invalid_argument, "edge index out of range");
    if (!in_forest_[e]) fail(Errc::edge_not_present, "edge not in forest");
    auto [u, v] = g_->edge(e);
    in_forest_[e] = 0;
    pool_move(e, members_, non_members_);
    auto drop = [&](int a, int b) {
        auto& lst = adj_[a];
        for (size_t i = 0; i < lst.size(); ++i) {
            if (lst[i].edge == e) {
                lst[i] = lst.back();
                lst.pop_back();
                return;
            }
        }
        (void)b;
    };
    drop(u, v);
    drop(v, u);
    if (lct_) lct_->cut(u, v);
    ++k_;
}

bool ForestState::connected(int u, int v) {
    if (u == v) return true;
    if (lct_) return lct_->connected(u, v);
    std::vector<char> seen(g_->vertex_count(), 0);
    std::vector<int> stack{u};
    seen[u] = 1;
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        if (a == v) return true;
        for (const auto& inc : adj_[a]) {
            if (!seen[inc.neighbor]) {
                seen[inc.neighbor] = 1;
                stack.push_back(inc.neighbor);
            }
        }
    }
    return false;
}

int ForestState::component_size_of(int v) {
    if (lct_) return lct_->component_size(v);
    return static_cast<int>(component_vertices(v).size());
}

std::vector<int> ForestState::naive_path_vertices(int u, int v) const {
    std::vector<int> parent(g_->vertex_count(), -2);
    std::vector<int> stack{u};
    parent[u] = -1;
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        if (a == v) break;
        for (const auto& inc : adj_[a]) {
            if (parent[inc.neighbor] == -2) {
                parent[inc.neighbor] = a;
                stack.push_back(inc.neighbor);
            }
        }
    }
    if (parent[v] == -2) fail(Errc::not_connected, "vertices in different components");
    std::vector<int> path;
    for (int a = v; a != -1; a = parent[a]) path.push_back(a);
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<int> ForestState::tree_path(int u, int v) {
    if (u == v) return {};
    std::vector<int> verts;
    if (lct_) {
        if (!lct_->connected(u, v)) fail(Errc::not_connected, "vertices in different components");
        verts = lct_->path_vertices(u, v);
    } else {
        verts = naive_path_vertices(u, v);
    }
    std::vector<int> edges;
    edges.reserve(verts.size() - 1);
    for (size_t i = 0; i + 1 < verts.size(); ++i) {
        int e = g_->edge_between(verts[i], verts[i + 1]);
        edges.push_back(e);
    }
    return edges;
}

int ForestState::tree_path_length(int u, int v) {
    if (u == v) return 1;
    if (lct_) {
        if (!lct_->connected(u, v)) fail(Errc::not_connected, "vertices in different components");
        return lct_->path_length(u, v);
    }
    return static_cast<int>(naive_path_vertices(u, v).size());
}

int ForestState::tree_path_edge(int u, int v, int i) {
    if (lct_) {
        if (!lct_->connected(u, v)) fail(Errc::not_connected, "vertices in different components");
        int len = lct_->path_length(u, v);
        if (i < 0 || i >= len - 1) fail(Errc::invalid_argument, "path edge index out of range");
        int a = lct_->path_vertex(u, v, i);
        int b = lct_->path_vertex(u, v, i + 1);
        return g_->edge_between(a, b);
    }
    auto verts = naive_path_vertices(u, v);
    if (i < 0 || i + 1 >= static_cast<int>(verts.size()))
        fail(Errc::invalid_argument, "path edge index out of range");
    return g_->edge_between(verts[i], verts[i + 1]);
}

std::vector<EdgeSplit> ForestState::subtree_split_sizes(int root) {
    if (root < 0 || root >= g_->vertex_count()) fail(Errc::invalid_argument, "root out of range");
    // iterative post-order over the component
    std::vector<int> order;
    std::vector<int> parent_edge(g_->vertex_count(), -1);
    std::vector<char> seen(g_->vertex_count(), 0);
    std::vector<int> stack{root};
    seen[root] = 1;
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        order.push_back(a);
        for (const auto& inc : adj_[a]) {
            if (!seen[inc.neighbor]) {
                seen[inc.neighbor] = 1;
                parent_edge[inc.neighbor] = inc.edge;
                stack.push_back(inc.neighbor);
            }
        }
    }
    int comp = static_cast<int>(order.size());
    std::vector<int> sub(g_->vertex_count(), 1);
    std::vector<EdgeSplit> out;
    out.reserve(comp - 1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int a = *it;
        if (a == root) continue;
        int e = parent_edge[a];
        auto [x, y] = g_->edge(e);
        int other = x == a ? y : x;
        sub[other] += sub[a];
        out.push_back({e, sub[a], comp - sub[a]});
    }
    return out;
}

std::vector<int> ForestState::component_vertices(int v) const {
    std::vector<char> seen(g_->vertex_count(), 0);
    std::vector<int> stack{v};
    std::vector<int> comp;
    seen[v] = 1;
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        comp.push_back(a);
        for (const auto& inc : adj_[a]) {
            if (!seen[inc.neighbor]) {
                seen[inc.neighbor] = 1;
                stack.push_back(inc.neighbor);
            }
        }
    }
    std::sort(comp.begin(), comp.end());
    return comp;
}

std::vector<int> ForestState::component_assignment() const {
    std::vector<int> comp(g_->vertex_count(), -1);
    int next = 0;
    for (int v = 0; v < g_->vertex_count(); ++v) {
        if (comp[v] != -1) continue;
        std::vector<int> stack{v};
        comp[v] = next;
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            for (const auto& inc : adj_[a]) {
                if (comp[inc.neighbor] == -1) {
                    comp[inc.neighbor] = next;
                    stack.push_back(inc.neighbor);
                }
            }
        }
        ++next;
    }
    return comp;
}

PartitionView ForestState::partition() const {
    return PartitionView::from_assignment(component_assignment());
}

bool ForestState::check_consistent() {
    auto comp = component_assignment();
    int comps = *std::max_element(comp.begin(), comp.end()) + 1;
    if (comps != k_) return false;
    if (static_cast<int>(members_.size()) != g_->vertex_count() - k_) return false;
    std::vector<int> counts(comps, 0);
    for (int c : comp) ++counts[c];
    for (int v = 0; v < g_->vertex_count(); ++v)
        if (component_size_of(v) != counts[comp[v]]) return false;
    for (int e = 0; e < g_->edge_count(); ++e) {
        bool member = std::find(members_.begin(), members_.end(), e) != members_.end();
        if (member != static_cast<bool>(in_forest_[e])) return false;
        auto [u, v] = g_->edge(e);
        if (in_forest_[e] && comp[u] != comp[v]) return false;
        if (connected(u, v) != (comp[u] == comp[v])) return false;
    }
    return true;
}

bool ForestState::operator==(const ForestState& other) const {
    return g_->structural_hash() == other.g_->structural_hash() &&
           sorted_forest_edges() == other.sorted_forest_edges();
}

std::string serialize_forest(const ForestState& s) {
    std::ostringstream out;
    out << std::hex << s.graph().structural_hash() << std::dec;
    for (int e : s.sorted_forest_edges()) out << ' ' << e;
    return out.str();
}

ForestState deserialize_forest(const Graph& g, const std::string& line, ForestBackend backend) {
    std::istringstream in(line);
    std::string hash_hex;
    if (!(in >> hash_hex)) fail(Errc::io_failure, "empty forest line");
    uint64_t hash = 0;
    auto res = std::from_chars(hash_hex.data(), hash_hex.data() + hash_hex.size(), hash, 16);
    if (res.ec != std::errc() || res.ptr != hash_hex.data() + hash_hex.size())
        fail(Errc::io_failure, "bad graph hash field");
    if (hash != g.structural_hash())
        fail(Errc::invalid_argument, "forest line does not match this graph");
    std::vector<int> edges;
    int e;
    while (in >> e) edges.push_back(e);
    return ForestState::from_edges(g, edges, backend);
}

} // namespace fw
