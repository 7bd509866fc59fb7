#include "graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "error.hpp"

namespace fw {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 0) fail(Errc::invalid_argument, "negative vertex count");
    std::set<std::pair<int, int>> seen;
    adjacency_.assign(n_, {});
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
        auto [u, v] = edges_[e];
        if (u < 0 || u >= n_ || v < 0 || v >= n_)
            fail(Errc::invalid_argument, "edge endpoint out of range");
        if (u == v) fail(Errc::invalid_argument, "self-loop rejected");
        if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
            fail(Errc::invalid_argument, "parallel edge rejected");
        adjacency_[u].push_back({e, v});
        adjacency_[v].push_back({e, u});
    }
}

int Graph::edge_between(int u, int v) const {
    for (const auto& inc : adjacency_[u])
        if (inc.neighbor == v) return inc.edge;
    return -1;
}

void Graph::set_coords(std::vector<std::array<double, 2>> coords) {
    if (static_cast<int>(coords.size()) != n_)
        fail(Errc::invalid_argument, "coords size mismatch");
    coords_ = std::move(coords);
}

void Graph::set_tags(std::vector<EdgeTag> tags) {
    if (tags.size() != edges_.size())
        fail(Errc::invalid_argument, "tags size mismatch");
    for (const auto& t : tags) {
        bool cyc = t.cls == EdgeClass::LeftCycle || t.cls == EdgeClass::RightCycle;
        if (cyc != (t.position >= 0))
            fail(Errc::invalid_argument, "position present iff edge is on a cycle class");
    }
    tags_ = std::move(tags);
}

bool Graph::connected() const {
    if (n_ == 0) return true;
    std::vector<char> seen(n_, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int found = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& inc : adjacency_[v]) {
            if (!seen[inc.neighbor]) {
                seen[inc.neighbor] = 1;
                ++found;
                stack.push_back(inc.neighbor);
            }
        }
    }
    return found == n_;
}

uint64_t Graph::structural_hash() const {
    uint64_t h = 1469598103934665603ULL;  // FNV-1a
    auto mix = [&h](uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    mix(static_cast<uint64_t>(n_));
    for (const auto& e : edges_) {
        mix(static_cast<uint64_t>(std::min(e.u, e.v)));
        mix(static_cast<uint64_t>(std::max(e.u, e.v)));
    }
    return h;
}

// ---- Generators ----------------------------------------------------------

Graph path(int n) {
    if (n < 1) fail(Errc::invalid_argument, "path requires n >= 1");
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    Graph g(n, std::move(edges));
    std::vector<std::array<double, 2>> coords(n);
    for (int i = 0; i < n; ++i) coords[i] = {static_cast<double>(i), 0.0};
    g.set_coords(std::move(coords));
    return g;
}

Graph cycle(int n) {
    if (n < 3) fail(Errc::invalid_argument, "cycle requires n >= 3");
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
    Graph g(n, std::move(edges));
    std::vector<std::array<double, 2>> coords(n);
    for (int i = 0; i < n; ++i) {
        double a = 2.0 * std::numbers::pi * i / n;
        coords[i] = {std::cos(a), std::sin(a)};
    }
    g.set_coords(std::move(coords));
    return g;
}

Graph grid(int m, int n) {
    if (m < 1 || n < 1) fail(Errc::invalid_argument, "grid requires m, n >= 1");
    auto id = [n](int i, int j) { return i * n + j; };
    std::vector<Edge> edges;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            if (j + 1 < n) edges.push_back({id(i, j), id(i, j + 1)});
            if (i + 1 < m) edges.push_back({id(i, j), id(i + 1, j)});
        }
    Graph g(m * n, std::move(edges));
    std::vector<std::array<double, 2>> coords(m * n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) coords[id(i, j)] = {static_cast<double>(j), static_cast<double>(i)};
    g.set_coords(std::move(coords));
    return g;
}

Graph double_cycle(int len) {
    if (len < 3) fail(Errc::invalid_argument, "double_cycle requires len >= 3");
    // Vertices: l_i = i, r_i = len + i. Cycle edge with label j joins
    // position j-1 (mod len) to position j; rung i joins l_i to r_i.
    std::vector<Edge> edges;
    std::vector<EdgeTag> tags;
    for (int j = 0; j < len; ++j) {
        edges.push_back({(j - 1 + len) % len, j});
        tags.push_back({EdgeClass::LeftCycle, j});
    }
    for (int j = 0; j < len; ++j) {
        edges.push_back({len + (j - 1 + len) % len, len + j});
        tags.push_back({EdgeClass::RightCycle, j});
    }
    for (int i = 0; i < len; ++i) {
        edges.push_back({i, len + i});
        tags.push_back({EdgeClass::Rung, -1});
    }
    Graph g(2 * len, std::move(edges));
    g.set_tags(std::move(tags));
    std::vector<std::array<double, 2>> coords(2 * len);
    for (int i = 0; i < len; ++i) {
        double a = 2.0 * std::numbers::pi * i / len;
        coords[i] = {2.0 * std::cos(a), 2.0 * std::sin(a)};
        coords[len + i] = {std::cos(a), std::sin(a)};
    }
    g.set_coords(std::move(coords));
    return g;
}

Graph grid_with_hole(int m, int n) {
    if (m < 4 || n < 4) fail(Errc::invalid_argument, "grid_with_hole requires m, n >= 4");
    // Ring order: top row left-to-right, right column down, bottom row
    // right-to-left, left column up. Vertex t on the ring gets id t.
    std::vector<std::pair<int, int>> ring;
    for (int j = 0; j < n; ++j) ring.push_back({0, j});
    for (int i = 1; i < m; ++i) ring.push_back({i, n - 1});
    for (int j = n - 2; j >= 0; --j) ring.push_back({m - 1, j});
    for (int i = m - 2; i >= 1; --i) ring.push_back({i, 0});
    int len = static_cast<int>(ring.size());  // 2(m+n)-4

    // Labeling table: walking the ring, the label advances by 1 per edge
    // except across a corner vertex, where the two incident edges share a
    // label. Labels are taken mod len-4, which closes the cycle exactly.
    auto is_corner = [&](int t) {
        auto [i, j] = ring[t];
        return (i == 0 || i == m - 1) && (j == 0 || j == n - 1);
    };
    std::vector<Edge> edges;
    std::vector<EdgeTag> tags;
    int label = 0;
    for (int t = 0; t < len; ++t) {
        if (t > 0 && !is_corner(t)) label = (label + 1) % (len - 4);
        edges.push_back({t, (t + 1) % len});
        tags.push_back({EdgeClass::LeftCycle, label});
    }
    Graph g(len, std::move(edges));
    g.set_tags(std::move(tags));
    std::vector<std::array<double, 2>> coords(len);
    for (int t = 0; t < len; ++t)
        coords[t] = {static_cast<double>(ring[t].second), static_cast<double>(ring[t].first)};
    g.set_coords(std::move(coords));
    return g;
}

Graph cartesian_product(const Graph& g, const Graph& h) {
    if (g.vertex_count() == 0 || h.vertex_count() == 0)
        fail(Errc::invalid_argument, "cartesian product of empty graph");
    int nh = h.vertex_count();
    auto id = [nh](int u, int v) { return u * nh + v; };
    std::vector<Edge> edges;
    for (int u = 0; u < g.vertex_count(); ++u)
        for (const auto& e : h.edges()) edges.push_back({id(u, e.u), id(u, e.v)});
    for (const auto& e : g.edges())
        for (int v = 0; v < nh; ++v) edges.push_back({id(e.u, v), id(e.v, v)});
    return Graph(g.vertex_count() * nh, std::move(edges));
}

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& subset) {
    if (subset.empty()) fail(Errc::invalid_argument, "empty vertex subset");
    std::vector<int> to_new(g.vertex_count(), -1);
    std::vector<int> to_original;
    for (int v : subset) {
        if (v < 0 || v >= g.vertex_count()) fail(Errc::invalid_argument, "subset vertex out of range");
        if (to_new[v] != -1) fail(Errc::invalid_argument, "duplicate vertex in subset");
        to_new[v] = static_cast<int>(to_original.size());
        to_original.push_back(v);
    }
    std::vector<Edge> edges;
    std::vector<EdgeTag> tags;
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edge(e);
        if (to_new[u] != -1 && to_new[v] != -1) {
            edges.push_back({to_new[u], to_new[v]});
            if (g.has_tags()) tags.push_back(g.tag(e));
        }
    }
    Graph sub(static_cast<int>(to_original.size()), std::move(edges));
    if (g.has_tags()) sub.set_tags(std::move(tags));
    if (g.has_coords()) {
        std::vector<std::array<double, 2>> coords;
        for (int v : to_original) coords.push_back(g.coords()[v]);
        sub.set_coords(std::move(coords));
    }
    return {std::move(sub), std::move(to_original)};
}

bool connected_subset(const Graph& g, const std::vector<int>& subset) {
    if (subset.empty()) return true;
    std::vector<int> index_of(g.vertex_count(), -1);
    for (size_t i = 0; i < subset.size(); ++i) {
        int v = subset[i];
        if (v < 0 || v >= g.vertex_count()) fail(Errc::invalid_argument, "subset vertex out of range");
        if (index_of[v] != -1) fail(Errc::invalid_argument, "duplicate vertex in subset");
        index_of[v] = static_cast<int>(i);
    }
    std::vector<char> seen(subset.size(), 0);
    std::vector<int> stack{subset.front()};
    seen[0] = 1;
    size_t found = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& inc : g.incident(v)) {
            int idx = index_of[inc.neighbor];
            if (idx != -1 && !seen[idx]) {
                seen[idx] = 1;
                ++found;
                stack.push_back(inc.neighbor);
            }
        }
    }
    return found == subset.size();
}

// ---- Edge-list text format -----------------------------------------------

void write_edge_list(const Graph& g, std::ostream& out) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        out << ed.u << ' ' << ed.v;
        if (g.has_tags()) {
            const auto& t = g.tag(e);
            switch (t.cls) {
                case EdgeClass::LeftCycle: out << " L " << t.position; break;
                case EdgeClass::RightCycle: out << " R " << t.position; break;
                case EdgeClass::Rung: out << " E"; break;
                case EdgeClass::None: break;
            }
        }
        out << '\n';
    }
}

Graph read_edge_list(std::istream& in) {
    int n = 0, m = 0;
    if (!(in >> n >> m)) fail(Errc::io_failure, "bad edge-list header");
    std::string rest;
    std::getline(in, rest);
    std::vector<Edge> edges;
    std::vector<EdgeTag> tags;
    bool any_tag = false;
    for (int e = 0; e < m; ++e) {
        std::string line;
        if (!std::getline(in, line)) fail(Errc::io_failure, "truncated edge list");
        std::istringstream ls(line);
        int u, v;
        if (!(ls >> u >> v)) fail(Errc::io_failure, "bad edge line");
        EdgeTag tag;
        std::string cls;
        if (ls >> cls) {
            any_tag = true;
            if (cls == "L" || cls == "R") {
                int pos;
                if (!(ls >> pos)) fail(Errc::io_failure, "cycle edge without position");
                tag = {cls == "L" ? EdgeClass::LeftCycle : EdgeClass::RightCycle, pos};
            } else if (cls == "E") {
                tag = {EdgeClass::Rung, -1};
            } else {
                fail(Errc::io_failure, "unknown edge class '" + cls + "'");
            }
        }
        edges.push_back({u, v});
        tags.push_back(tag);
    }
    Graph g(n, std::move(edges));
    if (any_tag) g.set_tags(std::move(tags));
    return g;
}

void write_edge_list_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(Errc::io_failure, "cannot open " + path + " for writing");
    write_edge_list(g, out);
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::io_failure, "cannot open " + path);
    return read_edge_list(in);
}

} // namespace fw
