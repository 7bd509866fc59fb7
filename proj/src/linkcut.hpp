#pragma once

#include <vector>

namespace fw {

// Link-cut tree over a fixed vertex universe 0..n-1. Amortized-log
// link/cut/connectivity, component sizes via virtual-subtree counts, and
// order-statistic access to tree paths (path vertices indexed from u).
// Queries splay internally, so none of the methods are const.
class LinkCutTree {
public:
    explicit LinkCutTree(int n);

    int size() const { return static_cast<int>(nodes_.size()); }

    // Caller guarantees u and v lie in different trees.
    void link(int u, int v);
    // Caller guarantees the edge (u,v) is present in the forest.
    void cut(int u, int v);

    bool connected(int u, int v);
    int find_root(int v);
    int component_size(int v);
    void make_root(int v);

    // Tree-path queries; u and v must be connected. Index 0 is u.
    int path_length(int u, int v);
    int path_vertex(int u, int v, int index);
    std::vector<int> path_vertices(int u, int v);

private:
    struct Node {
        int ch[2] = {-1, -1};
        int parent = -1;
        bool flip = false;
        int cnt = 1;    // real nodes in this splay subtree
        int vsub = 0;   // total sizes of virtual children
        int total = 1;  // cnt + virtual sizes anywhere below
    };
    std::vector<Node> nodes_;
    std::vector<int> splay_stack_;

    bool is_splay_root(int x) const;
    int side_of(int x) const;
    void push(int x);
    void pull(int x);
    void rotate(int x);
    void splay(int x);
    void access(int x);
};

} // namespace fw
