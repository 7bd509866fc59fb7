#include "linkcut.hpp"

#include <cassert>

namespace fw {

LinkCutTree::LinkCutTree(int n) : nodes_(n) {}

bool LinkCutTree::is_splay_root(int x) const {
    int p = nodes_[x].parent;
    return p == -1 || (nodes_[p].ch[0] != x && nodes_[p].ch[1] != x);
}

int LinkCutTree::side_of(int x) const {
    return nodes_[nodes_[x].parent].ch[1] == x ? 1 : 0;
}

void LinkCutTree::push(int x) {
    Node& nd = nodes_[x];
    if (!nd.flip) return;
    std::swap(nd.ch[0], nd.ch[1]);
    for (int c : nd.ch)
        if (c != -1) nodes_[c].flip = !nodes_[c].flip;
    nd.flip = false;
}

void LinkCutTree::pull(int x) {
    Node& nd = nodes_[x];
    nd.cnt = 1;
    nd.total = 1 + nd.vsub;
    for (int c : nd.ch) {
        if (c != -1) {
            nd.cnt += nodes_[c].cnt;
            nd.total += nodes_[c].total;
        }
    }
}

void LinkCutTree::rotate(int x) {
    int y = nodes_[x].parent;
    int z = nodes_[y].parent;
    int side = side_of(x);
    int b = nodes_[x].ch[1 - side];
    if (!is_splay_root(y)) nodes_[z].ch[side_of(y)] = x;
    nodes_[x].parent = z;
    nodes_[y].ch[side] = b;
    if (b != -1) nodes_[b].parent = y;
    nodes_[x].ch[1 - side] = y;
    nodes_[y].parent = x;
    pull(y);
    pull(x);
}

void LinkCutTree::splay(int x) {
    splay_stack_.clear();
    for (int a = x;; a = nodes_[a].parent) {
        splay_stack_.push_back(a);
        if (is_splay_root(a)) break;
    }
    for (auto it = splay_stack_.rbegin(); it != splay_stack_.rend(); ++it) push(*it);
    while (!is_splay_root(x)) {
        int y = nodes_[x].parent;
        if (!is_splay_root(y)) {
            if (side_of(x) == side_of(y))
                rotate(y);
            else
                rotate(x);
        }
        rotate(x);
    }
}

void LinkCutTree::access(int x) {
    splay(x);
    if (nodes_[x].ch[1] != -1) {
        nodes_[x].vsub += nodes_[nodes_[x].ch[1]].total;
        nodes_[x].ch[1] = -1;
        pull(x);
    }
    while (nodes_[x].parent != -1) {
        int y = nodes_[x].parent;
        splay(y);
        if (nodes_[y].ch[1] != -1) nodes_[y].vsub += nodes_[nodes_[y].ch[1]].total;
        nodes_[y].ch[1] = x;
        nodes_[y].vsub -= nodes_[x].total;
        pull(y);
        splay(x);
    }
}

void LinkCutTree::make_root(int v) {
    access(v);
    nodes_[v].flip = !nodes_[v].flip;
    push(v);
}

int LinkCutTree::find_root(int v) {
    access(v);
    int x = v;
    push(x);
    while (nodes_[x].ch[0] != -1) {
        x = nodes_[x].ch[0];
        push(x);
    }
    splay(x);
    return x;
}

bool LinkCutTree::connected(int u, int v) {
    if (u == v) return true;
    return find_root(u) == find_root(v);
}

int LinkCutTree::component_size(int v) {
    access(v);
    return nodes_[v].total;
}

void LinkCutTree::link(int u, int v) {
    make_root(u);
    nodes_[u].parent = v;
    access(v);
    nodes_[v].vsub += nodes_[u].total;
    pull(v);
}

void LinkCutTree::cut(int u, int v) {
    make_root(u);
    access(v);
    push(v);
    assert(nodes_[v].ch[0] == u && nodes_[u].ch[0] == -1 && nodes_[u].ch[1] == -1);
    nodes_[v].ch[0] = -1;
    nodes_[u].parent = -1;
    pull(v);
}

int LinkCutTree::path_length(int u, int v) {
    make_root(u);
    access(v);
    return nodes_[v].cnt;
}

int LinkCutTree::path_vertex(int u, int v, int index) {
    make_root(u);
    access(v);
    int x = v;
    for (;;) {
        push(x);
        int left = nodes_[x].ch[0] != -1 ? nodes_[nodes_[x].ch[0]].cnt : 0;
        if (index < left) {
            x = nodes_[x].ch[0];
        } else if (index == left) {
            splay(x);
            return x;
        } else {
            index -= left + 1;
            x = nodes_[x].ch[1];
        }
    }
}

std::vector<int> LinkCutTree::path_vertices(int u, int v) {
    make_root(u);
    access(v);
    std::vector<int> out;
    // iterative in-order walk of the splayed path
    std::vector<std::pair<int, bool>> stack{{v, false}};
    while (!stack.empty()) {
        auto [x, expanded] = stack.back();
        stack.pop_back();
        if (x == -1) continue;
        if (expanded) {
            out.push_back(x);
            continue;
        }
        push(x);
        stack.push_back({nodes_[x].ch[1], false});
        stack.push_back({x, true});
        stack.push_back({nodes_[x].ch[0], false});
    }
    return out;
}

} // namespace fw
