#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"
#include "linkcut.hpp"
#include "partition.hpp"

namespace fw {

enum class ForestBackend { LinkCut, Naive };

struct EdgeSplit {
    int edge;
    int below;  // size of the side not containing the query root
    int above;  // below + above = component size

    bool operator==(const EdgeSplit&) const = default;
};

// Spanning forest of a host graph; k = n - |forest edges| components.
// Mutations keep the connectivity backend in sync. The Naive backend
// answers every query by fresh traversal and serves as the randomized
// test oracle for the link-cut one.
class ForestState {
public:
    explicit ForestState(const Graph& g, ForestBackend backend = ForestBackend::LinkCut);
    static ForestState from_edges(const Graph& g, const std::vector<int>& edges,
                                  ForestBackend backend = ForestBackend::LinkCut);

    const Graph& graph() const { return *g_; }
    ForestBackend backend() const { return backend_; }
    int vertex_count() const { return g_->vertex_count(); }
    int component_count() const { return k_; }
    int forest_edge_count() const { return static_cast<int>(members_.size()); }
    // Unsorted; order reflects mutation history.
    const std::vector<int>& forest_edges() const { return members_; }
    std::vector<int> sorted_forest_edges() const;
    const std::vector<int>& non_forest_edges() const { return non_members_; }
    bool contains_edge(int e) const { return in_forest_[e]; }

    // Endpoints must lie in distinct components, else cycle error.
    void link(int e);
    // e must be a forest edge, else not-present error.
    void cut(int e);

    bool connected(int u, int v);
    int component_size_of(int v);

    // Unique forest path between connected vertices, as edge indices
    // ordered from u to v. Throws not-connected across components.
    std::vector<int> tree_path(int u, int v);
    // Vertex count of the path (1 when u == v).
    int tree_path_length(int u, int v);
    // Edge at position i on the path, i in [0, length-1).
    int tree_path_edge(int u, int v, int i);

    // Side sizes upon removal of each tree edge in root's component.
    std::vector<EdgeSplit> subtree_split_sizes(int root);

    std::vector<int> component_vertices(int v) const;
    // Component ids ordered by minimum vertex id.
    std::vector<int> component_assignment() const;
    PartitionView partition() const;

    // From-scratch recomputation check; false when the incremental
    // bookkeeping ever disagrees with a traversal.
    bool check_consistent();

    bool operator==(const ForestState& other) const;

private:
    const Graph* g_;
    ForestBackend backend_;
    int k_;
    std::vector<char> in_forest_;
    std::vector<int> members_;       // forest edges
    std::vector<int> non_members_;   // complement
    std::vector<int> pos_;           // edge -> index within its pool
    std::vector<std::vector<Graph::Incidence>> adj_;  // forest adjacency
    std::optional<LinkCutTree> lct_;

    void pool_move(int e, std::vector<int>& from, std::vector<int>& to);
    std::vector<int> naive_path_vertices(int u, int v) const;
};

// "hash e1 e2 ..." with the host graph's structural hash in hex and the
// forest edges sorted ascending.
std::string serialize_forest(const ForestState& s);
ForestState deserialize_forest(const Graph& g, const std::string& line,
                               ForestBackend backend = ForestBackend::LinkCut);

} // namespace fw
