#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fw {

enum class EdgeClass : uint8_t { None = 0, LeftCycle, Rung, RightCycle };

// Position label on a cycle-class edge. Only LeftCycle/RightCycle edges
// carry a position; Rung and None never do.
struct EdgeTag {
    EdgeClass cls = EdgeClass::None;
    int position = -1;

    bool operator==(const EdgeTag&) const = default;
};

struct Edge {
    int u = -1;
    int v = -1;

    bool operator==(const Edge&) const = default;
};

// Immutable undirected simple graph. Vertices are 0..n-1; edges keep the
// index they were constructed with, so chains can cite edges by index.
// Safe to share across threads once built.
class Graph {
public:
    struct Incidence {
        int edge;      // edge index
        int neighbor;  // other endpoint
    };

    Graph(int n, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(int e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Incidence>& incident(int v) const { return adjacency_[v]; }
    int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }

    // Edge index between u and v, or -1. Linear in deg(u).
    int edge_between(int u, int v) const;

    bool has_coords() const { return !coords_.empty(); }
    const std::vector<std::array<double, 2>>& coords() const { return coords_; }
    void set_coords(std::vector<std::array<double, 2>> coords);

    bool has_tags() const { return !tags_.empty(); }
    const std::vector<EdgeTag>& tags() const { return tags_; }
    const EdgeTag& tag(int e) const { return tags_[e]; }
    void set_tags(std::vector<EdgeTag> tags);

    bool connected() const;
    // Order-independent structural hash (n, edge endpoints); used to bind
    // serialized forests to their host graph.
    uint64_t structural_hash() const;

private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Incidence>> adjacency_;
    std::vector<std::array<double, 2>> coords_;
    std::vector<EdgeTag> tags_;
};

// ---- Generators ----------------------------------------------------------

Graph path(int n);
Graph cycle(int n);
// m rows by n columns, lattice coords attached.
Graph grid(int m, int n);
// Two length-len cycles joined by rungs; cycle edges carry position labels
// (edge into vertex j has label j), rung i joins l_i to r_i.
Graph double_cycle(int len);
// Boundary ring of the m x n grid (the grid with its interior removed).
// Ring edges are tagged with position labels that repeat across the four
// corners; see the .cpp for the labeling table.
Graph grid_with_hole(int m, int n);
Graph cartesian_product(const Graph& g, const Graph& h);

struct InducedSubgraph {
    Graph graph;
    std::vector<int> to_original;  // new id -> original id
};
InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& subset);

// True when the subgraph induced by `subset` is connected (empty counts as
// connected). Vertices must be distinct and in range.
bool connected_subset(const Graph& g, const std::vector<int>& subset);

// ---- Edge-list text format -----------------------------------------------
// Header "n m", then one line per edge in index order: "u v" or
// "u v <L|R|E> [position]" when tagged (L/R carry positions, E is a rung).

void write_edge_list(const Graph& g, std::ostream& out);
Graph read_edge_list(std::istream& in);
void write_edge_list_file(const Graph& g, const std::string& path);
Graph read_edge_list_file(const std::string& path);

} // namespace fw
