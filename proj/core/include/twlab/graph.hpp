#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace twlab {

// Vertices are dense ids 0..n-1. External labels, when any, live beside the graph.
using Vertex = int;

// Normalized undirected edge: first < second.
using Edge = std::pair<Vertex, Vertex>;

// Directed arc (parent, child).
using Arc = std::pair<Vertex, Vertex>;

/// Simple undirected graph, immutable after construction.
///
/// Edges are stored normalized (u < v) and sorted; neighbor lists are sorted.
/// Duplicate edges passed to the constructor collapse to one; self-loops and
/// out-of-range endpoints are rejected with InvalidArgument.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);
    Graph(int n, std::vector<Edge> edges);

    int vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::span<const Edge> edges() const noexcept { return edges_; }
    std::span<const Vertex> neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
    bool has_edge(Vertex u, Vertex v) const;

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adj_;
};

/// Directed graph, immutable after construction. Self-loops are rejected;
/// directed cycles and mutual arcs (u->v and v->u) are allowed. Duplicate
/// arcs collapse.
class DiGraph {
public:
    DiGraph() = default;
    explicit DiGraph(int n);
    DiGraph(int n, std::vector<Arc> arcs);

    int vertex_count() const noexcept { return n_; }
    std::size_t arc_count() const noexcept { return arcs_.size(); }
    std::span<const Arc> arcs() const noexcept { return arcs_; }
    std::span<const Vertex> parents(Vertex v) const { return parents_[static_cast<std::size_t>(v)]; }
    std::span<const Vertex> children(Vertex v) const { return children_[static_cast<std::size_t>(v)]; }
    bool has_arc(Vertex parent, Vertex child) const;

    bool is_acyclic() const;
    // Kahn's algorithm, smallest ready vertex first. Empty when cyclic (and n > 0).
    std::vector<Vertex> topological_order() const;

    friend bool operator==(const DiGraph& a, const DiGraph& b) { return a.n_ == b.n_ && a.arcs_ == b.arcs_; }

private:
    int n_ = 0;
    std::vector<Arc> arcs_;
    std::vector<std::vector<Vertex>> parents_;
    std::vector<std::vector<Vertex>> children_;
};

/// Hypergraph with distinct hyperedges. Each hyperedge is stored sorted and the
/// hyperedge list is sorted lexicographically. Hyperedges must contain at
/// least two distinct vertices.
class Hypergraph {
public:
    Hypergraph() = default;
    explicit Hypergraph(int n) : n_(n) {}
    Hypergraph(int n, std::vector<std::vector<Vertex>> hyperedges);

    int vertex_count() const noexcept { return n_; }
    std::size_t hyperedge_count() const noexcept { return hyperedges_.size(); }
    std::span<const std::vector<Vertex>> hyperedges() const noexcept { return hyperedges_; }

    // Common hyperedge size, or 0 when empty or mixed.
    int uniform_rank() const noexcept;

    friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

private:
    int n_ = 0;
    std::vector<std::vector<Vertex>> hyperedges_;
};

// Edge {u,v} iff some hyperedge contains both.
Graph clique_expand(const Hypergraph& h);

// Marry co-parents of every node, then drop directions. Mutual arcs collapse.
Graph moralize(const DiGraph& g);

struct InducedSubgraph {
    Graph graph;
    // original_id[new_id]; new ids follow increasing original id.
    std::vector<Vertex> original_id;
};

// Restriction to the vertex set `keep` (duplicates ignored). Throws
// InvalidArgument for out-of-range ids.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep);

// Maximal connected vertex sets, each sorted, ordered by smallest member.
std::vector<std::vector<Vertex>> connected_components(const Graph& g);

// Undirected skeleton of a directed graph (arcs without direction, no marrying).
Graph skeleton(const DiGraph& g);

Graph complete_graph(int n);

} // namespace twlab
