#include "twlab/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "twlab/errors.hpp"

namespace twlab {

namespace {

void check_vertex_count(int n)
{
    if (n < 0) {
        throw InvalidArgument("vertex count must be non-negative, got " + std::to_string(n));
    }
}

void check_endpoint(Vertex v, int n)
{
    if (v < 0 || v >= n) {
        throw InvalidArgument("vertex " + std::to_string(v) + " out of range for n=" + std::to_string(n));
    }
}

template <typename Pair>
void sort_unique(std::vector<Pair>& items)
{
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
}

} // namespace

Graph::Graph(int n) : n_(n)
{
    check_vertex_count(n);
    adj_.resize(static_cast<std::size_t>(n));
}

Graph::Graph(int n, std::vector<Edge> edges) : Graph(n)
{
    for (auto& [u, v] : edges) {
        check_endpoint(u, n);
        check_endpoint(v, n);
        if (u == v) {
            throw InvalidArgument("self-loop at vertex " + std::to_string(u));
        }
        if (u > v) {
            std::swap(u, v);
        }
    }
    sort_unique(edges);
    edges_ = std::move(edges);
    for (const auto& [u, v] : edges_) {
        adj_[static_cast<std::size_t>(u)].push_back(v);
        adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& list : adj_) {
        std::sort(list.begin(), list.end());
    }
}

bool Graph::has_edge(Vertex u, Vertex v) const
{
    if (u < 0 || v < 0 || u >= n_ || v >= n_) {
        return false;
    }
    const auto& list = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(list.begin(), list.end(), v);
}

DiGraph::DiGraph(int n) : n_(n)
{
    check_vertex_count(n);
    parents_.resize(static_cast<std::size_t>(n));
    children_.resize(static_cast<std::size_t>(n));
}

DiGraph::DiGraph(int n, std::vector<Arc> arcs) : DiGraph(n)
{
    for (const auto& [p, c] : arcs) {
        check_endpoint(p, n);
        check_endpoint(c, n);
        if (p == c) {
            throw InvalidArgument("self-loop at vertex " + std::to_string(p));
        }
    }
    sort_unique(arcs);
    arcs_ = std::move(arcs);
    for (const auto& [p, c] : arcs_) {
        parents_[static_cast<std::size_t>(c)].push_back(p);
        children_[static_cast<std::size_t>(p)].push_back(c);
    }
    for (auto& list : parents_) {
        std::sort(list.begin(), list.end());
    }
}

bool DiGraph::has_arc(Vertex parent, Vertex child) const
{
    if (child < 0 || child >= n_) {
        return false;
    }
    const auto& list = parents_[static_cast<std::size_t>(child)];
    return std::binary_search(list.begin(), list.end(), parent);
}

std::vector<Vertex> DiGraph::topological_order() const
{
    std::vector<int> indegree(static_cast<std::size_t>(n_));
    for (Vertex v = 0; v < n_; ++v) {
        indegree[static_cast<std::size_t>(v)] = static_cast<int>(parents(v).size());
    }
    std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
    for (Vertex v = 0; v < n_; ++v) {
        if (indegree[static_cast<std::size_t>(v)] == 0) {
            ready.push(v);
        }
    }
    std::vector<Vertex> order;
    order.reserve(static_cast<std::size_t>(n_));
    while (!ready.empty()) {
        const Vertex v = ready.top();
        ready.pop();
        order.push_back(v);
        for (Vertex c : children(v)) {
            if (--indegree[static_cast<std::size_t>(c)] == 0) {
                ready.push(c);
            }
        }
    }
    if (static_cast<int>(order.size()) != n_) {
        order.clear();
    }
    return order;
}

bool DiGraph::is_acyclic() const
{
    return n_ == 0 || !topological_order().empty();
}

Hypergraph::Hypergraph(int n, std::vector<std::vector<Vertex>> hyperedges) : n_(n)
{
    check_vertex_count(n);
    for (auto& e : hyperedges) {
        for (Vertex v : e) {
            check_endpoint(v, n);
        }
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
        if (e.size() < 2) {
            throw InvalidArgument("hyperedge must contain at least two distinct vertices");
        }
    }
    std::sort(hyperedges.begin(), hyperedges.end());
    if (std::adjacent_find(hyperedges.begin(), hyperedges.end()) != hyperedges.end()) {
        throw InvalidArgument("duplicate hyperedge");
    }
    hyperedges_ = std::move(hyperedges);
}

int Hypergraph::uniform_rank() const noexcept
{
    if (hyperedges_.empty()) {
        return 0;
    }
    const auto rank = hyperedges_.front().size();
    for (const auto& e : hyperedges_) {
        if (e.size() != rank) {
            return 0;
        }
    }
    return static_cast<int>(rank);
}

Graph clique_expand(const Hypergraph& h)
{
    std::vector<Edge> edges;
    for (const auto& e : h.hyperedges()) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            for (std::size_t j = i + 1; j < e.size(); ++j) {
                edges.emplace_back(e[i], e[j]);
            }
        }
    }
    return Graph(h.vertex_count(), std::move(edges));
}

Graph moralize(const DiGraph& g)
{
    std::vector<Edge> edges;
    for (const auto& [p, c] : g.arcs()) {
        edges.emplace_back(p, c);
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const auto parents = g.parents(v);
        for (std::size_t i = 0; i < parents.size(); ++i) {
            for (std::size_t j = i + 1; j < parents.size(); ++j) {
                edges.emplace_back(parents[i], parents[j]);
            }
        }
    }
    return Graph(g.vertex_count(), std::move(edges));
}

Graph skeleton(const DiGraph& g)
{
    std::vector<Edge> edges(g.arcs().begin(), g.arcs().end());
    return Graph(g.vertex_count(), std::move(edges));
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep)
{
    const int n = g.vertex_count();
    std::vector<Vertex> original(keep.begin(), keep.end());
    for (Vertex v : original) {
        check_endpoint(v, n);
    }
    std::sort(original.begin(), original.end());
    original.erase(std::unique(original.begin(), original.end()), original.end());

    std::vector<int> relabel(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < original.size(); ++i) {
        relabel[static_cast<std::size_t>(original[i])] = static_cast<int>(i);
    }
    std::vector<Edge> edges;
    for (const auto& [u, v] : g.edges()) {
        const int a = relabel[static_cast<std::size_t>(u)];
        const int b = relabel[static_cast<std::size_t>(v)];
        if (a >= 0 && b >= 0) {
            edges.emplace_back(a, b);
        }
    }
    const auto size = static_cast<int>(original.size());
    return {Graph(size, std::move(edges)), std::move(original)};
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g)
{
    const int n = g.vertex_count();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<Vertex>> components;
    std::vector<Vertex> stack;
    for (Vertex root = 0; root < n; ++root) {
        if (seen[static_cast<std::size_t>(root)]) {
            continue;
        }
        std::vector<Vertex> component;
        seen[static_cast<std::size_t>(root)] = 1;
        stack.push_back(root);
        while (!stack.empty()) {
            const Vertex v = stack.back();
            stack.pop_back();
            component.push_back(v);
            for (Vertex w : g.neighbors(v)) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                }
            }
        }
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
    }
    return components;
}

Graph complete_graph(int n)
{
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            edges.emplace_back(u, v);
        }
    }
    return Graph(n, std::move(edges));
}

} // namespace twlab
