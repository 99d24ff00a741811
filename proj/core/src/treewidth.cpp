#include "twlab/treewidth.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>
#include <string>

#include "twlab/errors.hpp"

namespace twlab {

namespace {

// Mutable adjacency used while simulating eliminations.
class EliminationGraph {
public:
    explicit EliminationGraph(const Graph& g)
        : n_(g.vertex_count()),
          matrix_(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0),
          neighbors_(static_cast<std::size_t>(n_)),
          alive_(static_cast<std::size_t>(n_), 1)
    {
        for (const auto& [u, v] : g.edges()) {
            connect(u, v);
        }
    }

    bool adjacent(Vertex u, Vertex v) const
    {
        return matrix_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v)] != 0;
    }

    const std::vector<Vertex>& neighbors(Vertex v) const { return neighbors_[static_cast<std::size_t>(v)]; }

    int fill_in(Vertex v) const
    {
        const auto& nb = neighbors(v);
        int missing = 0;
        for (std::size_t i = 0; i < nb.size(); ++i) {
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                if (!adjacent(nb[i], nb[j])) {
                    ++missing;
                }
            }
        }
        return missing;
    }

    // Makes the neighborhood of v a clique, then removes v.
    void eliminate(Vertex v)
    {
        const auto nb = neighbors(v);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                if (!adjacent(nb[i], nb[j])) {
                    connect(nb[i], nb[j]);
                }
            }
        }
        for (Vertex u : nb) {
            auto& list = neighbors_[static_cast<std::size_t>(u)];
            list.erase(std::find(list.begin(), list.end(), v));
            set(u, v, 0);
        }
        neighbors_[static_cast<std::size_t>(v)].clear();
        alive_[static_cast<std::size_t>(v)] = 0;
    }

private:
    void set(Vertex u, Vertex v, char value)
    {
        matrix_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v)] = value;
        matrix_[static_cast<std::size_t>(v) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(u)] = value;
    }

    void connect(Vertex u, Vertex v)
    {
        set(u, v, 1);
        neighbors_[static_cast<std::size_t>(u)].push_back(v);
        neighbors_[static_cast<std::size_t>(v)].push_back(u);
    }

    int n_;
    std::vector<char> matrix_;
    std::vector<std::vector<Vertex>> neighbors_;
    std::vector<char> alive_;
};

void require_permutation(const Graph& g, std::span<const Vertex> order)
{
    const int n = g.vertex_count();
    if (order.size() != static_cast<std::size_t>(n)) {
        throw InvalidArgument("elimination order has " + std::to_string(order.size()) + " entries for " +
                              std::to_string(n) + " vertices");
    }
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (Vertex v : order) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
            throw InvalidArgument("elimination order is not a permutation of the vertices");
        }
        seen[static_cast<std::size_t>(v)] = 1;
    }
}

// For each vertex, its not-yet-eliminated neighbors (fill-in included) at the
// moment it is eliminated, sorted.
std::vector<std::vector<Vertex>> later_neighbors(const Graph& g, std::span<const Vertex> order)
{
    require_permutation(g, order);
    EliminationGraph work(g);
    std::vector<std::vector<Vertex>> later(static_cast<std::size_t>(g.vertex_count()));
    for (Vertex v : order) {
        auto nb = work.neighbors(v);
        std::sort(nb.begin(), nb.end());
        later[static_cast<std::size_t>(v)] = std::move(nb);
        work.eliminate(v);
    }
    return later;
}

double elapsed_ms(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

int TreeDecomposition::width() const noexcept
{
    std::size_t largest = 0;
    for (const auto& bag : bags) {
        largest = std::max(largest, bag.size());
    }
    return largest == 0 ? 0 : static_cast<int>(largest) - 1;
}

EliminationOrder greedy_order(const Graph& g, Heuristic heuristic)
{
    const int n = g.vertex_count();
    EliminationGraph work(g);
    auto score = [&](Vertex v) {
        return heuristic == Heuristic::min_fill ? work.fill_in(v) : static_cast<int>(work.neighbors(v).size());
    };

    std::vector<int> current(static_cast<std::size_t>(n));
    std::set<std::pair<int, Vertex>> queue;
    for (Vertex v = 0; v < n; ++v) {
        current[static_cast<std::size_t>(v)] = score(v);
        queue.emplace(current[static_cast<std::size_t>(v)], v);
    }
    std::vector<char> dirty(static_cast<std::size_t>(n), 0);
    std::vector<char> eliminated(static_cast<std::size_t>(n), 0);
    EliminationOrder order;
    order.reserve(static_cast<std::size_t>(n));
    while (!queue.empty()) {
        const Vertex v = queue.begin()->second;
        queue.erase(queue.begin());
        order.push_back(v);
        eliminated[static_cast<std::size_t>(v)] = 1;

        const auto nb = work.neighbors(v);
        work.eliminate(v);

        // Degrees change only for neighbors; fill-in can also change for
        // vertices adjacent to a neighbor.
        std::vector<Vertex> touched;
        for (Vertex u : nb) {
            if (!dirty[static_cast<std::size_t>(u)]) {
                dirty[static_cast<std::size_t>(u)] = 1;
                touched.push_back(u);
            }
            if (heuristic == Heuristic::min_fill) {
                for (Vertex w : work.neighbors(u)) {
                    if (!dirty[static_cast<std::size_t>(w)]) {
                        dirty[static_cast<std::size_t>(w)] = 1;
                        touched.push_back(w);
                    }
                }
            }
        }
        for (Vertex u : touched) {
            dirty[static_cast<std::size_t>(u)] = 0;
            if (eliminated[static_cast<std::size_t>(u)]) {
                continue;
            }
            const int fresh = score(u);
            if (fresh != current[static_cast<std::size_t>(u)]) {
                queue.erase({current[static_cast<std::size_t>(u)], u});
                current[static_cast<std::size_t>(u)] = fresh;
                queue.emplace(fresh, u);
            }
        }
    }
    return order;
}

int width_of_order(const Graph& g, std::span<const Vertex> order)
{
    int width = 0;
    for (const auto& later : later_neighbors(g, order)) {
        width = std::max(width, static_cast<int>(later.size()));
    }
    return width;
}

TreeDecomposition decomposition_from_order(const Graph& g, std::span<const Vertex> order)
{
    const int n = g.vertex_count();
    const auto later = later_neighbors(g, order);
    if (n == 0) {
        return {};
    }
    std::vector<int> position(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        position[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    }

    // Node i of the working tree is the bag of order[i].
    std::vector<std::vector<Vertex>> bags(static_cast<std::size_t>(n));
    std::vector<std::set<int>> tree(static_cast<std::size_t>(n));
    auto link = [&](int a, int b) {
        tree[static_cast<std::size_t>(a)].insert(b);
        tree[static_cast<std::size_t>(b)].insert(a);
    };
    const int last = n - 1;
    for (int i = 0; i < n; ++i) {
        const Vertex v = order[static_cast<std::size_t>(i)];
        const auto& nb = later[static_cast<std::size_t>(v)];
        auto& bag = bags[static_cast<std::size_t>(i)];
        bag = nb;
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        if (!nb.empty()) {
            int parent = n;
            for (Vertex u : nb) {
                parent = std::min(parent, position[static_cast<std::size_t>(u)]);
            }
            link(i, parent);
        } else if (i != last) {
            // Root of a component: any link keeps the conditions, since the
            // bags on either side share no vertex.
            link(i, last);
        }
    }

    std::vector<char> alive(static_cast<std::size_t>(n), 1);
    auto contained = [&](int a, int b) {
        const auto& x = bags[static_cast<std::size_t>(a)];
        const auto& y = bags[static_cast<std::size_t>(b)];
        return std::includes(y.begin(), y.end(), x.begin(), x.end());
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (int a = 0; a < n; ++a) {
            if (!alive[static_cast<std::size_t>(a)]) {
                continue;
            }
            for (int b : tree[static_cast<std::size_t>(a)]) {
                if (!contained(a, b)) {
                    continue;
                }
                // Merge a into b: a's other neighbors move to b.
                for (int c : tree[static_cast<std::size_t>(a)]) {
                    tree[static_cast<std::size_t>(c)].erase(a);
                    if (c != b) {
                        link(c, b);
                    }
                }
                tree[static_cast<std::size_t>(a)].clear();
                alive[static_cast<std::size_t>(a)] = 0;
                changed = true;
                break;
            }
        }
    }

    std::vector<int> index(static_cast<std::size_t>(n), -1);
    TreeDecomposition td;
    for (int i = 0; i < n; ++i) {
        if (alive[static_cast<std::size_t>(i)]) {
            index[static_cast<std::size_t>(i)] = static_cast<int>(td.bags.size());
            td.bags.push_back(std::move(bags[static_cast<std::size_t>(i)]));
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j : tree[static_cast<std::size_t>(i)]) {
            if (i < j) {
                td.tree_edges.emplace_back(index[static_cast<std::size_t>(i)], index[static_cast<std::size_t>(j)]);
            }
        }
    }
    for (auto& e : td.tree_edges) {
        if (e.first > e.second) {
            std::swap(e.first, e.second);
        }
    }
    std::sort(td.tree_edges.begin(), td.tree_edges.end());
    return td;
}

const char* to_string(ViolationKind kind) noexcept
{
    switch (kind) {
    case ViolationKind::bag_vertex_out_of_range: return "bag_vertex_out_of_range";
    case ViolationKind::vertex_uncovered: return "vertex_uncovered";
    case ViolationKind::edge_uncovered: return "edge_uncovered";
    case ViolationKind::vertex_bags_disconnected: return "vertex_bags_disconnected";
    case ViolationKind::tree_edge_invalid: return "tree_edge_invalid";
    case ViolationKind::not_a_tree: return "not_a_tree";
    }
    return "unknown";
}

ValidationReport validate_decomposition(const Graph& g, const TreeDecomposition& td)
{
    const int n = g.vertex_count();
    const auto bag_count = static_cast<int>(td.bags.size());
    ValidationReport report;
    report.width = td.width();
    auto& out = report.violations;

    // Tree-ness of the bag tree.
    std::vector<std::vector<int>> tree(static_cast<std::size_t>(bag_count));
    std::set<std::pair<int, int>> seen_edges;
    for (auto [a, b] : td.tree_edges) {
        if (a < 0 || b < 0 || a >= bag_count || b >= bag_count || a == b) {
            out.push_back({ViolationKind::tree_edge_invalid, -1, {a, b},
                           "tree edge (" + std::to_string(a) + "," + std::to_string(b) + ") is not between two distinct bags"});
            continue;
        }
        if (!seen_edges.insert(std::minmax(a, b)).second) {
            out.push_back({ViolationKind::tree_edge_invalid, -1, {a, b},
                           "duplicate tree edge (" + std::to_string(a) + "," + std::to_string(b) + ")"});
            continue;
        }
        tree[static_cast<std::size_t>(a)].push_back(b);
        tree[static_cast<std::size_t>(b)].push_back(a);
    }
    if (bag_count > 0) {
        std::vector<char> reached(static_cast<std::size_t>(bag_count), 0);
        std::vector<int> stack{0};
        reached[0] = 1;
        int count = 0;
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            ++count;
            for (int y : tree[static_cast<std::size_t>(x)]) {
                if (!reached[static_cast<std::size_t>(y)]) {
                    reached[static_cast<std::size_t>(y)] = 1;
                    stack.push_back(y);
                }
            }
        }
        if (count != bag_count || seen_edges.size() != static_cast<std::size_t>(bag_count - 1)) {
            out.push_back({ViolationKind::not_a_tree, -1, {-1, -1},
                           "bag graph with " + std::to_string(bag_count) + " bags and " +
                               std::to_string(seen_edges.size()) + " edges is not a tree"});
        }
    }

    // Which bags hold each vertex.
    std::vector<std::vector<int>> holders(static_cast<std::size_t>(n));
    for (int i = 0; i < bag_count; ++i) {
        for (Vertex v : td.bags[static_cast<std::size_t>(i)]) {
            if (v < 0 || v >= n) {
                out.push_back({ViolationKind::bag_vertex_out_of_range, v, {-1, -1},
                               "bag " + std::to_string(i) + " holds vertex " + std::to_string(v) + " outside the graph"});
                continue;
            }
            holders[static_cast<std::size_t>(v)].push_back(i);
        }
    }
    for (Vertex v = 0; v < n; ++v) {
        if (holders[static_cast<std::size_t>(v)].empty()) {
            out.push_back({ViolationKind::vertex_uncovered, v, {-1, -1},
                           "vertex " + std::to_string(v) + " is in no bag"});
        }
    }
    for (const auto& [u, v] : g.edges()) {
        const auto& hu = holders[static_cast<std::size_t>(u)];
        const auto& hv = holders[static_cast<std::size_t>(v)];
        std::vector<int> common;
        std::set_intersection(hu.begin(), hu.end(), hv.begin(), hv.end(), std::back_inserter(common));
        if (common.empty()) {
            out.push_back({ViolationKind::edge_uncovered, -1, {u, v},
                           "edge {" + std::to_string(u) + "," + std::to_string(v) + "} is in no bag"});
        }
    }

    // Subtree condition: bags holding v must be connected within the tree.
    std::vector<char> holds(static_cast<std::size_t>(bag_count), 0);
    std::vector<char> reached(static_cast<std::size_t>(bag_count), 0);
    for (Vertex v = 0; v < n; ++v) {
        const auto& hv = holders[static_cast<std::size_t>(v)];
        if (hv.size() < 2) {
            continue;
        }
        for (int i : hv) {
            holds[static_cast<std::size_t>(i)] = 1;
        }
        std::vector<int> stack{hv.front()};
        reached[static_cast<std::size_t>(hv.front())] = 1;
        std::size_t count = 0;
        std::vector<int> visited;
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            visited.push_back(x);
            ++count;
            for (int y : tree[static_cast<std::size_t>(x)]) {
                if (holds[static_cast<std::size_t>(y)] && !reached[static_cast<std::size_t>(y)]) {
                    reached[static_cast<std::size_t>(y)] = 1;
                    stack.push_back(y);
                }
            }
        }
        if (count != hv.size()) {
            out.push_back({ViolationKind::vertex_bags_disconnected, v, {-1, -1},
                           "bags holding vertex " + std::to_string(v) + " do not form a connected subtree"});
        }
        for (int i : hv) {
            holds[static_cast<std::size_t>(i)] = 0;
        }
        for (int x : visited) {
            reached[static_cast<std::size_t>(x)] = 0;
        }
    }
    return report;
}

int lower_bound_mmd(const Graph& g)
{
    const int n = g.vertex_count();
    std::vector<int> degree(static_cast<std::size_t>(n));
    std::set<std::pair<int, Vertex>> queue;
    for (Vertex v = 0; v < n; ++v) {
        degree[static_cast<std::size_t>(v)] = g.degree(v);
        queue.emplace(g.degree(v), v);
    }
    std::vector<char> removed(static_cast<std::size_t>(n), 0);
    int best = 0;
    while (!queue.empty()) {
        const auto [d, v] = *queue.begin();
        queue.erase(queue.begin());
        best = std::max(best, d);
        removed[static_cast<std::size_t>(v)] = 1;
        for (Vertex u : g.neighbors(v)) {
            if (removed[static_cast<std::size_t>(u)]) {
                continue;
            }
            auto& du = degree[static_cast<std::size_t>(u)];
            queue.erase({du, u});
            --du;
            queue.emplace(du, u);
        }
    }
    return best;
}

bool is_ktree(const Graph& g, int k)
{
    const int n = g.vertex_count();
    if (k < 0 || n < k + 1) {
        return false;
    }
    const auto expected_edges = static_cast<std::size_t>(k) * static_cast<std::size_t>(k + 1) / 2 +
                                static_cast<std::size_t>(n - k - 1) * static_cast<std::size_t>(k);
    if (g.edge_count() != expected_edges) {
        return false;
    }
    std::vector<std::set<Vertex>> adj(static_cast<std::size_t>(n));
    for (const auto& [u, v] : g.edges()) {
        adj[static_cast<std::size_t>(u)].insert(v);
        adj[static_cast<std::size_t>(v)].insert(u);
    }
    auto removable = [&](Vertex v) {
        const auto& nb = adj[static_cast<std::size_t>(v)];
        if (static_cast<int>(nb.size()) != k) {
            return false;
        }
        for (auto a = nb.begin(); a != nb.end(); ++a) {
            for (auto b = std::next(a); b != nb.end(); ++b) {
                if (!adj[static_cast<std::size_t>(*a)].contains(*b)) {
                    return false;
                }
            }
        }
        return true;
    };

    std::vector<char> gone(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> stack;
    for (Vertex v = n - 1; v >= 0; --v) {
        stack.push_back(v);
    }
    int remaining = n;
    while (remaining > k + 1 && !stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        if (gone[static_cast<std::size_t>(v)] || !removable(v)) {
            continue;
        }
        gone[static_cast<std::size_t>(v)] = 1;
        --remaining;
        for (Vertex u : adj[static_cast<std::size_t>(v)]) {
            adj[static_cast<std::size_t>(u)].erase(v);
            stack.push_back(u);
        }
        adj[static_cast<std::size_t>(v)].clear();
    }
    if (remaining != k + 1) {
        return false;
    }
    for (Vertex v = 0; v < n; ++v) {
        if (!gone[static_cast<std::size_t>(v)] && static_cast<int>(adj[static_cast<std::size_t>(v)].size()) != k) {
            return false;
        }
    }
    return true;
}

BoundsReport treewidth_bounds(const Graph& g, bool want_exact, int max_vertices)
{
    BoundsReport report;
    auto start = std::chrono::steady_clock::now();
    report.lower = lower_bound_mmd(g);
    report.lower_ms = elapsed_ms(start);

    start = std::chrono::steady_clock::now();
    report.upper = width_of_order(g, greedy_order(g, Heuristic::min_fill));
    report.upper_method = "min_fill";
    report.upper_ms = elapsed_ms(start);

    if (want_exact && g.vertex_count() <= max_vertices) {
        start = std::chrono::steady_clock::now();
        report.exact = exact_treewidth(g, max_vertices);
        report.exact_ms = elapsed_ms(start);
    }
    return report;
}

} // namespace twlab
